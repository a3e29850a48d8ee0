"""
@file __init__.py
@brief Kirigami design-analysis package initialization

@details
This package contains all modules of the kirigami actuation engine,
organized by functional areas:
- core: Main orchestration, CLI entry point, constants and errors
- mechanics: Sheet description and analytical force model
- validation: Elastic-ring oracle for the lower-bound check
- acquisition: Configuration and measurement ingestion
- reporting: Console output, CSV and SVG generation
"""
