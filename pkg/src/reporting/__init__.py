"""
@file __init__.py
@brief Reporting module initialization

Contains terminal output formatting, CSV emission of curves and ring shapes,
and SVG rendering of force curves.
"""
