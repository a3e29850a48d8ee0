"""
@file __init__.py
@brief Core module initialization

Contains the command-line orchestrator, shared constants and error types.
"""
