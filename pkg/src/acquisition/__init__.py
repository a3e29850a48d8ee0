"""
@file __init__.py
@brief Acquisition module initialization

Contains the input side of the engine: the INI configuration loader for
materials and sheets, and the reader for measured force tables.
"""
