"""
@file __init__.py
@brief Mechanics module initialization

Contains the sheet description types and the analytical force model:
boundary ribbon, discrete ribbons, mesh ribbons and their assembly.
"""
