"""
@file __init__.py
@brief Validation module initialization

Contains the discretised elastic-ring oracle used to check that the
analytical boundary force is a lower bound.
"""
