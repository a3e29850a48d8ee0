#!/usr/bin/env python3
"""
@file main.py
@brief Kirigami design-analysis engine - Main entry point

This is the main entry point of the command-line tool.
It imports and runs the core application logic from src/core/main.py.

@author Kirigami-Actuation team
@date 2026-10-17
@version 1.0
"""

import sys
from src.core.main import main

if __name__ == "__main__":
    sys.exit(main())
