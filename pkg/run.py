#!/usr/bin/env python3
"""
Entry point script for the gedgm command line
"""
import sys

from gedgm.main import main

if __name__ == "__main__":
    sys.exit(main())
