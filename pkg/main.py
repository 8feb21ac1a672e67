"""
Main entry point for the dcoset command-line toolkit.
"""

import sys

from cli.app import main

if __name__ == "__main__":
    sys.exit(main())
