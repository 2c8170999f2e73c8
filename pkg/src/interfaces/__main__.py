"""
File: __main__.py
Description: Runs the ringdiag harness as `python -m src.interfaces`
Author: RingDiag Team
Created: 2025-06-12
"""

from src.interfaces.cli import run

if __name__ == "__main__":
    run()
