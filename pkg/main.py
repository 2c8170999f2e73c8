import asyncio
import multiprocessing
import sys

from src.interfaces.cli import main

if __name__ == "__main__":
    # Required for worker processes on Windows and macOS spawn
    multiprocessing.freeze_support()
    sys.exit(asyncio.run(main()))
