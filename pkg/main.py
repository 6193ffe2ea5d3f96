# main.py

import sys

from cli.runner import run


def start_system() -> int:
    return run(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(start_system())
