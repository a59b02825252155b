from __future__ import annotations

import sys

from src.app import main


def run() -> int:
    try:
        return main(sys.argv[1:])
    except KeyboardInterrupt:
        print("interrupted", file=sys.stderr)
        return 130


if __name__ == "__main__":
    raise SystemExit(run())
