import sys

from circle_uncertainty.main import run

if __name__ == "__main__":
    sys.exit(run())
