import sys

from pplsolve.main import start_cli

if __name__ == "__main__":
    start_cli()
    sys.exit(0)
