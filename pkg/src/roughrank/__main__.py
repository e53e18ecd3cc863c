"""``python -m roughrank`` delegates to the console entry point."""

from .cli import entrypoint

if __name__ == "__main__":
    entrypoint()
