"""Allow `python -m heegaard` as an alias for the `heegaard` console script."""

from .cli import main

if __name__ == "__main__":
    main()
