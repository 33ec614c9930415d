"""Min-entropy of odd-length periodic XXZ chains."""

__version__ = "0.1.0"
