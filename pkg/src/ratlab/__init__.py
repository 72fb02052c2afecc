"""ratlab: exact verification of classical rationality computations."""

__version__ = "0.1.0"
