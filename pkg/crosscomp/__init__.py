"""crosscomp: executable cross-composition constructions and exact oracles."""
__version__ = "0.1.0"
