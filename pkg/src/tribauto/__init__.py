"""Decision procedure and enumeration engine for Tribonacci-automatic words."""
__version__ = "0.1.0"
