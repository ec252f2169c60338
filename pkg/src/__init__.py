"""Fixed-subcode gluing engine for binary self-dual codes"""

__version__ = "1.0.0"
