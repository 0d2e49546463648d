"""Parts of partitions in arithmetic progressions: exact counts, the modular
transformation of the generating Lambert series, and circle-method asymptotics."""

__version__ = "0.1.0"
