"""eigshift - Block shift-inverse eigensolver with Richardson inner steps and rate analysis."""

__version__ = "0.1.0"
