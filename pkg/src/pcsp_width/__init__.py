"""Local-consistency width experiments for promise CSPs with aperiodic templates."""

__version__ = "0.1.0"
