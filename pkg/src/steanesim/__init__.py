"""Pauli-frame Monte Carlo simulator for the self-concatenated Steane code.

Crash-rate, threshold and overhead experiments for two ancilla preparation
schemes on the [[49,1,9]] code: Steane's verified preparation and the
reject-on-detect preparation, plus an idealized-ancilla comparison.
"""

__version__ = "1.0.0"
