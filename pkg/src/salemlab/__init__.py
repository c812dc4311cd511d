"""Exact polynomial tools for Pisot and Salem numbers.

Modules: ``polyint`` (integer polynomial arithmetic), ``rootloc`` (certified
roots and unit-circle counts), ``classify`` (verdicts, G construction, S'
criterion), ``families`` (explicit polynomial families, Salem and Boyd
constructions, identity checks), ``experiments`` (convergence, scans,
iteration identities, brackets) and ``cli``.
"""

from salemlab.polyint import IntPoly, SignChoice, parse_poly, format_poly

__all__ = ["IntPoly", "SignChoice", "parse_poly", "format_poly"]
__version__ = "0.1.0"
