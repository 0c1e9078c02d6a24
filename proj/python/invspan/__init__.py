"""Minimum-cost inverse optimization under the weighted span objective.

The heavy lifting lives in the compiled extension; this package re-exports the
JSON-string API: solve, verify, minmax, gen.
"""

from ._invspan import InvspanError, gen, minmax, solve, verify

__all__ = ["InvspanError", "gen", "minmax", "solve", "verify"]
