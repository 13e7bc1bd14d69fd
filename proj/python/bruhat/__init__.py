"""Bruhat intervals of Coxeter groups: R and KL polynomials, special matchings."""
import json

from . import _core
from ._core import BruhatError, BudgetExceeded, InvalidInput, suite_names

INF = 0


def _matrix_json(rows):
    if isinstance(rows, str):
        return rows
    return json.dumps({"rank": len(rows), "m": [[INF if v is None else v for v in r] for r in rows]})


def _poly(coeffs):
    return [int(c) for c in coeffs]


class Ball:
    """Ball of radius `bound` in the Coxeter group given by `rows` (None or 0 for infinity)."""

    def __init__(self, rows, bound=None):
        m = _matrix_json(rows)
        self._b = _core.Ball(m, _core.default_bound(m) if bound is None else bound)

    size = property(lambda self: self._b.size)
    bound = property(lambda self: self._b.bound)
    complete = property(lambda self: self._b.complete)

    def elements(self):
        return self._b.elements()

    def length(self, w):
        return self._b.length(w)

    def leq(self, x, y):
        return self._b.leq(x, y)

    def r(self, x, y):
        """Coefficients of R_{x,y}, lowest degree first."""
        return _poly(self._b.r(x, y))

    def kl(self, x, y):
        """Coefficients of P_{x,y}, lowest degree first."""
        return _poly(self._b.kl(x, y))

    def count_families(self, base="s0"):
        return self._b.count_families(base)

    def extend(self, base="s0", index=0):
        return json.loads(self._b.extend(base, index))

    def check_family(self, base="s0", index=0):
        return json.loads(self._b.check_family(base, index))


def dihedral(m, bound=None):
    return Ball([[1, m], [m, 1]], bound)


def default_bound(rows):
    return _core.default_bound(_matrix_json(rows))


def run_suite(name, jobs=1):
    return json.loads(_core.run_suite(name, jobs))


__all__ = ["Ball", "dihedral", "default_bound", "run_suite", "suite_names",
           "BruhatError", "BudgetExceeded", "InvalidInput", "INF"]
