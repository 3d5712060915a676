"""Nahm sums, characters and the B-value search."""

import json
from fractions import Fraction

from . import _core
from ._core import InputError, NahmError

__all__ = [
    "InputError",
    "NahmError",
    "Series",
    "nahm_sum",
    "character",
    "predicted_combinations",
    "search",
    "tba",
    "dual",
    "family_matrix",
]


class Series:
    """Truncated series sum_i coeffs[i] q^(offset + i/lattice_den)."""

    def __init__(self, data):
        self.lattice_den = data["lattice_den"]
        self.offset = Fraction(data["offset"])
        self.coeffs = [Fraction(c) for c in data["coeffs"]]
        self.order = data["order"]

    def terms(self):
        """Nonzero (exponent, coefficient) pairs."""
        step = Fraction(1, self.lattice_den)
        return [(self.offset + i * step, c) for i, c in enumerate(self.coeffs) if c]

    def coefficient(self, exponent):
        index = (Fraction(exponent) - self.offset) * self.lattice_den
        if index < 0 or index.denominator != 1:
            return Fraction(0)
        if index > self.order:
            raise ValueError(f"q^{exponent} is beyond the known range")
        return self.coeffs[int(index)]


def _matrix(a):
    return [[str(Fraction(x)) for x in row] for row in a]


def _datum(a, b, c):
    return json.dumps({"A": _matrix(a), "B": [str(Fraction(x)) for x in b], "C": str(Fraction(c))})


def nahm_sum(a, b, c=0, order=20):
    return Series(json.loads(_core.series(_datum(a, b, c), order)))


def character(label, order=20):
    return Series(json.loads(_core.character(label, order)))


def predicted_combinations(k):
    return json.loads(_core.combinations(k))


def search(family, param, lo=-8, hi=8, denominators=(1, 2, 3, 4), order=20, jobs=1):
    records = json.loads(
        _core.search(family, param, str(Fraction(lo)), str(Fraction(hi)), list(denominators), order, jobs)
    )
    for r in records:
        r["B"] = [Fraction(x) for x in r["B"]]
        r["C"] = Fraction(r["C"])
    return records


def tba(a, digits=60):
    return json.loads(_core.tba(json.dumps(_matrix(a)), digits))


def dual(a, b, c):
    d = json.loads(_core.dual(_datum(a, b, c)))
    entries = [[Fraction(x) for x in row] for row in d["A"]["entries"]]
    return entries, [Fraction(x) for x in d["B"]], Fraction(d["C"])


def family_matrix(family, param):
    m = json.loads(_core.family_matrix(family, param))
    return [[Fraction(x) for x in row] for row in m["entries"]]
