"""Symmetric-function expressions with exact rational coefficients.

Only the two bases the tree computations need are supported: elementary
("e") and power sum ("p").  A value is a finitely supported map from
partitions of a fixed degree n to rationals.  The transition maps between
the bases are driven by the brick-tabloid statistics:

    e_mu = sum over refinements lam of mu of (-1)^(n-len(lam)) * OB(lam,mu)/z(lam) * p_lam
    p_mu = sum over refinements lam of mu of (-1)^(n-len(lam)) * w(lam,mu) * e_lam

No floating point is used anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Mapping

from .partition import Partition, _refinement_tuples, format_partition, z_value
from .tabloid import ordered_count, weight_sum

BASES = ("e", "p")


class SymPoly:
    """A finitely supported symmetric-function expression in one basis."""

    __slots__ = ("basis", "n", "terms")

    def __init__(self, basis: str, n: int, terms: Mapping[Iterable[int], object] = ()):
        if basis not in BASES:
            raise ValueError(f"basis must be one of {BASES}, got {basis!r}")
        self.basis = basis
        self.n = n
        clean: dict[Partition, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for lam, c in items:
            key = lam if isinstance(lam, Partition) else Partition(lam)
            if key.n != n:
                raise ValueError(f"term {key} does not have degree {n}")
            coeff = Fraction(c)
            if coeff != 0:
                clean[key] = clean.get(key, Fraction(0)) + coeff
        self.terms = {k: v for k, v in clean.items() if v != 0}

    @classmethod
    def e(cls, lam: Iterable[int], coeff: object = 1) -> "SymPoly":
        key = Partition(lam)
        return cls("e", key.n, {key: coeff})

    @classmethod
    def p(cls, lam: Iterable[int], coeff: object = 1) -> "SymPoly":
        key = Partition(lam)
        return cls("p", key.n, {key: coeff})

    def coefficient(self, lam: Iterable[int]) -> Fraction:
        return self.terms.get(Partition(lam), Fraction(0))

    def items_dec_lex(self) -> list[tuple[Partition, Fraction]]:
        """Terms sorted by partition in decreasing lexicographic order."""
        return sorted(self.terms.items(), key=lambda kv: kv[0], reverse=True)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SymPoly):
            return NotImplemented
        return self.basis == other.basis and self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.basis, self.n, frozenset(self.terms.items())))

    def _check_compatible(self, other: "SymPoly") -> None:
        if self.basis != other.basis or self.n != other.n:
            raise ValueError("operands must share basis and degree")

    def __add__(self, other: "SymPoly") -> "SymPoly":
        self._check_compatible(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + v
        return SymPoly(self.basis, self.n, out)

    def __sub__(self, other: "SymPoly") -> "SymPoly":
        self._check_compatible(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, Fraction(0)) - v
        return SymPoly(self.basis, self.n, out)

    def scale(self, c: object) -> "SymPoly":
        f = Fraction(c)
        return SymPoly(self.basis, self.n, {k: v * f for k, v in self.terms.items()})

    def __repr__(self) -> str:
        return f"SymPoly(basis={self.basis!r}, n={self.n}, terms={len(self.terms)})"

    def render(self) -> str:
        """One term per line, e.g. "1/2 * p[1,1]", in decreasing lex order."""
        if not self.terms:
            return "0"
        lines = []
        for lam, c in self.items_dec_lex():
            lines.append(f"{c} * {self.basis}{format_partition(lam)}")
        return "\n".join(lines)

    def to_json_dict(self) -> dict:
        return {
            "basis": self.basis,
            "n": self.n,
            "terms": [
                {"partition": list(lam), "num": c.numerator, "den": c.denominator}
                for lam, c in self.items_dec_lex()
            ],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "SymPoly":
        terms = {
            Partition(t["partition"]): Fraction(t["num"], t["den"])
            for t in data["terms"]
        }
        return cls(data["basis"], data["n"], terms)


def e_to_p(poly: SymPoly) -> SymPoly:
    """Expand an e-basis expression in the power sum basis (exact)."""
    if poly.basis != "e":
        raise ValueError(f"e_to_p needs an e-basis input, got basis {poly.basis!r}")
    n = poly.n
    out: dict[Partition, Fraction] = {}
    for mu, c in poly.terms.items():
        for lam_t in _refinement_tuples(tuple(mu)):
            lam = Partition(lam_t)
            sign = -1 if (n - len(lam)) % 2 else 1
            contrib = c * sign * Fraction(ordered_count(lam, mu), z_value(lam))
            out[lam] = out.get(lam, Fraction(0)) + contrib
    return SymPoly("p", n, out)


def p_to_e(poly: SymPoly) -> SymPoly:
    """Expand a power-sum expression in the e basis (exact; integer inputs
    give integer outputs)."""
    if poly.basis != "p":
        raise ValueError(f"p_to_e needs a p-basis input, got basis {poly.basis!r}")
    n = poly.n
    out: dict[Partition, Fraction] = {}
    for mu, c in poly.terms.items():
        for lam_t in _refinement_tuples(tuple(mu)):
            lam = Partition(lam_t)
            sign = -1 if (n - len(lam)) % 2 else 1
            contrib = c * sign * weight_sum(lam, mu)
            out[lam] = out.get(lam, Fraction(0)) + contrib
    return SymPoly("e", n, out)


def specialize_ones(poly: SymPoly, k: int) -> Fraction:
    """Substitute x_1 = ... = x_k = 1 and all later variables 0.

    Under this substitution p_m evaluates to k and e_m to binomial(k, m),
    extended multiplicatively over parts and linearly over terms.
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    total = Fraction(0)
    for lam, c in poly.terms.items():
        value = 1
        for m in lam:
            value *= k if poly.basis == "p" else comb(k, m)
        total += c * value
    return total


@lru_cache(maxsize=None)
def warm_transition_cache(n: int) -> int:
    """Precompute w and OB for every refinement pair of degree n.

    Returns the number of pairs.  Scans that expand many trees of the same
    degree call this once so the per-tree cost is pure table lookups.
    """
    pairs = 0
    from .partition import _partition_tuples

    for mu in _partition_tuples(n):
        for lam in _refinement_tuples(mu):
            weight_sum(lam, mu)
            ordered_count(lam, mu)
            pairs += 1
    return pairs
