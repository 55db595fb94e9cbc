"""Graded ranks of polynomial rings, ideals and quotients.

A Hilbert vector is a tuple whose entry t is the rank in degree 2t, for
degrees 0..max_degree.  The decomposition check compares the quotient ring
of the charge-two relations with the abelian-group splitting

    Z[a1, a2]  +  q copies of <k1, k2> in Z[a1, a2, k1, k2]
               +  C(q, 2) copies of <x1 x2> in Z[x1, x2, x3, x4].
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import List, Sequence, Tuple

from .restriction import charge_two_relations
from .ring import IdealPresentation, RingPresentation, ideal_degree_rank, monomial_basis, presentation

HilbertVector = Tuple[int, ...]


def hilbert_free(ring: RingPresentation, max_degree: int) -> HilbertVector:
    """Coefficients of prod_g 1/(1 - t^{deg g / 2}) up to t^{max_degree/2}."""
    T = max_degree // 2
    coeffs = [1] + [0] * T
    for d in ring.degrees:
        step = d // 2
        for t in range(step, T + 1):
            coeffs[t] += coeffs[t - step]
    return tuple(coeffs)


def hilbert_ideal(ideal: IdealPresentation, max_degree: int) -> HilbertVector:
    return tuple(ideal_degree_rank(ideal, 2 * t) for t in range(max_degree // 2 + 1))


def hilbert_quotient(ring: RingPresentation, ideal: IdealPresentation, max_degree: int) -> HilbertVector:
    if ideal.ring != ring:
        raise ValueError("ideal does not live in this ring")
    free = hilbert_free(ring, max_degree)
    return tuple(f - i for f, i in zip(free, hilbert_ideal(ideal, max_degree)))


def _add(*vecs: Sequence[int]) -> HilbertVector:
    return tuple(sum(v) for v in zip(*vecs))


def _scale(a: int, vec: Sequence[int]) -> HilbertVector:
    return tuple(a * v for v in vec)


@dataclass(frozen=True)
class DecompositionSpec:
    """Building blocks of the abelian-group splitting of the charge-two cohomology."""

    base: RingPresentation
    slot_ring: RingPresentation
    slot_ideal: IdealPresentation
    pair_ring: RingPresentation
    pair_ideal: IdealPresentation

    @classmethod
    def standard(cls) -> "DecompositionSpec":
        base = presentation(("a1", 2), ("a2", 4))
        slot = presentation(("a1", 2), ("a2", 4), ("k1", 2), ("k2", 4))
        pair = presentation(("x1", 2), ("x2", 2), ("x3", 2), ("x4", 2))
        slot_ideal = IdealPresentation(slot, (slot.var("k1"), slot.var("k2")))
        pair_ideal = IdealPresentation(pair, (pair.var("x1") * pair.var("x2"),))
        return cls(base, slot, slot_ideal, pair, pair_ideal)

    def multiplicities(self, q: int) -> Tuple[int, int, int]:
        return 1, q, comb(q, 2)

    def hilbert(self, q: int, max_degree: int) -> HilbertVector:
        base = hilbert_free(self.base, max_degree)
        slot = hilbert_ideal(self.slot_ideal, max_degree)
        pair = hilbert_ideal(self.pair_ideal, max_degree)
        m0, m1, m2 = self.multiplicities(q)
        return _add(_scale(m0, base), _scale(m1, slot), _scale(m2, pair))


@dataclass(frozen=True)
class DegreeRow:
    d: int
    lhs: int
    rhs: int

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs


@dataclass
class DecompositionReport:
    q: int
    max_degree: int
    rows: List[DegreeRow]

    @property
    def ok(self) -> bool:
        return all(r.equal for r in self.rows)

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "D": self.max_degree,
            "per_degree": [{"d": r.d, "lhs": r.lhs, "rhs": r.rhs, "equal": r.equal} for r in self.rows],
        }


def decomposition_check(q: int, max_degree: int = 20) -> DecompositionReport:
    """Hilbert vector of Z[C, S]/(relations) against the direct-sum splitting, degree by degree."""
    if q < 0:
        raise ValueError("q must be >= 0")
    ideal = charge_two_relations(q)
    lhs = hilbert_quotient(ideal.ring, ideal, max_degree)
    rhs = DecompositionSpec.standard().hilbert(q, max_degree)
    rows = [DegreeRow(2 * t, a, b) for t, (a, b) in enumerate(zip(lhs, rhs))]
    return DecompositionReport(q, max_degree, rows)


def count_monomials(ring: RingPresentation, max_degree: int) -> HilbertVector:
    """Hilbert vector by explicit enumeration (independent of the product formula)."""
    return tuple(len(monomial_basis(ring, 2 * t)) for t in range(max_degree // 2 + 1))
