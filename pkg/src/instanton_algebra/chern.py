"""Truncated total Chern classes and the C/S change of variables.

A total class ``1 + u_1 + u_2 + ...`` is stored degree by degree; ``u_n`` is
homogeneous of degree ``2n`` (or zero) and everything above the truncation
order is dropped.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Tuple

from .ring import Generator, GradedPolynomial, PresentationMismatch, RingHom, RingPresentation

DEFAULT_ORDER = 8  # components up to degree 16


@dataclass(frozen=True)
class TotalClass:
    """``components[n]`` is the degree-2n piece, for n = 0..order."""

    ring: RingPresentation
    components: Tuple[GradedPolynomial, ...]

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if not comps:
            raise ValueError("a total class has at least its unit component")
        for n, u in enumerate(comps):
            if u.ring != self.ring:
                raise PresentationMismatch("component outside the class ring")
            ds = u.degrees()
            if ds and ds != {2 * n}:
                raise ValueError(f"component {n} is not homogeneous of degree {2 * n}")

    @property
    def order(self) -> int:
        return len(self.components) - 1

    @property
    def unit(self) -> GradedPolynomial:
        return self.components[0]

    def __getitem__(self, n: int) -> GradedPolynomial:
        if 0 <= n < len(self.components):
            return self.components[n]
        if n > self.order:
            raise IndexError(f"component {n} lies beyond truncation order {self.order}")
        return self.ring.zero()

    def total(self) -> GradedPolynomial:
        out = self.ring.zero()
        for u in self.components:
            out = out + u
        return out

    def truncate(self, order: int) -> "TotalClass":
        comps = list(self.components[: order + 1])
        comps += [self.ring.zero()] * (order + 1 - len(comps))
        return TotalClass(self.ring, tuple(comps))

    def __mul__(self, other: "TotalClass") -> "TotalClass":
        return series_mul(self, other)

    @classmethod
    def one(cls, ring: RingPresentation, order: int = DEFAULT_ORDER) -> "TotalClass":
        return cls(ring, (ring.one(),) + (ring.zero(),) * order)

    @classmethod
    def from_parts(
        cls, ring: RingPresentation, parts: Sequence[GradedPolynomial], order: int = DEFAULT_ORDER
    ) -> "TotalClass":
        """``1 + parts[0] + parts[1] + ...`` (``parts[n-1]`` in degree 2n)."""
        comps = [ring.one()] + list(parts[:order])
        comps += [ring.zero()] * (order + 1 - len(comps))
        return cls(ring, tuple(comps))

    @classmethod
    def of_generators(
        cls, ring: RingPresentation, names: Sequence[str], order: int = DEFAULT_ORDER
    ) -> "TotalClass":
        """Total class whose degree-2n piece is the generator ``names[n-1]``."""
        return cls.from_parts(ring, [ring.var(n) for n in names], order)


def _check_pair(u: TotalClass, v: TotalClass):
    if u.ring != v.ring:
        raise PresentationMismatch("total classes live in different rings")
    if u.order != v.order:
        raise ValueError(f"truncation orders differ ({u.order} vs {v.order})")


def series_mul(u: TotalClass, v: TotalClass) -> TotalClass:
    _check_pair(u, v)
    N = u.order
    comps = []
    for n in range(N + 1):
        acc = u.ring.zero()
        for m in range(n + 1):
            if u.components[m] and v.components[n - m]:
                acc = acc + u.components[m] * v.components[n - m]
        comps.append(acc)
    return TotalClass(u.ring, tuple(comps))


def series_inverse(u: TotalClass) -> TotalClass:
    """Inverse of a total class with unit component 1, via D_n = -sum_{m=1..n} u_m D_{n-m}."""
    if u.unit != 1:
        raise ValueError("only classes with degree-0 component 1 are invertible here")
    d = [u.ring.one()]
    for n in range(1, u.order + 1):
        acc = u.ring.zero()
        for m in range(1, n + 1):
            if u.components[m] and d[n - m]:
                acc = acc - u.components[m] * d[n - m]
        d.append(acc)
    return TotalClass(u.ring, tuple(d))


# --- the rings of products of BU(k) -----------------------------------------


def chern_ring(k: int) -> RingPresentation:
    """Z[C_1, ..., C_k] = H^*(BU(k))."""
    return RingPresentation(tuple(Generator("C", n, 2 * n) for n in range(1, k + 1)))


def source_ring(q: int, k: int) -> RingPresentation:
    """Z[C_n^l : 0 <= l <= q, 1 <= n <= k], the cohomology of q+1 copies of BU(k)."""
    return RingPresentation(
        tuple(Generator("C", n, 2 * n, l) for l in range(q + 1) for n in range(1, k + 1))
    )


def rebased_ring(q: int, k: int) -> RingPresentation:
    """Z[C_n, S_n^i : 1 <= i <= q, 1 <= n <= k]."""
    gens = [Generator("C", n, 2 * n) for n in range(1, k + 1)]
    gens += [Generator("S", n, 2 * n, i) for i in range(1, q + 1) for n in range(1, k + 1)]
    return RingPresentation(tuple(gens))


@dataclass(frozen=True)
class ChangeOfVariables:
    """Mutually inverse isomorphisms between Z[C_n^l] and Z[C_n, S_n^i].

    ``rebase`` writes the new variables in the old ones (C = C^0,
    S^i = (C^0)^{-1} C^i); ``unrebase`` goes back (C^0 = C, C^i = C S^i).
    """

    q: int
    k: int
    rebase: RingHom
    unrebase: RingHom


def change_of_variables(q: int, k: int) -> ChangeOfVariables:
    if q < 0 or k < 1:
        raise ValueError("need q >= 0 and k >= 1")
    old, new = source_ring(q, k), rebased_ring(q, k)

    c0 = TotalClass.of_generators(old, [f"C_{n}^0" for n in range(1, k + 1)], k)
    c0_inv = series_inverse(c0)
    forward = {f"C_{n}": old.var(f"C_{n}^0") for n in range(1, k + 1)}
    for i in range(1, q + 1):
        ci = TotalClass.of_generators(old, [f"C_{n}^{i}" for n in range(1, k + 1)], k)
        s = series_mul(c0_inv, ci)
        for n in range(1, k + 1):
            forward[f"S_{n}^{i}"] = s[n]

    c = TotalClass.of_generators(new, [f"C_{n}" for n in range(1, k + 1)], k)
    backward = {f"C_{n}^0": new.var(f"C_{n}") for n in range(1, k + 1)}
    for i in range(1, q + 1):
        si = TotalClass.of_generators(new, [f"S_{n}^{i}" for n in range(1, k + 1)], k)
        prod = series_mul(c, si)
        for n in range(1, k + 1):
            backward[f"C_{n}^{i}"] = prod[n]

    return ChangeOfVariables(
        q, k, RingHom.from_names(new, old, forward), RingHom.from_names(old, new, backward)
    )
