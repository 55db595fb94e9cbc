"""Restriction of H^*(prod BU(k)) to the orbit cohomology ring and its kernel.

Orbits are indexed by q-tuples J with |J| = k.  The orbit of J has
cohomology Z[c_n^{i+}, c_n^{i-} : n <= j_i]; the classifying map for the
Spin^c class c restricts on that orbit to "pick the + or - copy in every
slot, then take the Whitney sum", i.e. its total class is the product of the
selected per-slot total classes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations
from math import comb
from typing import List, Optional, Sequence, Tuple

from .chern import (
    TotalClass,
    chern_ring,
    rebased_ring,
    series_inverse,
    series_mul,
    source_ring,
)
from .index import chosen_classes
from .ring import (
    Generator,
    GradedPolynomial,
    IdealPresentation,
    MonomialImages,
    RingHom,
    RingPresentation,
    TupleRing,
    ideal_degree_rank,
    kernel_dimension,
)

OrbitTuple = Tuple[int, ...]


def enumerate_orbits(q: int, k: int) -> List[OrbitTuple]:
    """All q-tuples of nonnegative integers summing to k, lexicographically increasing."""
    if q < 1 or k < 0:
        raise ValueError("need q >= 1 and k >= 0")

    def rec(slots, total):
        if slots == 1:
            yield (total,)
            return
        for first in range(total + 1):
            for rest in rec(slots - 1, total - first):
                yield (first,) + rest

    out = list(rec(q, k))
    assert len(out) == comb(k + q - 1, q - 1)
    return out


def orbit_ring(J: Sequence[int]) -> RingPresentation:
    gens = []
    for i, j in enumerate(J, start=1):
        for sign in "+-":
            gens += [Generator("c", n, 2 * n, i, sign) for n in range(1, j + 1)]
    return RingPresentation(tuple(gens))


def orbit_tuple_ring(q: int, k: int) -> TupleRing:
    orbits = enumerate_orbits(q, k)
    return TupleRing(tuple(orbit_ring(J) for J in orbits), tuple(orbits))


def slot_class(ring: RingPresentation, J: Sequence[int], i: int, sign: str, order: int) -> TotalClass:
    """Total class c^{i,sign} = 1 + c_1^{i,sign} + ... + c_{j_i}^{i,sign} in the orbit ring."""
    names = [f"c_{n}^{{{i}{sign}}}" for n in range(1, J[i - 1] + 1)]
    return TotalClass.of_generators(ring, names, order)


def slot_selection(c: Sequence[int], J: Sequence[int]) -> Tuple[Optional[str], ...]:
    """Per slot, which copy of BU(j_i) the class c projects to: '+' if c_i = 1, '-' if -1.

    Slots with j_i = 0 carry no generators and get None.
    """
    c = tuple(c)
    if len(c) != len(J):
        raise ValueError("class and orbit tuple lengths differ")
    out = []
    for ci, ji in zip(c, J):
        if ji == 0:
            out.append(None)
        elif ci == 1:
            out.append("+")
        elif ci == -1:
            out.append("-")
        else:
            raise ValueError("slot selection needs c in {+1,-1}^q")
    return tuple(out)


def restricted_total_class(c: Sequence[int], J: Sequence[int], order: int) -> TotalClass:
    """Image of the total Chern class C under the orbit-J restriction for class c."""
    ring = orbit_ring(J)
    total = TotalClass.one(ring, order)
    for i, sign in enumerate(slot_selection(c, J), start=1):
        if sign is not None:
            total = series_mul(total, slot_class(ring, J, i, sign, order))
    return total


def restriction_component(c: Sequence[int], J: Sequence[int], k: int) -> RingHom:
    """Z[C_1..C_k] -> H^*(Or(J)): C_n goes to the degree-2n part of the selected Whitney product."""
    if sum(J) != k:
        raise ValueError(f"|J| = {sum(J)} differs from k = {k}")
    src = chern_ring(k)
    total = restricted_total_class(c, J, max(k, 1))
    return RingHom(src, orbit_ring(J), tuple(total[n] for n in range(1, k + 1)))


def classifying_restriction(q: int, k: int) -> RingHom:
    """Z[C_n^l] -> prod_J H^*(Or(J)), using the chosen classes c_0..c_q."""
    src = source_ring(q, k)
    target = orbit_tuple_ring(q, k)
    classes = chosen_classes(q)
    images = {}
    for l, c in enumerate(classes):
        parts = [restricted_total_class(c.c, J, k) for J in target.labels]
        for n in range(1, k + 1):
            images[f"C_{n}^{l}"] = target.element([p[n] for p in parts])
    return RingHom.from_names(src, target, images)


def restriction_map(q: int, k: int) -> RingHom:
    """Z[C_n, S_n^i] -> prod_J H^*(Or(J)) in the rebased variables.

    C goes to prod_i c^{i+} and S^i to s^i = (c^{i+})^{-1} c^{i-} in every
    component (s^i = 1 when j_i = 0).
    """
    src = rebased_ring(q, k)
    target = orbit_tuple_ring(q, k)
    c_parts, s_parts = [], {i: [] for i in range(1, q + 1)}
    for J, ring in zip(target.labels, target.components):
        c_parts.append(restricted_total_class((1,) * q, J, k))
        for i in range(1, q + 1):
            plus = slot_class(ring, J, i, "+", k)
            minus = slot_class(ring, J, i, "-", k)
            s_parts[i].append(series_mul(series_inverse(plus), minus))
    images = {}
    for n in range(1, k + 1):
        images[f"C_{n}"] = target.element([p[n] for p in c_parts])
        for i in range(1, q + 1):
            images[f"S_{n}^{i}"] = target.element([p[n] for p in s_parts[i]])
    return RingHom.from_names(src, target, images)


# --- relation ideals ---------------------------------------------------------


def _dedupe(polys: List[GradedPolynomial]) -> List[GradedPolynomial]:
    seen, out = set(), []
    for p in polys:
        key = -p if p.sorted_terms()[0][1] < 0 else p
        if key not in seen:
            seen.add(key)
            out.append(p)
    return out


def charge_one_relations(q: int) -> IdealPresentation:
    """<S_1^i S_1^j : i < j> in Z[C_1, S_1^i]."""
    R = rebased_ring(q, 1)
    gens = [R.var(f"S_1^{i}") * R.var(f"S_1^{j}") for i, j in combinations(range(1, q + 1), 2)]
    return IdealPresentation(R, tuple(gens))


def charge_two_relations(q: int) -> IdealPresentation:
    """The four relation families on Z[C_1, C_2, S_1^i, S_2^i].

    Every family is generated over ordered index tuples (the distinguished
    slot of the last family ordered, the rest unordered in effect) and then
    deduplicated by canonical form.
    """
    R = rebased_ring(q, 2)
    C1, C2 = R.var("C_1"), R.var("C_2")

    def S(n, i):
        return R.var(f"S_{n}^{i}")

    slots = range(1, q + 1)
    fam1, fam2, fam3, fam4 = [], [], [], []
    for i, j in permutations(slots, 2):
        fam1.append(C1 * S(1, i) * S(1, j) + S(1, i) * S(2, j) + S(2, i) * S(1, j))
        fam2.append(C2 * S(1, i) * S(1, j) - S(2, i) * S(2, j))
    for i, j, l in permutations(slots, 3):
        fam3.append(S(1, i) * S(1, j) * S(1, l))
        fam4.append(S(1, i) * S(1, j) * S(2, l))
    gens = _dedupe(fam1) + _dedupe(fam2) + _dedupe(fam3) + _dedupe(fam4)
    return IdealPresentation(R, tuple(gens))


def relation_ideal(q: int, k: int) -> IdealPresentation:
    if k == 1:
        return charge_one_relations(q)
    if k == 2:
        return charge_two_relations(q)
    raise ValueError("relation ideals are known for k = 1, 2 only")


@dataclass
class RelationCheck:
    q: int
    k: int
    ok: bool
    failures: List[Tuple[str, OrbitTuple, str]] = field(default_factory=list)


def verify_relations_in_kernel(q: int, k: int = 2) -> RelationCheck:
    """Apply the restriction map to every relation generator and demand the zero tuple."""
    if q < 2:
        return RelationCheck(q, k, True)
    h = restriction_map(q, k)
    ideal = relation_ideal(q, k)
    failures = []
    for g in ideal.generators:
        img = h(g)
        for J, part in zip(img.ring.labels, img.parts):
            if part:
                failures.append((str(g), J, str(part)))
    return RelationCheck(q, k, not failures, failures)


@dataclass(frozen=True)
class DegreeComparison:
    d: int
    dim_kernel: int
    dim_ideal: int

    @property
    def equal(self) -> bool:
        return self.dim_kernel == self.dim_ideal


@dataclass
class KernelReport:
    q: int
    k: int
    degrees: List[DegreeComparison]
    relations_in_kernel: bool

    @property
    def ok(self) -> bool:
        return self.relations_in_kernel and all(d.equal for d in self.degrees)

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "k": self.k,
            "degrees": [
                {"d": d.d, "dim_kernel": d.dim_kernel, "dim_ideal": d.dim_ideal, "equal": d.equal}
                for d in self.degrees
            ],
            "relations_in_kernel": self.relations_in_kernel,
        }


def kernel_equals_ideal(q: int, k: int, max_degree: int = 12) -> KernelReport:
    """Compare dim_Q of the kernel with dim_Q of the relation ideal in every even degree."""
    if k not in (1, 2):
        raise ValueError("k must be 1 or 2")
    h = restriction_map(q, k)
    ideal = relation_ideal(q, k)
    images = MonomialImages(h)
    rows = []
    for d in range(0, max_degree + 1, 2):
        rows.append(DegreeComparison(d, kernel_dimension(h, d, images), ideal_degree_rank(ideal, d)))
    return KernelReport(q, k, rows, verify_relations_in_kernel(q, k).ok)


# --- the key identity --------------------------------------------------------


def identity_sides(i: int = 1, j: int = 2) -> Tuple[GradedPolynomial, GradedPolynomial]:
    """Both sides of the identity reducing products S_a^i S_b^j modulo the first two families."""
    R = rebased_ring(max(i, j), 2)
    C1, C2 = R.var("C_1"), R.var("C_2")
    S1i, S2i = R.var(f"S_1^{i}"), R.var(f"S_2^{i}")
    S1j, S2j = R.var(f"S_1^{j}"), R.var(f"S_2^{j}")
    lhs = S2i * (C1 * S1i * S1j + S1i * S2j + S2i * S1j) + S1i * (C2 * S1i * S1j - S2i * S2j)
    rhs = S1j * (S2i ** 2 + C1 * S1i * S2i + C2 * S1i ** 2)
    return lhs, rhs


def identity_check() -> bool:
    lhs, rhs = identity_sides()
    return lhs == rhs
