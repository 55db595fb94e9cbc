"""Integer index arithmetic on the connected sum of q copies of CP^2.

The intersection form is the identity in the basis e_1..e_q, so a class is
just an integer vector and cup product is the dot product.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import List, Sequence, Tuple


@dataclass(frozen=True)
class SpinCClass:
    """Characteristic class of a Spin^c structure with c.c = q: a vector of odd entries."""

    c: Tuple[int, ...]

    def __post_init__(self):
        c = tuple(int(x) for x in self.c)
        if any(x % 2 == 0 for x in c):
            raise ValueError(f"Spin^c class must reduce to w2 = (1,...,1) mod 2, got {c}")
        object.__setattr__(self, "c", c)

    def __len__(self):
        return len(self.c)

    def __iter__(self):
        return iter(self.c)

    def __getitem__(self, i):
        return self.c[i]


@dataclass(frozen=True)
class IndexProblem:
    q: int
    k: int
    r: int
    c1E: Tuple[int, ...]
    c: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "c1E", tuple(int(x) for x in self.c1E))
        object.__setattr__(self, "c", tuple(int(x) for x in self.c))
        if self.q < 0 or self.k < 1 or self.r < 2:
            raise ValueError("need q >= 0, k >= 1, r >= 2")
        if len(self.c1E) != self.q or len(self.c) != self.q:
            raise ValueError("c1(E) and c must both have length q")


def intersection(u: Sequence[int], v: Sequence[int]) -> int:
    if len(u) != len(v):
        raise ValueError(f"length mismatch: {len(u)} vs {len(v)}")
    return sum(a * b for a, b in zip(u, v))


def enumerate_spinc(q: int) -> List[SpinCClass]:
    """The 2^q classes c in {+1,-1}^q (these are the ones with c.c = q)."""
    if q < 0:
        raise ValueError("q must be >= 0")
    return [SpinCClass(c) for c in product((1, -1), repeat=q)]


def brute_force_spinc(q: int, bound: int = 3) -> List[Tuple[int, ...]]:
    """Odd vectors with c.c = q and |c_i| <= bound, by exhaustive search."""
    odd = [x for x in range(-bound, bound + 1) if x % 2]
    out = []

    def extend(prefix, budget):
        if len(prefix) == q:
            if budget == 0:
                out.append(tuple(prefix))
            return
        slots_left = q - len(prefix)
        for x in odd:
            rest = budget - x * x
            # each remaining odd entry contributes at least 1
            if rest >= slots_left - 1:
                extend(prefix + [x], rest)

    extend([], q)
    return out


def dirac_index(p: IndexProblem) -> int:
    """k + c1(E).(c1(E)+c)/2 + r (c.c - q)/8, refusing non-integral data."""
    twist = intersection(p.c1E, [a + b for a, b in zip(p.c1E, p.c)])
    rank_term = p.r * (intersection(p.c, p.c) - p.q)
    if twist % 2:
        raise ValueError(f"c1(E).(c1(E)+c) = {twist} is odd; c is not a Spin^c class")
    if rank_term % 8:
        raise ValueError(f"r(c.c - q) = {rank_term} is not divisible by 8; c is not a Spin^c class")
    return p.k + twist // 2 + rank_term // 8


def chosen_classes(q: int) -> List[SpinCClass]:
    """c_0 = (1,...,1) and c_l = -e_l + sum_{i != l} e_i for l = 1..q."""
    out = [SpinCClass((1,) * q)]
    for l in range(1, q + 1):
        out.append(SpinCClass(tuple(-1 if i == l else 1 for i in range(1, q + 1))))
    return out


def coupled_line_index(c: Sequence[int], i: int, sign: int) -> int:
    """Index (1 + sign * c.e_i)/2 of the Dirac operator twisted by the line bundle with c1 = sign*e_i."""
    if not 1 <= i <= len(c):
        raise IndexError(f"slot {i} out of range 1..{len(c)}")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    ci = c[i - 1]
    if ci not in (1, -1):
        raise ValueError("coupled line indices need c in {+1,-1}^q")
    # (sign*e_i).(c + sign*e_i)/2 with e_i.e_i = 1
    return (sign * ci + 1) // 2
