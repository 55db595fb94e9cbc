"""The homology map from the stable orbit to the product of q+1 copies of BU.

On polynomial generators it sends x_m^{i+} to (sum_l X_m^l) - X_m^i and
x_m^{i-} to X_m^i.  Surjectivity is certified twice: by explicit integral
preimages of every X_m^l, and by the Smith form of each degree's generator
matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List

from .linalg import smith_invariants
from .ring import Generator, GradedPolynomial, RingHom, RingPresentation


def loop_ring(q: int, M: int) -> RingPresentation:
    """Z[x_m^{i+}, x_m^{i-} : 1 <= i <= q, 1 <= m <= M]."""
    return RingPresentation(
        tuple(
            Generator("x", m, 2 * m, i, sign)
            for i in range(1, q + 1)
            for sign in "+-"
            for m in range(1, M + 1)
        )
    )


def stable_target_ring(q: int, M: int) -> RingPresentation:
    """Z[X_m^l : 0 <= l <= q, 1 <= m <= M]."""
    return RingPresentation(
        tuple(Generator("X", m, 2 * m, l) for l in range(q + 1) for m in range(1, M + 1))
    )


def stable_homology_map(q: int, M: int) -> RingHom:
    if q < 1 or M < 1:
        raise ValueError("need q >= 1 and M >= 1")
    src, tgt = loop_ring(q, M), stable_target_ring(q, M)
    images = {}
    for m in range(1, M + 1):
        total = tgt.zero()
        for l in range(q + 1):
            total = total + tgt.var(f"X_{m}^{l}")
        for i in range(1, q + 1):
            images[f"x_{m}^{{{i}+}}"] = total - tgt.var(f"X_{m}^{i}")
            images[f"x_{m}^{{{i}-}}"] = tgt.var(f"X_{m}^{i}")
    return RingHom.from_names(src, tgt, images)


def generator_matrix(h: RingHom, m: int) -> List[List[int]]:
    """Coefficients of the degree-2m generator images on the X_m^l (rows l, columns source generators)."""
    tgt = h.target
    rows = []
    for name in [g.name for g in tgt.generators if g.sub == m]:
        e = tuple(1 if n == name else 0 for n in tgt.names)
        rows.append(
            [
                img.terms.get(e, 0)
                for g, img in zip(h.source.generators, h.images)
                if g.sub == m
            ]
        )
    return rows


@dataclass
class SurjectivityReport:
    q: int
    M: int
    certificates: Dict[str, GradedPolynomial] = field(default_factory=dict)
    certificates_ok: bool = True
    smith: Dict[int, List[int]] = field(default_factory=dict)

    @property
    def smith_ok(self) -> bool:
        return all(inv == [1] * (self.q + 1) for inv in self.smith.values())

    @property
    def ok(self) -> bool:
        return self.certificates_ok and self.smith_ok

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "M": self.M,
            "surjective": self.ok,
            "certificates": {k: str(v) for k, v in self.certificates.items()},
            "smith_invariants": {str(m): inv for m, inv in self.smith.items()},
        }


def surjectivity_check(q: int, M: int) -> SurjectivityReport:
    h = stable_homology_map(q, M)
    src, tgt = h.source, h.target
    report = SurjectivityReport(q, M)
    for m in range(1, M + 1):
        minus = {i: src.var(f"x_{m}^{{{i}-}}") for i in range(1, q + 1)}
        pre = {f"X_{m}^{i}": minus[i] for i in range(1, q + 1)}
        x0 = src.var(f"x_{m}^{{1+}}") + minus[1]
        for i in range(1, q + 1):
            x0 = x0 - minus[i]
        pre[f"X_{m}^0"] = x0
        for name in sorted(pre):
            report.certificates[name] = pre[name]
            if h(pre[name]) != tgt.var(name):
                report.certificates_ok = False
        report.smith[m] = smith_invariants(generator_matrix(h, m))
    return report
