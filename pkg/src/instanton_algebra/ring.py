"""Exact graded commutative polynomial rings over Z.

All generators sit in positive even degree.  Polynomials are sparse maps from
exponent tuples to Python integers; homomorphisms are given by generator
images, and kernels, ideal pieces and membership are decided one degree at a
time by exact linear algebra (see :mod:`instanton_algebra.linalg`).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from . import linalg

Monomial = Tuple[int, ...]

FAMILY_ORDER = ("C", "S", "c", "s", "X", "x", "a", "k")
_SIGN_ORDER = {"": 0, "+": 1, "-": 2}
_FLAT_FAMILIES = {"a", "k", "x"}

_NAME_RE = re.compile(r"^([A-Za-z])_(\d+)(?:\^(?:\{(\d+)([+-])\}|(\d+)))?$")
_FLAT_RE = re.compile(r"^([akx])(\d+)$")


class PresentationMismatch(ValueError):
    """Operands live in different rings."""


@dataclass(frozen=True)
class Generator:
    """A named polynomial generator such as ``C_2``, ``S_1^3`` or ``c_1^{2-}``."""

    family: str
    sub: int
    degree: int
    sup: Optional[int] = None
    sign: str = ""

    def __post_init__(self):
        if self.family not in FAMILY_ORDER:
            raise ValueError(f"unknown generator family {self.family!r}")
        if self.sub < 1:
            raise ValueError("generator subscript must be >= 1")
        if self.degree < 2 or self.degree % 2:
            raise ValueError(f"generator degree must be even and >= 2, got {self.degree}")
        if self.sign not in _SIGN_ORDER:
            raise ValueError(f"bad sign label {self.sign!r}")
        if self.sign and self.sup is None:
            raise ValueError("a signed label needs a superscript")

    @property
    def name(self) -> str:
        if self.sup is None:
            if self.family in _FLAT_FAMILIES:
                return f"{self.family}{self.sub}"
            return f"{self.family}_{self.sub}"
        if self.sign:
            return f"{self.family}_{self.sub}^{{{self.sup}{self.sign}}}"
        return f"{self.family}_{self.sub}^{self.sup}"

    def sort_key(self):
        return (
            FAMILY_ORDER.index(self.family),
            -1 if self.sup is None else self.sup,
            _SIGN_ORDER[self.sign],
            self.sub,
        )

    @classmethod
    def parse(cls, name: str, degree: int) -> "Generator":
        m = _FLAT_RE.match(name)
        if m:
            return cls(m.group(1), int(m.group(2)), degree)
        m = _NAME_RE.match(name)
        if not m:
            raise ValueError(f"cannot parse generator name {name!r}")
        fam, sub, sup_signed, sign, sup_plain = m.groups()
        if sup_signed is not None:
            return cls(fam, int(sub), degree, int(sup_signed), sign)
        return cls(fam, int(sub), degree, None if sup_plain is None else int(sup_plain))


@dataclass(frozen=True)
class RingPresentation:
    """Z[generators]; generators are kept in canonical order."""

    generators: Tuple[Generator, ...] = ()
    _index: Dict[str, int] = field(default=None, init=False, compare=False, repr=False)
    degrees: Tuple[int, ...] = field(default=(), init=False, compare=False, repr=False)

    def __post_init__(self):
        gens = tuple(sorted(self.generators, key=Generator.sort_key))
        index = {g.name: i for i, g in enumerate(gens)}
        if len(index) != len(gens):
            raise ValueError("generator names must be unique")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "degrees", tuple(g.degree for g in gens))

    @property
    def ngens(self) -> int:
        return len(self.generators)

    @property
    def names(self) -> List[str]:
        return [g.name for g in self.generators]

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"{name!r} is not a generator of this ring") from None

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def var(self, name: str) -> "GradedPolynomial":
        e = [0] * self.ngens
        e[self.index(name)] = 1
        return GradedPolynomial(self, {tuple(e): 1}, _trusted=True)

    def gens(self) -> List["GradedPolynomial"]:
        return [self.var(n) for n in self.names]

    def const(self, value: int) -> "GradedPolynomial":
        return GradedPolynomial(self, {(0,) * self.ngens: value} if value else {}, _trusted=True)

    def one(self) -> "GradedPolynomial":
        return self.const(1)

    def zero(self) -> "GradedPolynomial":
        return self.const(0)

    def monomial(self, exps: Sequence[int], coef: int = 1) -> "GradedPolynomial":
        return GradedPolynomial(self, {tuple(exps): coef})

    def monomial_degree(self, exps: Monomial) -> int:
        return sum(e * d for e, d in zip(exps, self.degrees))

    def monomial_str(self, exps: Monomial) -> str:
        parts = []
        for g, e in zip(self.generators, exps):
            if e == 0:
                continue
            if e == 1:
                parts.append(g.name)
            elif g.sup is None and g.family in _FLAT_FAMILIES:
                parts.append(f"{g.name}^{e}")
            else:
                parts.append(f"({g.name})^{e}")
        return "*".join(parts) if parts else "1"


class GradedPolynomial:
    """Sparse polynomial with integer coefficients in a :class:`RingPresentation`.

    Treated as immutable.  Zero coefficients are never stored.
    """

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: RingPresentation, terms: Mapping[Monomial, int] = None, *, _trusted=False):
        self.ring = ring
        self._hash = None
        if terms is None:
            self.terms: Dict[Monomial, int] = {}
        elif _trusted:
            self.terms = dict(terms)
        else:
            n = ring.ngens
            clean = {}
            for exps, coef in terms.items():
                exps = tuple(int(e) for e in exps)
                if len(exps) != n or any(e < 0 for e in exps):
                    raise ValueError(f"exponent vector {exps} does not fit {n} generators")
                if int(coef) != coef:
                    raise TypeError("coefficients must be integers")
                if coef:
                    clean[exps] = clean.get(exps, 0) + int(coef)
            self.terms = {e: c for e, c in clean.items() if c}

    # --- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "GradedPolynomial":
        if isinstance(other, GradedPolynomial):
            if other.ring is not self.ring and other.ring != self.ring:
                raise PresentationMismatch("polynomials belong to different presentations")
            return other
        if isinstance(other, int):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return GradedPolynomial(self.ring, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return GradedPolynomial(self.ring, {e: -c for e, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return self.ring.zero()
            return GradedPolynomial(self.ring, {e: c * other for e, c in self.terms.items()}, _trusted=True)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: Dict[Monomial, int] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = out.get(e, 0) + ca * cb
        return GradedPolynomial(self.ring, {e: c for e, c in out.items() if c}, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        result, base = self.ring.one(), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            return self.terms == ({(0,) * self.ring.ngens: other} if other else {})
        if not isinstance(other, GradedPolynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # --- grading ----------------------------------------------------------

    def degrees(self) -> set:
        return {self.ring.monomial_degree(e) for e in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> Optional[int]:
        """Top degree; None for the zero polynomial."""
        ds = self.degrees()
        return max(ds) if ds else None

    def component(self, d: int) -> "GradedPolynomial":
        md = self.ring.monomial_degree
        return GradedPolynomial(self.ring, {e: c for e, c in self.terms.items() if md(e) == d}, _trusted=True)

    def coordinates(self) -> Dict[Monomial, int]:
        return self.terms

    def sorted_terms(self) -> List[Tuple[Monomial, int]]:
        md = self.ring.monomial_degree
        return sorted(self.terms.items(), key=lambda t: (md(t[0]), t[0]), reverse=True)

    def content(self) -> int:
        g = 0
        for c in self.terms.values():
            g = gcd(g, c)
        return g

    # --- text and JSON ----------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for i, (e, c) in enumerate(self.sorted_terms()):
            mono = self.ring.monomial_str(e)
            mag = abs(c)
            if mono == "1":
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if i == 0:
                out.append(("-" if c < 0 else "") + body)
            else:
                out.append((" - " if c < 0 else " + ") + body)
        return "".join(out)

    def __repr__(self):
        return f"GradedPolynomial({self})"

    def to_json(self) -> dict:
        return {
            "gens": [{"name": g.name, "deg": g.degree} for g in self.ring.generators],
            "terms": [{"exps": list(e), "coef": str(c)} for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "GradedPolynomial":
        given = [Generator.parse(g["name"], int(g["deg"])) for g in data["gens"]]
        ring = RingPresentation(tuple(given))
        # stored exponent order may differ from canonical order
        perm = [ring.index(g.name) for g in given]
        terms = {}
        for t in data["terms"]:
            e = [0] * ring.ngens
            for pos, x in zip(perm, t["exps"]):
                e[pos] = int(x)
            terms[tuple(e)] = int(t["coef"])
        return cls(ring, terms)


# --- tuple rings -------------------------------------------------------------


@dataclass(frozen=True)
class TupleRing:
    """Finite product of polynomial rings, e.g. the cohomology of a disjoint union."""

    components: Tuple[RingPresentation, ...]
    labels: Tuple[Tuple[int, ...], ...] = None

    def __post_init__(self):
        labels = self.labels
        if labels is None:
            labels = tuple((i,) for i in range(len(self.components)))
        labels = tuple(tuple(j) for j in labels)
        if len(labels) != len(self.components):
            raise ValueError("one label per component required")
        if list(labels) != sorted(labels):
            raise ValueError("component labels must be in lexicographic order")
        object.__setattr__(self, "labels", labels)

    def element(self, parts: Sequence[GradedPolynomial]) -> "TupleElement":
        return TupleElement(self, tuple(parts))

    def const(self, value: int) -> "TupleElement":
        return TupleElement(self, tuple(r.const(value) for r in self.components))

    def one(self) -> "TupleElement":
        return self.const(1)

    def zero(self) -> "TupleElement":
        return self.const(0)


class TupleElement:
    """Componentwise element of a :class:`TupleRing`."""

    __slots__ = ("ring", "parts")

    def __init__(self, ring: TupleRing, parts: Sequence[GradedPolynomial]):
        parts = tuple(parts)
        if len(parts) != len(ring.components):
            raise ValueError("wrong number of components")
        for p, r in zip(parts, ring.components):
            if p.ring != r:
                raise PresentationMismatch("component lives in the wrong ring")
        self.ring = ring
        self.parts = parts

    def _coerce(self, other):
        if isinstance(other, TupleElement):
            if other.ring is not self.ring and other.ring != self.ring:
                raise PresentationMismatch("tuple elements of different tuple rings")
            return other
        if isinstance(other, int):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return TupleElement(self.ring, [a + b for a, b in zip(self.parts, other.parts)])

    __radd__ = __add__

    def __neg__(self):
        return TupleElement(self.ring, [-a for a in self.parts])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return TupleElement(self.ring, [a - b for a, b in zip(self.parts, other.parts)])

    def __mul__(self, other):
        if isinstance(other, int):
            return TupleElement(self.ring, [a * other for a in self.parts])
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return TupleElement(self.ring, [a * b for a, b in zip(self.parts, other.parts)])

    __rmul__ = __mul__

    def __pow__(self, n: int):
        return TupleElement(self.ring, [a ** n for a in self.parts])

    def __eq__(self, other):
        if isinstance(other, int):
            return all(p == other for p in self.parts)
        if not isinstance(other, TupleElement):
            return NotImplemented
        return self.ring == other.ring and self.parts == other.parts

    def __hash__(self):
        return hash(self.parts)

    def __bool__(self):
        return any(self.parts)

    def __getitem__(self, label):
        return self.parts[self.ring.labels.index(tuple(label))]

    def degrees(self) -> set:
        out = set()
        for p in self.parts:
            out |= p.degrees()
        return out

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def coordinates(self) -> Dict[Tuple[int, Monomial], int]:
        return {(i, e): c for i, p in enumerate(self.parts) for e, c in p.terms.items()}

    def __repr__(self):
        return "(" + ", ".join(str(p) for p in self.parts) + ")"


Element = Union[GradedPolynomial, TupleElement]
Target = Union[RingPresentation, TupleRing]


# --- homomorphisms -----------------------------------------------------------


@dataclass(frozen=True)
class RingHom:
    """Degree-preserving ring homomorphism determined by generator images."""

    source: RingPresentation
    target: Target
    images: Tuple[Element, ...]

    def __post_init__(self):
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        if len(images) != self.source.ngens:
            raise ValueError("need exactly one image per source generator")
        for g, img in zip(self.source.generators, images):
            if img.ring != self.target:
                raise PresentationMismatch(f"image of {g.name} is not in the target ring")
            ds = img.degrees()
            if ds and ds != {g.degree}:
                raise ValueError(f"image of {g.name} is not homogeneous of degree {g.degree}")

    @classmethod
    def from_names(cls, source: RingPresentation, target: Target, images: Mapping[str, Element]) -> "RingHom":
        return cls(source, target, tuple(images[n] for n in source.names))

    def image_of(self, name: str) -> Element:
        return self.images[self.source.index(name)]

    def __call__(self, p: GradedPolynomial) -> Element:
        if p.ring != self.source:
            raise PresentationMismatch("polynomial is not in the source ring")
        cache = MonomialImages(self)
        out = self.target.zero()
        for e, c in p.terms.items():
            out = out + cache(e) * c
        return out

    def compose(self, inner: "RingHom") -> "RingHom":
        """``self`` after ``inner``."""
        if inner.target != self.source:
            raise PresentationMismatch("cannot compose: target/source mismatch")
        return RingHom(inner.source, self.target, tuple(self(img) for img in inner.images))

    @classmethod
    def identity(cls, ring: RingPresentation) -> "RingHom":
        return cls(ring, ring, tuple(ring.gens()))

    @classmethod
    def zero_map(cls, source: RingPresentation, target: Target) -> "RingHom":
        return cls(source, target, tuple(target.zero() for _ in range(source.ngens)))


def hom_apply(h: RingHom, p: GradedPolynomial) -> Element:
    return h(p)


class MonomialImages:
    """Memoized images of monomials under a homomorphism."""

    def __init__(self, h: RingHom):
        self.h = h
        self._memo: Dict[Monomial, Element] = {(0,) * h.source.ngens: h.target.one()}

    def __call__(self, exps: Monomial) -> Element:
        hit = self._memo.get(exps)
        if hit is not None:
            return hit
        i = next(i for i, e in enumerate(exps) if e)
        lower = list(exps)
        lower[i] -= 1
        img = self(tuple(lower)) * self.h.images[i]
        self._memo[exps] = img
        return img


# --- degreewise linear algebra ----------------------------------------------


@lru_cache(maxsize=None)
def _basis(degrees: Tuple[int, ...], d: int) -> Tuple[Monomial, ...]:
    if d < 0 or d % 2:
        return ()
    if not degrees:
        return ((),) if d == 0 else ()
    head, rest = degrees[0], degrees[1:]
    out = []
    for e in range(d // head + 1):
        for tail in _basis(rest, d - e * head):
            out.append((e,) + tail)
    return tuple(out)


def monomial_basis(ring: RingPresentation, d: int) -> List[Monomial]:
    """All monomials of degree exactly ``d``, in increasing lexicographic order."""
    return list(_basis(ring.degrees, d))


class _Indexer(dict):
    def __missing__(self, key):
        v = self[key] = len(self)
        return v


def _to_sparse(coords: Mapping, indexer: _Indexer) -> Dict[int, int]:
    return {indexer[k]: c for k, c in coords.items()}


def kernel_degree(h: RingHom, d: int, images: MonomialImages = None) -> List[GradedPolynomial]:
    """Basis over Q of the degree-``d`` kernel of ``h``, as primitive integer polynomials."""
    images = images or MonomialImages(h)
    basis = monomial_basis(h.source, d)
    idx = _Indexer()
    vecs = [_to_sparse(images(m).coordinates(), idx) for m in basis]
    out = []
    for dep in linalg.dependencies(vecs):
        out.append(GradedPolynomial(h.source, {basis[j]: c for j, c in dep.items()}, _trusted=True))
    return out


def kernel_dimension(h: RingHom, d: int, images: MonomialImages = None) -> int:
    images = images or MonomialImages(h)
    basis = monomial_basis(h.source, d)
    idx = _Indexer()
    vecs = [_to_sparse(images(m).coordinates(), idx) for m in basis]
    return len(basis) - linalg.rank(vecs)


@dataclass(frozen=True)
class IdealPresentation:
    """Ideal of a polynomial ring given by homogeneous generators of positive degree."""

    ring: RingPresentation
    generators: Tuple[GradedPolynomial, ...] = ()

    def __post_init__(self):
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        for g in gens:
            if g.ring != self.ring:
                raise PresentationMismatch("ideal generator outside the ambient ring")
            ds = g.degrees()
            if len(ds) != 1 or min(ds) <= 0:
                raise ValueError(f"ideal generator {g} must be homogeneous of positive degree")

    def __len__(self):
        return len(self.generators)


def _ideal_rows(I: IdealPresentation, d: int) -> Tuple[List[Tuple[int, Monomial]], List[Dict[Monomial, int]]]:
    """Spanning set {m*g : deg(m*g) = d} as (generator index, multiplier) labels and term maps."""
    labels, rows = [], []
    for gi, g in enumerate(I.generators):
        dg = g.degree()
        for m in _basis(I.ring.degrees, d - dg):
            row = {tuple(x + y for x, y in zip(m, e)): c for e, c in g.terms.items()}
            labels.append((gi, m))
            rows.append(row)
    return labels, rows


def ideal_degree_rank(I: IdealPresentation, d: int) -> int:
    _, rows = _ideal_rows(I, d)
    idx = _Indexer()
    return linalg.rank([_to_sparse(r, idx) for r in rows])


def ideal_degree_basis(I: IdealPresentation, d: int) -> List[GradedPolynomial]:
    """Row-reduced Q-basis of the degree-``d`` piece of ``I`` (primitive integer rows)."""
    _, rows = _ideal_rows(I, d)
    idx = _Indexer()
    sparse = [_to_sparse(r, idx) for r in rows]
    keys = {v: k for k, v in idx.items()}
    return [
        GradedPolynomial(I.ring, {keys[c]: v for c, v in row.items()}, _trusted=True)
        for row in linalg.row_basis(sparse)
    ]


@dataclass(frozen=True)
class Membership:
    """Outcome of an ideal membership test.

    When ``member`` is true, ``denominator * p == sum(multipliers[i] * I.generators[i])``.
    Integral mode always has ``denominator == 1``.
    """

    member: bool
    denominator: int = 1
    multipliers: Optional[Tuple[GradedPolynomial, ...]] = None


def membership(p: GradedPolynomial, I: IdealPresentation, mode: str = "rational") -> Membership:
    if mode not in ("rational", "integral"):
        raise ValueError("mode must be 'rational' or 'integral'")
    if p.ring != I.ring:
        raise PresentationMismatch("polynomial and ideal live in different rings")
    if not p.is_homogeneous():
        raise ValueError("membership is decided degreewise; input must be homogeneous")
    zero = I.ring.zero()
    if not p:
        return Membership(True, 1, tuple(zero for _ in I.generators))
    for gi, g in enumerate(I.generators):
        for sign in (1, -1):
            if p == g * sign:
                mults = [zero] * len(I)
                mults[gi] = I.ring.const(sign)
                return Membership(True, 1, tuple(mults))

    d = p.degree()
    labels, rows = _ideal_rows(I, d)
    idx = _Indexer()
    sparse = [_to_sparse(r, idx) for r in rows]
    unknown = [k for k in p.terms if k not in idx]
    if unknown:
        return Membership(False)
    target = _to_sparse(p.terms, idx)
    if mode == "rational":
        found = linalg.solve_rational(sparse, target)
        if found is None:
            return Membership(False)
        den, x = found
    else:
        x = linalg.solve_integer(sparse, target)
        if x is None:
            return Membership(False)
        den = 1
    mults: List[Dict[Monomial, int]] = [{} for _ in I.generators]
    for j, c in x.items():
        gi, m = labels[j]
        mults[gi][m] = mults[gi].get(m, 0) + c
    return Membership(True, den, tuple(GradedPolynomial(I.ring, t) for t in mults))


def generators_in_kernel(h: RingHom, I: IdealPresentation) -> List[Tuple[int, Element]]:
    """Ideal generators with nonzero image, paired with that image."""
    return [(i, img) for i, g in enumerate(I.generators) if (img := h(g))]


def presentation(*gens: Tuple[str, int]) -> RingPresentation:
    """Build a ring from ``(name, degree)`` pairs."""
    return RingPresentation(tuple(Generator.parse(n, d) for n, d in gens))
