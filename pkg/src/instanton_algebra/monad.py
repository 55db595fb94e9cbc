"""Monad data (a1, a2, d, b, c) on the blown-up plane, numerically.

Shapes for charge k and rank r: a1, a2 : U -> W and d : W -> U are k x k,
b : C^r -> W is k x r, c : U -> C^r is r x k.  The integrability equation is
a1 d a2 - a2 d a1 + b c = 0.  Configurations (0, 0, 0, b, c) are the M0 locus,
which corresponds to pairs of orthogonal k-planes (im c, (ker b)^perp) in C^r.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

DEFAULT_SEED = 0xC0FFEE
RANK_TOL = 1e-8
RESIDUAL_TOL = 1e-12


class DegenerateConfiguration(ValueError):
    """Rank conditions needed by the M0 correspondence fail."""


def _as_matrix(x, shape) -> np.ndarray:
    a = np.asarray(x, dtype=complex)
    if a.shape != shape:
        raise ValueError(f"expected shape {shape}, got {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    return a


@dataclass(frozen=True)
class MonadConfig:
    k: int
    r: int
    a1: np.ndarray
    a2: np.ndarray
    d: np.ndarray
    b: np.ndarray
    c: np.ndarray

    def __post_init__(self):
        k, r = self.k, self.r
        if k < 0 or r < 0:
            raise ValueError("k and r must be nonnegative")
        for name, shape in (("a1", (k, k)), ("a2", (k, k)), ("d", (k, k)), ("b", (k, r)), ("c", (r, k))):
            object.__setattr__(self, name, _as_matrix(getattr(self, name), shape))

    @classmethod
    def zero(cls, k: int, r: int) -> "MonadConfig":
        z = np.zeros((k, k), complex)
        return cls(k, r, z, z, z, np.zeros((k, r), complex), np.zeros((r, k), complex))

    @classmethod
    def random(cls, k: int, r: int, rng: np.random.Generator) -> "MonadConfig":
        def g(*shape):
            return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)

        return cls(k, r, g(k, k), g(k, k), g(k, k), g(k, r), g(r, k))

    @property
    def is_m0(self) -> bool:
        return not (self.a1.any() or self.a2.any() or self.d.any())

    def matrices(self) -> Tuple[np.ndarray, ...]:
        return self.a1, self.a2, self.d, self.b, self.c

    def allclose(self, other: "MonadConfig", atol: float = 1e-12) -> bool:
        return (self.k, self.r) == (other.k, other.r) and all(
            np.allclose(x, y, rtol=0, atol=atol) for x, y in zip(self.matrices(), other.matrices())
        )


def integrability_residual(cfg: MonadConfig) -> float:
    """||a1 d a2 - a2 d a1 + b c||_F divided by max(|a1||d||a2|, |a2||d||a1|, |b||c|)."""
    if cfg.k == 0:
        return 0.0
    m = cfg.a1 @ cfg.d @ cfg.a2 - cfg.a2 @ cfg.d @ cfg.a1 + cfg.b @ cfg.c
    nrm = np.linalg.norm
    scale = max(nrm(cfg.a1) * nrm(cfg.d) * nrm(cfg.a2), nrm(cfg.b) * nrm(cfg.c))
    if scale == 0.0:
        return 0.0
    return float(nrm(m) / scale)


# --- gauge action -------------------------------------------------------------


@dataclass(frozen=True)
class GaugePair:
    """(g, h) in Aut(W) x Aut(U)."""

    g: np.ndarray
    h: np.ndarray

    def __post_init__(self):
        g = np.asarray(self.g, dtype=complex)
        h = np.asarray(self.h, dtype=complex)
        if g.ndim != 2 or g.shape[0] != g.shape[1] or h.shape != g.shape:
            raise ValueError("g and h must be square of the same size")
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "h", h)

    @property
    def condition(self) -> float:
        if self.g.shape[0] == 0:
            return 1.0
        return float(max(np.linalg.cond(self.g), np.linalg.cond(self.h)))

    def compose(self, first: "GaugePair") -> "GaugePair":
        """``self`` applied after ``first``."""
        return GaugePair(self.g @ first.g, self.h @ first.h)

    @classmethod
    def identity(cls, k: int) -> "GaugePair":
        return cls(np.eye(k, dtype=complex), np.eye(k, dtype=complex))

    @classmethod
    def random_unitary(cls, k: int, rng: np.random.Generator) -> "GaugePair":
        return cls(random_unitary(k, rng), random_unitary(k, rng))

    @classmethod
    def random(cls, k: int, rng: np.random.Generator) -> "GaugePair":
        def g():
            return np.eye(k) + 0.3 * (rng.standard_normal((k, k)) + 1j * rng.standard_normal((k, k)))

        return cls(g(), g())


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    qm, rm = np.linalg.qr(z)
    return qm * (np.diag(rm) / np.abs(np.diag(rm)))


def gauge_act(p: GaugePair, cfg: MonadConfig) -> MonadConfig:
    """(g a1 h^-1, g a2 h^-1, h d g^-1, g b, c h^-1)."""
    if p.g.shape != (cfg.k, cfg.k):
        raise ValueError("gauge pair size does not match the charge")
    if cfg.k and p.condition > 1e12:
        raise np.linalg.LinAlgError("gauge pair is singular or numerically singular")
    g, h = p.g, p.h
    g_inv, h_inv = np.linalg.inv(g), np.linalg.inv(h)
    return MonadConfig(cfg.k, cfg.r, g @ cfg.a1 @ h_inv, g @ cfg.a2 @ h_inv, h @ cfg.d @ g_inv, g @ cfg.b, cfg.c @ h_inv)


# --- the M0 locus ---------------------------------------------------------------


def _orthonormal_check(frame: np.ndarray, tol: float) -> bool:
    k = frame.shape[1]
    return np.allclose(frame.conj().T @ frame, np.eye(k), rtol=0, atol=tol)


@dataclass(frozen=True)
class SubspacePair:
    """Orthonormal frames (r x k) of two mutually orthogonal k-planes in C^r."""

    V1: np.ndarray
    V2: np.ndarray
    tol: float = field(default=1e-12, compare=False)

    def __post_init__(self):
        V1 = np.asarray(self.V1, dtype=complex)
        V2 = np.asarray(self.V2, dtype=complex)
        if V1.ndim != 2 or V1.shape != V2.shape:
            raise ValueError("frames must be r x k matrices of equal shape")
        if not (_orthonormal_check(V1, self.tol) and _orthonormal_check(V2, self.tol)):
            raise ValueError("frames are not orthonormal")
        if V1.shape[1] and np.abs(V1.conj().T @ V2).max() > self.tol:
            raise ValueError("V1 and V2 are not orthogonal")
        object.__setattr__(self, "V1", V1)
        object.__setattr__(self, "V2", V2)

    @property
    def r(self) -> int:
        return self.V1.shape[0]

    @property
    def k(self) -> int:
        return self.V1.shape[1]

    @classmethod
    def random(cls, k: int, r: int, rng: np.random.Generator) -> "SubspacePair":
        if r < 2 * k:
            raise ValueError("two orthogonal k-planes need r >= 2k")
        u = random_unitary(r, rng)
        return cls(u[:, :k], u[:, k : 2 * k])


def projector(frame: np.ndarray) -> np.ndarray:
    return frame @ frame.conj().T


def subspace_distance(A: np.ndarray, B: np.ndarray) -> float:
    """Spectral norm of the difference of orthogonal projectors onto the column spans."""
    if A.shape[1] == 0 and B.shape[1] == 0:
        return 0.0
    return float(np.linalg.norm(projector(_orthonormal_basis(A)) - projector(_orthonormal_basis(B)), 2))


def pair_distance(p1: SubspacePair, p2: SubspacePair) -> float:
    return max(subspace_distance(p1.V1, p2.V1), subspace_distance(p1.V2, p2.V2))


def _orthonormal_basis(A: np.ndarray, rank: Optional[int] = None) -> np.ndarray:
    u, s, _ = np.linalg.svd(A, full_matrices=False)
    if rank is None:
        rank = numerical_rank(A)
    return u[:, :rank]


def numerical_rank(A: np.ndarray, tol: float = RANK_TOL) -> int:
    if A.size == 0:
        return 0
    s = np.linalg.svd(A, compute_uv=False)
    if s[0] == 0:
        return 0
    return int(np.sum(s > tol * s[0]))


def m0_config(sp: SubspacePair) -> MonadConfig:
    """(0, 0, 0, V2^H, V1): im c = V1, (ker b)^perp = V2, and b c = V2^H V1 = 0."""
    k, r = sp.k, sp.r
    z = np.zeros((k, k), complex)
    return MonadConfig(k, r, z, z, z, sp.V2.conj().T, sp.V1)


def m0_subspaces(cfg: MonadConfig, tol: float = 1e-10) -> SubspacePair:
    """Recover (im c, (ker b)^perp) from an M0 configuration."""
    if not cfg.is_m0:
        raise ValueError("configuration is not of the form (0, 0, 0, b, c)")
    k = cfg.k
    if numerical_rank(cfg.b) != k:
        raise DegenerateConfiguration("b is not surjective")
    if numerical_rank(cfg.c) != k:
        raise DegenerateConfiguration("c is not injective")
    if integrability_residual(cfg) > tol:
        raise DegenerateConfiguration("b c does not vanish")
    V1 = _orthonormal_basis(cfg.c, k)
    V2 = _orthonormal_basis(cfg.b.conj().T, k)
    return SubspacePair(V1, V2, tol=max(tol, 1e-12))


def direct_sum(cfg1: MonadConfig, cfg2: MonadConfig) -> MonadConfig:
    """Block sum: charges and ranks add, b and c act on complementary C^{r1} + C^{r2}."""

    def blk(x, y):
        out = np.zeros((x.shape[0] + y.shape[0], x.shape[1] + y.shape[1]), complex)
        out[: x.shape[0], : x.shape[1]] = x
        out[x.shape[0] :, x.shape[1] :] = y
        return out

    return MonadConfig(
        cfg1.k + cfg2.k,
        cfg1.r + cfg2.r,
        blk(cfg1.a1, cfg2.a1),
        blk(cfg1.a2, cfg2.a2),
        blk(cfg1.d, cfg2.d),
        blk(cfg1.b, cfg2.b),
        blk(cfg1.c, cfg2.c),
    )


def direct_sum_pair(p1: SubspacePair, p2: SubspacePair) -> SubspacePair:
    def blk(x, y):
        out = np.zeros((x.shape[0] + y.shape[0], x.shape[1] + y.shape[1]), complex)
        out[: x.shape[0], : x.shape[1]] = x
        out[x.shape[0] :, x.shape[1] :] = y
        return out

    return SubspacePair(blk(p1.V1, p2.V1), blk(p1.V2, p2.V2))


# --- the monad sequence -----------------------------------------------------------


@dataclass(frozen=True)
class BlowupPoint:
    """(x1 : x2 : x3) with sections (s1 : s2) satisfying s1 x2 = s2 x1."""

    x: Tuple[complex, complex, complex]
    s: Tuple[complex, complex]

    def __post_init__(self):
        x = tuple(complex(v) for v in self.x)
        s = tuple(complex(v) for v in self.s)
        if len(x) != 3 or len(s) != 2:
            raise ValueError("need three x coordinates and two s coordinates")
        if not (np.isclose(np.linalg.norm(x), 1.0, atol=1e-12) and np.isclose(np.linalg.norm(s), 1.0, atol=1e-12)):
            raise ValueError("coordinates must be unit-normalized")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "s", s)
        if self.incidence_defect() > 1e-12:
            raise ValueError("point violates the incidence relation s1 x2 = s2 x1")

    def incidence_defect(self) -> float:
        return abs(self.s[0] * self.x[1] - self.s[1] * self.x[0])


def monad_blocks(b, c, x: Sequence, s: Sequence):
    """Assemble A ((4k+r) x 2k) and B (2k x (4k+r)) from arrays of any dtype.

    Works for complex arrays and for object arrays of symbols alike.
    """
    k = b.shape[0]
    r = b.shape[1]
    x1, x2, x3 = x
    s1, s2 = s
    dtype = np.result_type(b, c)
    one = np.eye(k, dtype=int).astype(dtype)
    zk = np.zeros((k, k), dtype=int).astype(dtype)
    zrk = np.zeros((r, k), dtype=int).astype(dtype)
    zkr = np.zeros((k, r), dtype=int).astype(dtype)
    A = np.block(
        [
            [zk, one * s1],
            [one * x1, zk],
            [zk, one * s2],
            [one * x2, zk],
            [c * x3, zrk],
        ]
    )
    B = np.block(
        [
            [one * x2, zk, -one * x1, zk, b * x3],
            [zk, one * s2, zk, -one * s1, zkr],
        ]
    )
    return A, B


def monad_maps(cfg: MonadConfig, pt: BlowupPoint) -> Tuple[np.ndarray, np.ndarray]:
    if not cfg.is_m0:
        raise ValueError("the monad maps are only written down for configurations (0, 0, 0, b, c)")
    if pt.incidence_defect() > 1e-12:
        raise ValueError("point violates the incidence relation")
    return monad_blocks(cfg.b, cfg.c, pt.x, pt.s)


def composite_residual(cfg: MonadConfig, pt: BlowupPoint) -> float:
    """||B A||_F / (||A||_F ||B||_F) at one point."""
    A, B = monad_maps(cfg, pt)
    if A.size == 0 or B.size == 0:
        return 0.0
    return float(np.linalg.norm(B @ A) / (np.linalg.norm(A) * np.linalg.norm(B)))


def sample_blowup_points(n: int, seed: int = DEFAULT_SEED) -> List[BlowupPoint]:
    """One point on the line at infinity, one on the exceptional line, then n generic points."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = np.random.default_rng(seed)

    def cvec(m):
        v = rng.standard_normal(m) + 1j * rng.standard_normal(m)
        return v / np.linalg.norm(v)

    def through(x12, x3):
        x = np.array([x12[0], x12[1], x3])
        x = x / np.linalg.norm(x)
        s = x[:2] / np.linalg.norm(x[:2])
        return BlowupPoint(tuple(x), tuple(s))

    pts = [through(cvec(2), 0.0), BlowupPoint((0.0, 0.0, 1.0), tuple(cvec(2)))]
    for _ in range(n):
        v = cvec(3)
        pts.append(through(v[:2], v[2]))
    return pts


@dataclass
class PointRanks:
    x: Tuple[complex, complex, complex]
    rank_A: int
    rank_B: int
    expected: int

    @property
    def exact(self) -> bool:
        return self.rank_A == self.expected and self.rank_B == self.expected


@dataclass
class ExactnessReport:
    points: List[PointRanks]

    @property
    def ok(self) -> bool:
        return all(p.exact for p in self.points)


def exactness_check(cfg: MonadConfig, points: Sequence[BlowupPoint], tol: float = RANK_TOL) -> ExactnessReport:
    """A injective and B surjective (numerical rank 2k) at every sampled point."""
    out = []
    for pt in points:
        if cfg.k == 0:
            out.append(PointRanks(pt.x, 0, 0, 0))
            continue
        A, B = monad_maps(cfg, pt)
        out.append(PointRanks(pt.x, numerical_rank(A, tol), numerical_rank(B, tol), 2 * cfg.k))
    return ExactnessReport(out)


# --- dimension count -------------------------------------------------------------


@dataclass(frozen=True)
class DimensionCheck:
    k: int
    r: int
    constraint_rank: int
    gauge_rank: int
    measured: int

    @property
    def expected(self) -> int:
        return 4 * self.r * self.k - 6 * self.k ** 2

    @property
    def orthogonal_pair_count(self) -> int:
        return 2 * self.k * (self.r - self.k) + 2 * self.k * (self.r - 2 * self.k)

    @property
    def ok(self) -> bool:
        return self.measured == self.expected


def _vec_basis(shape) -> List[np.ndarray]:
    out = []
    for idx in np.ndindex(*shape):
        e = np.zeros(shape, complex)
        e[idx] = 1.0
        out.append(e)
    return out


def m0_dimension_check(k: int, r: int, seed: int = DEFAULT_SEED, tol: float = RANK_TOL) -> DimensionCheck:
    """Real dimension of M0 from ranks at a random point.

    Tangent directions (db, dc) satisfy db c + b dc = 0; the gauge algebra acts
    by (xi, eta) -> (xi b, -c eta).  Complex dimension is
    2kr - rank(constraint) - rank(gauge action), doubled for the real count.
    """
    if r <= 2 * k:
        raise ValueError("the count needs r > 2k")
    rng = np.random.default_rng(seed)
    cfg = m0_config(SubspacePair.random(k, r, rng))
    b, c = cfg.b, cfg.c

    # constraint: C^{kr} x C^{rk} -> C^{kk}
    cols = [(db @ c).ravel() for db in _vec_basis((k, r))]
    cols += [(b @ dc).ravel() for dc in _vec_basis((r, k))]
    constraint = np.column_stack(cols)
    # infinitesimal gauge action: gl(k) x gl(k) -> C^{kr} x C^{rk}
    gcols = [np.concatenate([(xi @ b).ravel(), np.zeros(r * k, complex)]) for xi in _vec_basis((k, k))]
    gcols += [np.concatenate([np.zeros(k * r, complex), (-c @ eta).ravel()]) for eta in _vec_basis((k, k))]
    gauge = np.column_stack(gcols)
    # gauge directions must be tangent to the constraint set
    if np.linalg.norm(constraint @ gauge) > 1e-10 * max(1.0, np.linalg.norm(constraint) * np.linalg.norm(gauge)):
        raise DegenerateConfiguration("gauge orbit is not tangent to b c = 0")

    rc = numerical_rank(constraint, tol)
    rg = numerical_rank(gauge, tol)
    if rc != k * k or rg != 2 * k * k:
        raise DegenerateConfiguration(f"rank instability: constraint {rc}, gauge {rg}")
    measured = 2 * (2 * k * r - rc - rg)
    return DimensionCheck(k, r, rc, rg, measured)


# --- JSON parsing ------------------------------------------------------------------


def _parse_complex_matrix(rows, shape) -> np.ndarray:
    a = np.zeros(shape, complex)
    if shape[0] == 0 or shape[1] == 0:
        return a
    for i, row in enumerate(rows):
        for j, entry in enumerate(row):
            if isinstance(entry, (list, tuple)):
                re_, im_ = entry
                a[i, j] = complex(float(re_), float(im_))
            else:
                a[i, j] = complex(entry)
    return a


def config_from_json(data: dict) -> MonadConfig:
    k, r = int(data["k"]), int(data["r"])
    shapes = {"a1": (k, k), "a2": (k, k), "d": (k, k), "b": (k, r), "c": (r, k)}
    mats = {}
    for name, shape in shapes.items():
        if name in data:
            rows = data[name]
            if len(rows) != shape[0] or any(len(row) != shape[1] for row in rows):
                raise ValueError(f"{name} must have shape {shape}")
            mats[name] = _parse_complex_matrix(rows, shape)
        else:
            mats[name] = np.zeros(shape, complex)
    return MonadConfig(k, r, **mats)


def config_to_json(cfg: MonadConfig) -> dict:
    def enc(m):
        return [[[float(z.real), float(z.imag)] for z in row] for row in m]

    return {"k": cfg.k, "r": cfg.r, **{n: enc(m) for n, m in zip(("a1", "a2", "d", "b", "c"), cfg.matrices())}}
