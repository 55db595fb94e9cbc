"""Exact sparse linear algebra over Q and Z.

Vectors are sparse ``dict[int, int]`` maps from column index to a nonzero
integer.  Rational elimination is done fraction-free: every stored row is a
primitive integer vector, which represents the same line over Q and keeps
entries small for the sign-pattern matrices that show up in practice.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

SparseVec = Dict[int, int]


def _content(*vecs: Mapping[int, int]) -> int:
    g = 0
    for vec in vecs:
        for v in vec.values():
            g = gcd(g, v)
            if g == 1:
                return 1
    return g


def _scale_down(vec: SparseVec, g: int) -> SparseVec:
    return {c: v // g for c, v in vec.items()}


def _axpy(a: int, x: Mapping[int, int], b: int, y: Mapping[int, int]) -> SparseVec:
    """Return a*x + b*y with zero entries dropped."""
    out = {c: a * v for c, v in x.items()} if a != 1 else dict(x)
    for c, v in y.items():
        w = out.get(c, 0) + b * v
        if w:
            out[c] = w
        else:
            out.pop(c, None)
    return out


class Echelon:
    """Incremental row echelon form over Q.

    Rows are fed one at a time with :meth:`add`.  When ``track`` is set, each
    stored row carries an integer combination of the input rows that produces
    it, and every input row that reduces to zero yields a linear dependency.
    """

    def __init__(self, track: bool = False):
        self.track = track
        self.pivots: Dict[int, Tuple[SparseVec, SparseVec]] = {}
        self.dependencies: List[SparseVec] = []
        self._count = 0

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _reduce(self, row: SparseVec, combo: SparseVec) -> Tuple[SparseVec, SparseVec]:
        while row:
            col = min(row)
            pivot = self.pivots.get(col)
            if pivot is None:
                break
            prow, pcombo = pivot
            a, b = prow[col], row[col]
            g = gcd(a, b)
            fa, fb = a // g, b // g
            row = _axpy(fa, row, -fb, prow)
            if self.track:
                combo = _axpy(fa, combo, -fb, pcombo)
            g = _content(row, combo) if self.track else _content(row)
            if g > 1:
                row = _scale_down(row, g)
                if self.track:
                    combo = _scale_down(combo, g)
        return row, combo

    def add(self, row: Mapping[int, int]) -> bool:
        """Insert a row; return True when it raised the rank."""
        index = self._count
        self._count += 1
        combo = {index: 1} if self.track else {}
        row, combo = self._reduce({c: v for c, v in row.items() if v}, combo)
        if not row:
            if self.track:
                self.dependencies.append(combo)
            return False
        col = min(row)
        if row[col] < 0:
            row = {c: -v for c, v in row.items()}
            combo = {c: -v for c, v in combo.items()}
        self.pivots[col] = (row, combo)
        return True

    def reduce(self, row: Mapping[int, int]) -> Tuple[SparseVec, Optional[SparseVec]]:
        """Reduce ``row`` against the stored pivots without inserting it.

        Returns ``(remainder, combo)``.  With tracking on, ``combo`` is keyed by
        input row index plus the special key ``-1`` holding the multiplier of
        ``row`` itself, so that ``combo[-1]*row + sum(combo[j]*v_j) == remainder``.
        """
        combo = {-1: 1} if self.track else {}
        rem, combo = self._reduce({c: v for c, v in row.items() if v}, combo)
        return rem, (combo if self.track else None)

    def rows(self, reduced: bool = True) -> List[SparseVec]:
        """Stored rows in pivot order, optionally fully back-reduced."""
        cols = sorted(self.pivots)
        rows = {c: self.pivots[c][0] for c in cols}
        if reduced:
            for pc in reversed(cols):
                prow = rows[pc]
                for oc in cols:
                    if oc >= pc:
                        break
                    orow = rows[oc]
                    b = orow.get(pc)
                    if not b:
                        continue
                    a = prow[pc]
                    g = gcd(a, b)
                    new = _axpy(a // g, orow, -(b // g), prow)
                    h = _content(new)
                    rows[oc] = _scale_down(new, h) if h > 1 else new
        return [rows[c] for c in cols]


def connected_blocks(vectors: Sequence[Mapping[int, int]]) -> List[List[int]]:
    """Group vector indices into blocks that share no columns.

    Zero vectors form singleton blocks.  A matrix whose rows are permuted
    into these blocks is block diagonal, so rank and dependencies can be
    computed block by block.
    """
    parent: Dict[int, int] = {}

    def find(x: int) -> int:
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    owner: List[Optional[int]] = []
    for vec in vectors:
        cols = list(vec)
        if not cols:
            owner.append(None)
            continue
        for c in cols:
            parent.setdefault(c, c)
        r0 = find(cols[0])
        for c in cols[1:]:
            rc = find(c)
            if rc != r0:
                parent[rc] = r0
        owner.append(cols[0])

    groups: Dict[object, List[int]] = {}
    for i, col in enumerate(owner):
        key = ("zero", i) if col is None else find(col)
        groups.setdefault(key, []).append(i)
    return list(groups.values())


def rank(vectors: Sequence[Mapping[int, int]]) -> int:
    """Exact rank over Q."""
    total = 0
    for block in connected_blocks(vectors):
        if len(block) == 1:
            total += 1 if vectors[block[0]] else 0
            continue
        ech = Echelon()
        for i in block:
            ech.add(vectors[i])
        total += ech.rank
    return total


def row_basis(vectors: Sequence[Mapping[int, int]]) -> List[SparseVec]:
    """Reduced echelon basis (primitive integer rows) of the Q-span."""
    out: List[SparseVec] = []
    for block in connected_blocks(vectors):
        ech = Echelon()
        for i in block:
            ech.add(vectors[i])
        out.extend(ech.rows(reduced=True))
    out.sort(key=min)
    return out


def dependencies(vectors: Sequence[Mapping[int, int]]) -> List[SparseVec]:
    """Basis of {x : sum_j x_j * vectors[j] = 0} over Q, as primitive integer vectors."""
    out: List[SparseVec] = []
    for block in connected_blocks(vectors):
        ech = Echelon(track=True)
        for i in block:
            ech.add(vectors[i])
        for dep in ech.dependencies:
            vec = {block[j]: v for j, v in dep.items()}
            g = _content(vec)
            out.append(_scale_down(vec, g) if g > 1 else vec)
    out.sort(key=lambda v: max(v))
    return out


def solve_rational(
    vectors: Sequence[Mapping[int, int]], target: Mapping[int, int]
) -> Optional[Tuple[int, SparseVec]]:
    """Find ``(den, x)`` with ``den*target == sum_j x_j * vectors[j]``, or None."""
    ech = Echelon(track=True)
    for v in vectors:
        ech.add(v)
    rem, combo = ech.reduce(target)
    if rem:
        return None
    assert combo is not None
    # combo[-1]*target + sum(combo[j]*v_j) == 0
    den = combo.pop(-1)
    if den < 0:
        den = -den
        combo = {j: -v for j, v in combo.items()}
    x = {j: -v for j, v in combo.items() if v}
    return den, x


def _egcd(a: int, b: int) -> Tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        qt, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - qt * x1
        y0, y1 = y1, y0 - qt * y1
    return a, x0, y0


def solve_integer(
    vectors: Sequence[Mapping[int, int]], target: Mapping[int, int]
) -> Optional[SparseVec]:
    """Find integer ``x`` with ``sum_j x_j * vectors[j] == target``, or None.

    Hermite-style elimination on the lattice spanned by ``vectors``: pivots
    are combined with extended gcd steps (unimodular), so the stored rows
    always generate the same Z-lattice.
    """
    pivots: Dict[int, Tuple[SparseVec, SparseVec]] = {}
    for j, v in enumerate(vectors):
        row = {c: x for c, x in v.items() if x}
        combo: SparseVec = {j: 1}
        while row:
            col = min(row)
            if col not in pivots:
                if row[col] < 0:
                    row = {c: -x for c, x in row.items()}
                    combo = {c: -x for c, x in combo.items()}
                pivots[col] = (row, combo)
                break
            prow, pcombo = pivots[col]
            a, b = prow[col], row[col]
            g, u, w = _egcd(a, b)
            if g < 0:
                g, u, w = -g, -u, -w
            new_p = _axpy(u, prow, w, row)
            new_pc = _axpy(u, pcombo, w, combo)
            row = _axpy(a // g, row, -(b // g), prow)
            combo = _axpy(a // g, combo, -(b // g), pcombo)
            pivots[col] = (new_p, new_pc)

    rem = {c: x for c, x in target.items() if x}
    sol: SparseVec = {}
    while rem:
        col = min(rem)
        if col not in pivots:
            return None
        prow, pcombo = pivots[col]
        qt, r = divmod(rem[col], prow[col])
        if r:
            return None
        rem = _axpy(1, rem, -qt, prow)
        sol = _axpy(1, sol, qt, pcombo)
    return sol


def smith_invariants(matrix: Sequence[Sequence[int]]) -> List[int]:
    """Nonzero invariant factors d1 | d2 | ... of an integer matrix."""
    a = [list(map(int, row)) for row in matrix]
    m = len(a)
    n = len(a[0]) if m else 0
    diag: List[int] = []
    t = 0
    while t < min(m, n):
        nz = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        a[t], a[pi] = a[pi], a[t]
        for row in a:
            row[t], row[pj] = row[pj], row[t]
        while True:
            p = a[t][t]
            done = True
            for i in range(t + 1, m):
                if a[i][t]:
                    qt = a[i][t] // p
                    a[i] = [x - qt * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        a[t], a[i] = a[i], a[t]
                        done = False
                        break
            if not done:
                continue
            for j in range(t + 1, n):
                if a[t][j]:
                    qt = a[t][j] // p
                    for row in a:
                        row[j] -= qt * row[t]
                    if a[t][j]:
                        for row in a:
                            row[t], row[j] = row[j], row[t]
                        done = False
                        break
            if not done:
                continue
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
        diag.append(abs(a[t][t]))
        t += 1
    return diag


def fraction_vector(vec: Mapping[int, int], den: int) -> Dict[int, Fraction]:
    return {c: Fraction(v, den) for c, v in vec.items()}


def dense_to_sparse(rows: Iterable[Sequence[int]]) -> List[SparseVec]:
    return [{j: v for j, v in enumerate(row) if v} for row in rows]
