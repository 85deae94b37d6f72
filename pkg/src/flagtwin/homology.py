"""Exact boundary matrices, rational Betti numbers, and integer homology.

Two independent code paths compute ranks:

* `betti_q` uses integer-preserving (fraction-free) column elimination with
  unimodular gcd combinations, and
* `integer_homology` diagonalizes via Smith normal form (unit-pivot peeling
  followed by a dense minimal-pivot diagonalization), which also yields the
  torsion coefficients.

Both run on arbitrary-precision integers; coefficients are never rounded.
Boundary conventions: faces are sorted vertex tuples, the entry for deleting
position j of a column face is (-1)^j, and H_0 is unreduced by default
(beta_0 counts connected components; pass reduced=True for the augmented
convention).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Optional, TextIO

from .complexes import Complex
from .errors import DimensionError, TruncatedComplexError


@dataclass(frozen=True)
class BoundaryMatrix:
    """Sparse signed incidence matrix from k-faces (columns) to (k-1)-faces (rows)."""

    k: int
    n_rows: int
    n_cols: int
    cols: tuple[tuple[tuple[int, int], ...], ...]

    @property
    def nnz(self) -> int:
        return sum(len(c) for c in self.cols)

    def column_dicts(self) -> list[dict[int, int]]:
        return [dict(col) for col in self.cols]

    def dense(self) -> list[list[int]]:
        out = [[0] * self.n_cols for _ in range(self.n_rows)]
        for j, col in enumerate(self.cols):
            for i, v in col:
                out[i][j] = v
        return out


def boundary_matrix(c: Complex, k: int) -> BoundaryMatrix:
    """Boundary operator from k-chains to (k-1)-chains; deterministic given
    the complex's lexicographic face indexing."""
    if not 1 <= k <= c.max_dim:
        raise DimensionError(f"k must lie in [1, {c.max_dim}], got {k}")
    lower_index = c._indices[k - 1]
    cols = []
    for f in c.faces(k):
        entries = []
        for j in range(len(f)):
            sub = f[:j] + f[j + 1 :]
            entries.append((lower_index[sub], -1 if j % 2 else 1))
        entries.sort()
        cols.append(tuple(entries))
    return BoundaryMatrix(k, c.face_count(k - 1), c.face_count(k), tuple(cols))


def write_matrix(m: BoundaryMatrix, out: TextIO) -> None:
    """Coordinate text format: "rows cols nnz" then "i j v" lines (column major)."""
    out.write(f"{m.n_rows} {m.n_cols} {m.nnz}\n")
    for j, col in enumerate(m.cols):
        for i, v in col:
            out.write(f"{i} {j} {v}\n")


def compose_is_zero(outer: BoundaryMatrix, inner: BoundaryMatrix) -> bool:
    """Entrywise check that outer . inner = 0 (the chain-complex identity)."""
    if outer.n_cols != inner.n_rows:
        raise DimensionError("boundary matrices do not compose")
    outer_cols = outer.column_dicts()
    for col in inner.cols:
        acc: dict[int, int] = {}
        for i, v in col:
            for r, w in outer_cols[i].items():
                acc[r] = acc.get(r, 0) + v * w
        if any(acc.values()):
            return False
    return True


# ---------------------------------------------------------------- exact ranks


def _axpy(target: dict[int, int], source: dict[int, int], factor: int) -> None:
    if factor == 0:
        return
    for r, v in source.items():
        nv = target.get(r, 0) + factor * v
        if nv:
            target[r] = nv
        else:
            target.pop(r, None)


def _combine(a: dict[int, int], ca: int, b: dict[int, int], cb: int) -> dict[int, int]:
    out: dict[int, int] = {}
    for r, v in a.items():
        nv = ca * v
        if nv:
            out[r] = nv
    _axpy(out, b, cb)
    return out


def exact_rank(columns: list[dict[int, int]], n_rows: int) -> int:
    """Rank over Q of an integer matrix by fraction-free column elimination.

    Columns are reduced against stored pivot columns at their maximal row;
    non-divisible entries are handled by a unimodular gcd combination, so all
    arithmetic stays in the integers and the rank is exact.
    """
    pivots: dict[int, dict[int, int]] = {}
    rank = 0
    for col in columns:
        col = {r: v for r, v in col.items() if v}
        while col:
            r = max(col)
            if r not in pivots:
                pivots[r] = col
                rank += 1
                break
            other = pivots[r]
            a, b = col[r], other[r]
            if a % b == 0:
                _axpy(col, other, -(a // b))
            else:
                g, x, y = _ext_gcd(b, a)
                pivots[r] = _combine(other, x, col, y)
                col = _combine(col, b // g, other, -(a // g))
        # empty column: linearly dependent, contributes nothing
    return rank


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """g, x, y with x*a + y*b = g = gcd(a, b)."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def rank_of_boundary(m: BoundaryMatrix) -> int:
    return exact_rank(m.column_dicts(), m.n_rows)


# ---------------------------------------------------------------- Smith normal form


def _peel_unit_pivots(columns: list[dict[int, int]], n_rows: int) -> tuple[int, list[list[int]]]:
    """Eliminate rows/columns at +-1 pivots; return (#peeled, dense residual).

    Pivot rows are taken shortest-first through a lazy heap (stale entries are
    re-validated on pop), which keeps fill-in low for boundary matrices.
    """
    import heapq

    rows: dict[int, dict[int, int]] = {}
    for j, col in enumerate(columns):
        for r, v in col.items():
            if v:
                rows.setdefault(r, {})[j] = v
    col_rows: dict[int, set[int]] = {}
    for r, row in rows.items():
        for j in row:
            col_rows.setdefault(j, set()).add(r)
    heap = [(len(row), r) for r, row in rows.items()]
    heapq.heapify(heap)
    peeled = 0
    while heap:
        size, r = heapq.heappop(heap)
        row = rows.get(r)
        if row is None:
            continue
        if len(row) != size:
            heapq.heappush(heap, (len(row), r))
            continue
        best = None
        for j, v in row.items():
            if v == 1 or v == -1:
                key = (len(col_rows[j]), j)
                if best is None or key < best[0]:
                    best = (key, j, v)
        if best is None:
            continue  # row has no unit entry now; it may gain one later (requeued on change)
        _, j, v = best
        pivot_row = rows.pop(r)
        for jj in pivot_row:
            col_rows[jj].discard(r)
        for rr in list(col_rows.get(j, ())):
            a = rows[rr].pop(j, 0)
            if a:
                factor = -a * v  # v in {1, -1}: divide by v == multiply by v
                for jj, w in pivot_row.items():
                    if jj == j:
                        continue
                    nv = rows[rr].get(jj, 0) + factor * w
                    if nv:
                        rows[rr][jj] = nv
                        col_rows.setdefault(jj, set()).add(rr)
                    else:
                        rows[rr].pop(jj, None)
                        col_rows[jj].discard(rr)
            if rows[rr]:
                heapq.heappush(heap, (len(rows[rr]), rr))
            else:
                del rows[rr]
        col_rows.pop(j, None)
        peeled += 1
    live_rows = sorted(rows)
    live_cols = sorted({j for row in rows.values() for j in row})
    col_pos = {j: i for i, j in enumerate(live_cols)}
    residual = [[0] * len(live_cols) for _ in live_rows]
    for i, r in enumerate(live_rows):
        for j, v in rows[r].items():
            residual[i][col_pos[j]] = v
    return peeled, residual


def _dense_snf(mat: list[list[int]]) -> list[int]:
    """Invariant factors (positive) of a dense integer matrix, textbook style:
    move a minimal-magnitude entry to the pivot, reduce its row and column by
    remainders until it divides everything it sees, clear, recurse."""
    mat = [row[:] for row in mat]
    factors: list[int] = []
    top = 0
    n_rows = len(mat)
    n_cols = len(mat[0]) if mat else 0
    while True:
        best = None
        for i in range(top, n_rows):
            for j in range(top, n_cols):
                v = mat[i][j]
                if v and (best is None or abs(v) < abs(mat[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        mat[top], mat[bi] = mat[bi], mat[top]
        for row in mat:
            row[top], row[bj] = row[bj], row[top]
        while True:
            pivot = mat[top][top]
            moved = False
            for i in range(top + 1, n_rows):
                if mat[i][top]:
                    q = mat[i][top] // pivot
                    for j in range(top, n_cols):
                        mat[i][j] -= q * mat[top][j]
                    if mat[i][top]:  # remainder became the smaller entry
                        mat[top], mat[i] = mat[i], mat[top]
                        moved = True
                        break
            if moved:
                continue
            for j in range(top + 1, n_cols):
                if mat[top][j]:
                    q = mat[top][j] // pivot
                    for i in range(top, n_rows):
                        mat[i][j] -= q * mat[i][top]
                    if mat[top][j]:
                        for i in range(top, n_rows):
                            mat[i][top], mat[i][j] = mat[i][j], mat[i][top]
                        moved = True
                        break
            if not moved:
                break
        factors.append(abs(mat[top][top]))
        top += 1
        if top >= n_rows or top >= n_cols:
            break
    return factors


def smith_invariant_factors(columns: list[dict[int, int]], n_rows: int) -> list[int]:
    """Invariant factors of an integer matrix, in divisibility order.

    Unit pivots (the bulk, for boundary matrices) are peeled sparsely first;
    the dense core diagonalization only sees the small residual.
    """
    peeled, residual = _peel_unit_pivots(columns, n_rows)
    factors = [1] * peeled + ([f for f in _dense_snf(residual)] if residual else [])
    factors = [f for f in factors if f != 0]
    # enforce the divisibility chain d_i | d_{i+1}
    changed = True
    while changed:
        changed = False
        factors.sort()
        for i in range(len(factors) - 1):
            a, b = factors[i], factors[i + 1]
            if b % a != 0:
                g = gcd(a, b)
                factors[i], factors[i + 1] = g, a * b // g
                changed = True
    return factors


# ---------------------------------------------------------------- homology groups


@dataclass(frozen=True)
class HomologyGroup:
    """Integer homology in one dimension: free rank plus torsion coefficients."""

    dim: int
    betti: int
    torsion: tuple[int, ...]
    truncated: bool = False


def _rank_down(c: Complex, k: int, reduced: bool, use_snf: bool) -> int:
    """Rank of the boundary leaving dimension k (the augmented map for k = 0)."""
    if k == 0:
        return 1 if (reduced and c.face_count(0) > 0) else 0
    m = boundary_matrix(c, k)
    if use_snf:
        return len(smith_invariant_factors(m.column_dicts(), m.n_rows))
    return rank_of_boundary(m)


def betti_q(c: Complex, k: int, reduced: bool = False, allow_truncated: bool = False) -> int:
    """Rational Betti number beta_k = f_k - rank d_k - rank d_(k+1), ranks by
    fraction-free elimination.

    Needs faces up to dimension k+1; if the complex was cut off at max_dim = k
    the upper boundary is unknowable and TruncatedComplexError is raised
    unless allow_truncated (the value then refers to the truncated complex).
    """
    if k < 0 or k > c.max_dim:
        raise DimensionError(f"k must lie in [0, {c.max_dim}], got {k}")
    if k == c.max_dim and not allow_truncated:
        raise TruncatedComplexError(
            f"complex truncated at max_dim={c.max_dim}: rank of d_{k + 1} unknowable"
        )
    rank_down = _rank_down(c, k, reduced, use_snf=False)
    rank_up = rank_of_boundary(boundary_matrix(c, k + 1)) if k + 1 <= c.max_dim else 0
    return c.face_count(k) - rank_down - rank_up


def integer_homology(c: Complex, k: int, reduced: bool = False) -> HomologyGroup:
    """H_k with integer coefficients via Smith normal form of d_(k+1).

    Torsion coefficients are the invariant factors exceeding 1, in
    divisibility order.  If the complex is truncated at dimension k the
    result is flagged and treats d_(k+1) as zero.
    """
    if k < 0 or k > c.max_dim:
        raise DimensionError(f"k must lie in [0, {c.max_dim}], got {k}")
    truncated = k == c.max_dim
    rank_down = _rank_down(c, k, reduced, use_snf=True)
    if truncated:
        rank_up = 0
        torsion: tuple[int, ...] = ()
    else:
        m = boundary_matrix(c, k + 1)
        factors = smith_invariant_factors(m.column_dicts(), m.n_rows)
        rank_up = len(factors)
        torsion = tuple(f for f in factors if f > 1)
    betti = c.face_count(k) - rank_down - rank_up
    return HomologyGroup(k, betti, torsion, truncated)


@dataclass(frozen=True)
class BettiProfile:
    """Homology for dimensions 0..max_k plus consistency bookkeeping.

    euler_consistent is None when max_k stops below the complex dimension
    (the alternating sums then run over different ranges and the identity is
    not checkable)."""

    groups: tuple[HomologyGroup, ...]
    euler_from_faces: int
    euler_from_betti: int
    euler_consistent: Optional[bool]
    morse_lower_bounds: tuple[int, ...]  # f_k - f_(k+1) - f_(k-1), per k


def betti_profile(c: Complex, max_k: int, reduced: bool = False) -> BettiProfile:
    """integer_homology for k = 0..max_k plus the Euler consistency check.

    Requires max_dim >= max_k + 1 so no group is truncated.  The Euler check
    compares the alternating face-count sum (over all stored dimensions) with
    the alternating Betti sum and is only meaningful when max_k covers the
    full dimension of the complex.
    """
    if max_k + 1 > c.max_dim:
        raise TruncatedComplexError(
            f"betti_profile up to {max_k} needs max_dim >= {max_k + 1}, have {c.max_dim}"
        )
    groups = tuple(integer_homology(c, k, reduced) for k in range(max_k + 1))
    f = [c.face_count(k) for k in range(c.max_dim + 1)]
    euler_faces = sum((-1) ** k * fk for k, fk in enumerate(f))
    if reduced:
        euler_faces -= 1
    euler_betti = sum((-1) ** g.dim * g.betti for g in groups)
    bounds = []
    for k in range(max_k + 1):
        f_k = f[k] if k < len(f) else 0
        f_up = f[k + 1] if k + 1 < len(f) else 0
        f_down = f[k - 1] if k >= 1 else 0
        bounds.append(f_k - f_up - f_down)
    consistent = euler_faces == euler_betti if c.dim <= max_k else None
    return BettiProfile(groups, euler_faces, euler_betti, consistent, tuple(bounds))
