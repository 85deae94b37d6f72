"""Independent brute-force reference implementations used only by tests.

Everything here recomputes quantities from first principles (itertools
enumeration, dense Fraction elimination, recursive textbook SNF) so the
package's optimized paths are checked against genuinely separate code.
"""

from fractions import Fraction
from itertools import combinations

from flagtwin.graphs import Graph


def edges_of(g: Graph) -> set:
    return set(g.edges())


def triangle_count_brute(g: Graph) -> int:
    count = 0
    for i in range(g.n):
        for j in range(i + 1, g.n):
            if not g.has_edge(i, j):
                continue
            for k in range(j + 1, g.n):
                if g.has_edge(i, k) and g.has_edge(j, k):
                    count += 1
    return count


def cliques_brute(g: Graph, max_size: int) -> list:
    out = []
    for s in range(1, max_size + 1):
        for comb in combinations(range(g.n), s):
            if all(g.has_edge(u, v) for u, v in combinations(comb, 2)):
                out.append(comb)
    return out


def odd_faces_brute(g: Graph, max_card: int) -> set:
    """Faces by the literal rule: complete 1-skeleton, odd triples, closure."""
    faces = set()
    for v in range(g.n):
        faces.add((v,))
    if max_card >= 2:
        for pair in combinations(range(g.n), 2):
            faces.add(pair)
    for card in range(3, max_card + 1):
        for comb in combinations(range(g.n), card):
            ok = True
            for tri in combinations(comb, 3):
                m = sum(g.has_edge(a, b) for a, b in combinations(tri, 2))
                if m % 2 == 0:
                    ok = False
                    break
            if ok:
                faces.add(comb)
    return faces


def split_faces_brute(g: Graph, max_card: int) -> set:
    """Faces as vertex sets splitting into two disjoint non-adjacent cliques."""
    faces = set()
    for card in range(1, max_card + 1):
        for comb in combinations(range(g.n), card):
            found = False
            for r in range(0, card + 1):
                if found:
                    break
                for part in combinations(comb, r):
                    a = set(part)
                    b = set(comb) - a
                    if any(not g.has_edge(u, v) for u, v in combinations(sorted(a), 2)):
                        continue
                    if any(not g.has_edge(u, v) for u, v in combinations(sorted(b), 2)):
                        continue
                    if any(g.has_edge(u, v) for u in a for v in b):
                        continue
                    found = True
                    break
            if found:
                faces.add(comb)
    return faces


def sdj_faces_brute(g: Graph, max_dim: int) -> set:
    """Separated-deleted-join faces (encoded 2b / 2b+1) by pair enumeration."""
    cliques = [()] + cliques_brute(g, g.n)
    faces = set()
    for sigma in cliques:
        for tau in cliques:
            if not sigma and not tau:
                continue
            if set(sigma) & set(tau):
                continue
            if any(g.has_edge(a, b) for a in sigma for b in tau):
                continue
            enc = tuple(sorted([2 * v for v in sigma] + [2 * v + 1 for v in tau]))
            if len(enc) - 1 <= max_dim:
                faces.add(enc)
    return faces


def sdj_of_complex_faces(x_faces: set, edges: set, max_dim: int) -> set:
    """Deleted-join reconstruction for an arbitrary complex given as a face
    set, with separation taken against the complex's own edge set."""
    household = {tuple(sorted(f)) for f in x_faces}
    household.add(())
    edge_set = {tuple(sorted(e)) for e in edges}
    out = set()
    for sigma in household:
        for tau in household:
            if not sigma and not tau:
                continue
            if set(sigma) & set(tau):
                continue
            if any(tuple(sorted((a, b))) in edge_set for a in sigma for b in tau):
                continue
            enc = tuple(sorted([2 * v for v in sigma] + [2 * v + 1 for v in tau]))
            if len(enc) - 1 <= max_dim:
                out.add(enc)
    return out


def dense_rank_fraction(rows: list) -> int:
    """Gaussian elimination over Fractions (row echelon), fully independent of
    the package's integer-preserving elimination."""
    mat = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    n_rows = len(mat)
    n_cols = len(mat[0]) if mat else 0
    row = 0
    for col in range(n_cols):
        pivot = None
        for r in range(row, n_rows):
            if mat[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        mat[row], mat[pivot] = mat[pivot], mat[row]
        pv = mat[row][col]
        mat[row] = [x / pv for x in mat[row]]
        for r in range(n_rows):
            if r != row and mat[r][col] != 0:
                f = mat[r][col]
                mat[r] = [x - f * y for x, y in zip(mat[r], mat[row])]
        row += 1
        rank += 1
        if row == n_rows:
            break
    return rank


def snf_naive(rows: list) -> list:
    """Recursive textbook Smith normal form on small dense matrices."""
    mat = [list(r) for r in rows]
    if not mat or not mat[0]:
        return []
    if all(all(x == 0 for x in r) for r in mat):
        return []
    # bring a minimal nonzero entry to (0, 0)
    best = None
    for i, r in enumerate(mat):
        for j, x in enumerate(r):
            if x and (best is None or abs(x) < abs(mat[best[0]][best[1]])):
                best = (i, j)
    bi, bj = best
    mat[0], mat[bi] = mat[bi], mat[0]
    for r in mat:
        r[0], r[bj] = r[bj], r[0]
    while True:
        pivot = mat[0][0]
        dirty = False
        for i in range(1, len(mat)):
            if mat[i][0] % pivot != 0:
                q = mat[i][0] // pivot
                mat[i] = [x - q * y for x, y in zip(mat[i], mat[0])]
                mat[0], mat[i] = mat[i], mat[0]
                dirty = True
                break
        if dirty:
            continue
        for j in range(1, len(mat[0])):
            if mat[0][j] % pivot != 0:
                q = mat[0][j] // pivot
                for r in mat:
                    r[j] -= q * r[0]
                for r in mat:
                    r[0], r[j] = r[j], r[0]
                dirty = True
                break
        if not dirty:
            break
    pivot = mat[0][0]
    for i in range(1, len(mat)):
        q = mat[i][0] // pivot
        mat[i] = [x - q * y for x, y in zip(mat[i], mat[0])]
    for j in range(1, len(mat[0])):
        q = mat[0][j] // pivot
        for r in mat:
            r[j] -= q * r[0]
    rest = [r[1:] for r in mat[1:]]
    factors = [abs(pivot)] + (snf_naive(rest) if rest and rest[0] else [])
    # repair divisibility
    changed = True
    while changed:
        changed = False
        factors.sort()
        for i in range(len(factors) - 1):
            a, b = factors[i], factors[i + 1]
            if b % a:
                from math import gcd

                g = gcd(a, b)
                factors[i], factors[i + 1] = g, a * b // g
                changed = True
    return factors
