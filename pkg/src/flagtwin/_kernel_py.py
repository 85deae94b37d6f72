"""Pure-Python bitset kernels for face enumeration.

These are the hot inner loops of the package: clique enumeration, the
odd-triangle face rule, separated-deleted-join pair enumeration, and the
construction-equivalence sweep.  `flagtwin._speedups` is a compiled twin with
identical semantics; `flagtwin.kernels` picks the backend at import time.

Masks are plain ints (bit v = vertex v), so this backend works for any n.
Enumeration order is depth-first over ascending vertex ids, which yields
faces in lexicographic order of their sorted vertex tuples within each size.
"""

from __future__ import annotations


def _closed_neighborhood(adj, mask: int) -> int:
    closed = mask
    m = mask
    while m:
        low = m & -m
        closed |= adj[low.bit_length() - 1]
        m ^= low
    return closed


def is_clique(adj, mask: int) -> bool:
    m = mask
    while m:
        low = m & -m
        v = low.bit_length() - 1
        if adj[v] & mask != mask ^ low:
            return False
        m ^= low
    return True


def _extend_cliques(adj, mask: int, size: int, cand: int, max_size: int, by_size) -> None:
    m = cand
    while m:
        low = m & -m
        v = low.bit_length() - 1
        m ^= low
        nmask = mask | low
        by_size[size + 1].append(nmask)
        if size + 1 < max_size:
            ncand = cand & adj[v] & -(low << 1)
            if ncand:
                _extend_cliques(adj, nmask, size + 1, ncand, max_size, by_size)


def clique_masks_within(adj, allowed: int, max_size: int) -> list[list[int]]:
    """Cliques with all vertices inside `allowed`, grouped by size (0..max_size)."""
    by_size = [[] for _ in range(max_size + 1)]
    by_size[0].append(0)
    if max_size >= 1:
        m = allowed
        while m:
            low = m & -m
            v = low.bit_length() - 1
            m ^= low
            by_size[1].append(low)
            if max_size >= 2:
                cand = allowed & adj[v] & -(low << 1)
                if cand:
                    _extend_cliques(adj, low, 1, cand, max_size, by_size)
    return by_size


def clique_masks(adj, n: int, max_size: int) -> list[list[int]]:
    """All cliques grouped by size; index 0 holds the empty clique."""
    return clique_masks_within(adj, (1 << n) - 1, max_size)


def _odd_mask(adj, a: int, b: int) -> int:
    """Vertices w such that {a, b, w} spans an odd number of graph edges.

    May carry junk at bits a, b and above bit n; callers mask it.
    """
    m = adj[a] ^ adj[b]
    if adj[a] >> b & 1:
        m = ~m
    return m


def _extend_odd(adj, verts, mask: int, cand: int, max_card: int, by_card, full: int) -> None:
    m = cand
    while m:
        low = m & -m
        v = low.bit_length() - 1
        m ^= low
        nmask = mask | low
        by_card[len(verts) + 1].append(nmask)
        if len(verts) + 1 < max_card:
            ncand = cand & -(low << 1)
            for x in verts:
                ncand &= _odd_mask(adj, x, v)
            ncand &= full
            if ncand:
                _extend_odd(adj, verts + [v], nmask, ncand, max_card, by_card, full)


def odd_face_masks(adj, n: int, max_card: int) -> list[list[int]]:
    """Faces of the odd-triangle complex grouped by cardinality (1..max_card).

    The 1-skeleton is complete; a triple is a face iff it spans an odd number
    (1 or 3) of graph edges; larger sets are faces iff all their triples are.
    """
    by_card = [[] for _ in range(max_card + 1)]
    full = (1 << n) - 1
    if max_card >= 1:
        for v in range(n):
            by_card[1].append(1 << v)
    if max_card >= 2:
        for a in range(n):
            for b in range(a + 1, n):
                pair = (1 << a) | (1 << b)
                by_card[2].append(pair)
                if max_card >= 3:
                    cand = _odd_mask(adj, a, b) & -(1 << (b + 1)) & full
                    if cand:
                        _extend_odd(adj, [a, b], pair, cand, max_card, by_card, full)
    return by_card


def sdj_pair_masks(adj, n: int, max_card: int) -> list[list[tuple[int, int]]]:
    """Separated-deleted-join faces as (minus clique, plus clique) mask pairs.

    Pairs are disjoint cliques with no graph edge across; grouped by total
    cardinality 1..max_card.  Either side may be empty (not both).
    """
    by_card = [[] for _ in range(max_card + 1)]
    full = (1 << n) - 1
    sigmas = clique_masks(adj, n, max_card)
    for s_size, side in enumerate(sigmas):
        for sigma in side:
            allowed = full & ~_closed_neighborhood(adj, sigma)
            taus = clique_masks_within(adj, allowed, max_card - s_size)
            for t_size, tside in enumerate(taus):
                if s_size + t_size == 0:
                    continue
                bucket = by_card[s_size + t_size]
                for tau in tside:
                    bucket.append((sigma, tau))
    return by_card


def _count_cliques_within(adj, allowed: int, max_size: int) -> list[int]:
    counts = [0] * (max_size + 1)
    counts[0] = 1

    def rec(size: int, cand: int) -> None:
        m = cand
        while m:
            low = m & -m
            v = low.bit_length() - 1
            m ^= low
            counts[size + 1] += 1
            if size + 1 < max_size:
                ncand = cand & adj[v] & -(low << 1)
                if ncand:
                    rec(size + 1, ncand)

    if max_size >= 1:
        rec(0, allowed)
    return counts


def sdj_face_counts(adj, n: int, max_card: int) -> list[int]:
    """Face counts of the separated deleted join per cardinality 1..max_card."""
    counts = [0] * (max_card + 1)
    full = (1 << n) - 1
    sigmas = clique_masks(adj, n, max_card)
    for s_size, side in enumerate(sigmas):
        for sigma in side:
            allowed = full & ~_closed_neighborhood(adj, sigma)
            tcounts = _count_cliques_within(adj, allowed, max_card - s_size)
            for t_size, c in enumerate(tcounts):
                if s_size + t_size > 0:
                    counts[s_size + t_size] += c
    return counts[1:]


def splits_into_two_cliques(adj, mask: int) -> bool:
    """True iff the vertex set splits into two disjoint cliques with no edge across."""
    if mask == 0:
        return True
    a_low = mask & -mask
    rest = mask ^ a_low
    sub = rest
    while True:
        sigma = a_low | sub
        tau = mask ^ sigma
        if is_clique(adj, sigma) and is_clique(adj, tau):
            crossing = False
            m = sigma
            while m:
                low = m & -m
                if adj[low.bit_length() - 1] & tau:
                    crossing = True
                    break
                m ^= low
            if not crossing:
                return True
        if sub == 0:
            return False
        sub = (sub - 1) & rest


def equivalence_check(adj, n: int, max_card: int) -> bool:
    """One graph's construction-equivalence check at the mask level.

    Compares the odd-triangle face set with the involution quotient of the
    separated deleted join (the union mask of each clique pair), and
    cross-checks every face by direct two-clique bipartition search.
    """
    direct = set()
    for bucket in odd_face_masks(adj, n, max_card):
        direct.update(bucket)
    quotient = set()
    for bucket in sdj_pair_masks(adj, n, max_card):
        for sigma, tau in bucket:
            if sigma & tau:
                return False
            quotient.add(sigma | tau)
    if direct != quotient:
        return False
    for mask in direct:
        if not splits_into_two_cliques(adj, mask):
            return False
    return True


def exhaustive_equivalence(n: int) -> int:
    """Number of graphs on n vertices failing the equivalence check (all 2^C(n,2))."""
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    failures = 0
    for bits in range(1 << len(pairs)):
        adj = [0] * n
        rem = bits
        while rem:
            low = rem & -rem
            u, v = pairs[low.bit_length() - 1]
            adj[u] |= 1 << v
            adj[v] |= 1 << u
            rem ^= low
        if not equivalence_check(adj, n, n):
            failures += 1
    return failures
