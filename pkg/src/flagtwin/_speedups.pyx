# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of flagtwin._kernel_py (that module documents the semantics).

Masks are machine words, so this backend is limited to ground sets of at most
63 vertices; flagtwin.kernels falls back to the Python twin beyond that.
"""

from libc.stdint cimport uint64_t, uint8_t
from libc.stdlib cimport malloc, free
from libc.string cimport memset

cdef extern from *:
    """
    static inline int ctz64(unsigned long long x) { return __builtin_ctzll(x); }
    static inline int popcount64(unsigned long long x) { return __builtin_popcountll(x); }
    """
    int ctz64(unsigned long long x) noexcept nogil
    int popcount64(unsigned long long x) noexcept nogil


cdef uint64_t _hi_bits(uint64_t low) noexcept nogil:
    # bits strictly above the bit in `low`
    if low >= (<uint64_t>1) << 63:
        return 0
    return ~((low << 1) - 1)


cdef void _load_adj(object adj, uint64_t* out, int n):
    cdef int v
    for v in range(n):
        out[v] = <uint64_t> adj[v]


cdef uint64_t _closed_neighborhood(uint64_t* adj, uint64_t mask) noexcept nogil:
    cdef uint64_t closed = mask, m = mask, low
    while m:
        low = m & (~m + 1)
        closed |= adj[ctz64(low)]
        m ^= low
    return closed


cdef bint _is_clique(uint64_t* adj, uint64_t mask) noexcept nogil:
    cdef uint64_t m = mask, low
    cdef int v
    while m:
        low = m & (~m + 1)
        v = ctz64(low)
        if (adj[v] & mask) != (mask ^ low):
            return 0
        m ^= low
    return 1


# ---------------------------------------------------------------- cliques

cdef void _extend_cliques(uint64_t* adj, uint64_t mask, int size, uint64_t cand,
                          int max_size, list by_size):
    cdef uint64_t m = cand, low, nmask, ncand
    cdef int v
    while m:
        low = m & (~m + 1)
        v = ctz64(low)
        m ^= low
        nmask = mask | low
        (<list> by_size[size + 1]).append(nmask)
        if size + 1 < max_size:
            ncand = cand & adj[v] & _hi_bits(low)
            if ncand:
                _extend_cliques(adj, nmask, size + 1, ncand, max_size, by_size)


cdef list _clique_masks_within(uint64_t* adj, uint64_t allowed, int max_size):
    cdef list by_size = [[] for _ in range(max_size + 1)]
    (<list> by_size[0]).append(0)
    cdef uint64_t m = allowed, low, cand
    cdef int v
    if max_size >= 1:
        while m:
            low = m & (~m + 1)
            v = ctz64(low)
            m ^= low
            (<list> by_size[1]).append(low)
            if max_size >= 2:
                cand = allowed & adj[v] & _hi_bits(low)
                if cand:
                    _extend_cliques(adj, low, 1, cand, max_size, by_size)
    return by_size


def clique_masks_within(adj, allowed, int max_size):
    cdef uint64_t cadj[64]
    _load_adj(adj, cadj, len(adj))
    return _clique_masks_within(cadj, <uint64_t> allowed, max_size)


def clique_masks(adj, int n, int max_size):
    cdef uint64_t cadj[64]
    _load_adj(adj, cadj, n)
    cdef uint64_t full = ((<uint64_t>1) << n) - 1 if n < 64 else <uint64_t> -1
    return _clique_masks_within(cadj, full, max_size)


# ---------------------------------------------------------------- odd-rule faces

cdef uint64_t _odd_mask(uint64_t* adj, int a, int b) noexcept nogil:
    cdef uint64_t m = adj[a] ^ adj[b]
    if (adj[a] >> b) & 1:
        m = ~m
    return m


cdef void _extend_odd(uint64_t* adj, int* verts, int depth, uint64_t mask,
                      uint64_t cand, int max_card, list by_card, uint64_t full):
    cdef uint64_t m = cand, low, nmask, ncand
    cdef int v, i
    while m:
        low = m & (~m + 1)
        v = ctz64(low)
        m ^= low
        nmask = mask | low
        (<list> by_card[depth + 1]).append(nmask)
        if depth + 1 < max_card:
            ncand = cand & _hi_bits(low)
            for i in range(depth):
                ncand &= _odd_mask(adj, verts[i], v)
            ncand &= full
            if ncand:
                verts[depth] = v
                _extend_odd(adj, verts, depth + 1, nmask, ncand, max_card, by_card, full)


def odd_face_masks(adj, int n, int max_card):
    cdef uint64_t cadj[64]
    cdef int verts[64]
    cdef int a, b
    cdef uint64_t pair, cand
    _load_adj(adj, cadj, n)
    cdef uint64_t full = ((<uint64_t>1) << n) - 1
    cdef list by_card = [[] for _ in range(max_card + 1)]
    if max_card >= 1:
        for a in range(n):
            (<list> by_card[1]).append((<uint64_t>1) << a)
    if max_card >= 2:
        for a in range(n):
            for b in range(a + 1, n):
                pair = ((<uint64_t>1) << a) | ((<uint64_t>1) << b)
                (<list> by_card[2]).append(pair)
                if max_card >= 3:
                    cand = _odd_mask(cadj, a, b) & _hi_bits((<uint64_t>1) << b) & full
                    if cand:
                        verts[0] = a
                        verts[1] = b
                        _extend_odd(cadj, verts, 2, pair, cand, max_card, by_card, full)
    return by_card


# ---------------------------------------------------------------- deleted join

def sdj_pair_masks(adj, int n, int max_card):
    cdef uint64_t cadj[64]
    _load_adj(adj, cadj, n)
    cdef uint64_t full = ((<uint64_t>1) << n) - 1
    cdef list by_card = [[] for _ in range(max_card + 1)]
    cdef int s_size, t_size
    cdef uint64_t sigma, allowed
    cdef list sigmas = _clique_masks_within(cadj, full, max_card)
    cdef list taus
    cdef list bucket
    for s_size in range(len(sigmas)):
        for sig_obj in <list> sigmas[s_size]:
            sigma = <uint64_t> sig_obj
            allowed = full & ~_closed_neighborhood(cadj, sigma)
            taus = _clique_masks_within(cadj, allowed, max_card - s_size)
            for t_size in range(len(taus)):
                if s_size + t_size == 0:
                    continue
                bucket = <list> by_card[s_size + t_size]
                for tau_obj in <list> taus[t_size]:
                    bucket.append((sig_obj, tau_obj))
    return by_card


cdef void _count_cliques_rec(uint64_t* adj, int size, uint64_t cand,
                             int max_size, long* counts) noexcept nogil:
    cdef uint64_t m = cand, low, ncand
    cdef int v
    while m:
        low = m & (~m + 1)
        v = ctz64(low)
        m ^= low
        counts[size + 1] += 1
        if size + 1 < max_size:
            ncand = cand & adj[v] & _hi_bits(low)
            if ncand:
                _count_cliques_rec(adj, size + 1, ncand, max_size, counts)


def sdj_face_counts(adj, int n, int max_card):
    cdef uint64_t cadj[64]
    _load_adj(adj, cadj, n)
    cdef uint64_t full = ((<uint64_t>1) << n) - 1
    cdef long* counts = <long*> malloc((max_card + 1) * sizeof(long))
    cdef long* tcounts = <long*> malloc((max_card + 1) * sizeof(long))
    if counts == NULL or tcounts == NULL:
        free(counts); free(tcounts)
        raise MemoryError
    cdef int i, s_size, t_size
    cdef uint64_t sigma, allowed
    for i in range(max_card + 1):
        counts[i] = 0
    cdef list sigmas = _clique_masks_within(cadj, full, max_card)
    try:
        for s_size in range(len(sigmas)):
            for sig_obj in <list> sigmas[s_size]:
                sigma = <uint64_t> sig_obj
                allowed = full & ~_closed_neighborhood(cadj, sigma)
                for i in range(max_card + 1):
                    tcounts[i] = 0
                tcounts[0] = 1
                if max_card - s_size >= 1:
                    _count_cliques_rec(cadj, 0, allowed, max_card - s_size, tcounts)
                for t_size in range(max_card - s_size + 1):
                    if s_size + t_size > 0:
                        counts[s_size + t_size] += tcounts[t_size]
        return [counts[i] for i in range(1, max_card + 1)]
    finally:
        free(counts)
        free(tcounts)


# ---------------------------------------------------------------- equivalence

cdef bint _splits(uint64_t* adj, uint64_t mask) noexcept nogil:
    cdef uint64_t a_low, rest, sub, sigma, tau, m, low
    cdef bint crossing
    if mask == 0:
        return 1
    a_low = mask & (~mask + 1)
    rest = mask ^ a_low
    sub = rest
    while True:
        sigma = a_low | sub
        tau = mask ^ sigma
        if _is_clique(adj, sigma) and _is_clique(adj, tau):
            crossing = 0
            m = sigma
            while m:
                low = m & (~m + 1)
                if adj[ctz64(low)] & tau:
                    crossing = 1
                    break
                m ^= low
            if not crossing:
                return 1
        if sub == 0:
            return 0
        sub = (sub - 1) & rest


def splits_into_two_cliques(adj, mask):
    cdef uint64_t cadj[64]
    _load_adj(adj, cadj, len(adj))
    return bool(_splits(cadj, <uint64_t> mask))


cdef void _mark_odd_rec(uint64_t* adj, int* verts, int depth, uint64_t mask,
                        uint64_t cand, int max_card, uint8_t* seen, uint8_t flag,
                        uint64_t full) noexcept nogil:
    cdef uint64_t m = cand, low, nmask, ncand
    cdef int v, i
    while m:
        low = m & (~m + 1)
        v = ctz64(low)
        m ^= low
        nmask = mask | low
        seen[nmask] |= flag
        if depth + 1 < max_card:
            ncand = cand & _hi_bits(low)
            for i in range(depth):
                ncand &= _odd_mask(adj, verts[i], v)
            ncand &= full
            if ncand:
                verts[depth] = v
                _mark_odd_rec(adj, verts, depth + 1, nmask, ncand, max_card, seen, flag, full)


cdef void _mark_quotient_cliques(uint64_t* adj, uint64_t sigma, int size,
                                 uint64_t cand, int max_size, uint8_t* seen,
                                 uint8_t flag) noexcept nogil:
    # marks sigma | tau for every clique tau inside cand (tau nonempty handled by caller)
    cdef uint64_t m = cand, low, nmask, ncand
    cdef int v
    while m:
        low = m & (~m + 1)
        v = ctz64(low)
        m ^= low
        nmask = sigma | low
        seen[nmask] |= flag
        if size + 1 < max_size:
            ncand = cand & adj[v] & _hi_bits(low)
            if ncand:
                _mark_quotient_cliques(adj, nmask, size + 1, ncand, max_size, seen, flag)


cdef void _mark_sdj_quotient(uint64_t* adj, int n, int max_card, uint8_t* seen,
                             uint8_t flag, uint64_t full, uint64_t* sig_stack,
                             int* sig_sizes) noexcept nogil:
    # enumerate minus cliques sigma (including empty), then plus cliques within
    # the allowed region; mark sigma | tau.
    cdef int top = 0, s_size
    cdef uint64_t sigma, allowed, m, low, nmask, cand
    cdef int v
    # sigma = empty
    sig_stack[top] = 0
    sig_sizes[top] = 0
    top += 1
    while top:
        top -= 1
        sigma = sig_stack[top]
        s_size = sig_sizes[top]
        if sigma:
            seen[sigma] |= flag
        allowed = full & ~_closed_neighborhood(adj, sigma)
        if max_card - s_size >= 1 and allowed:
            _mark_quotient_cliques(adj, sigma, 0, allowed, max_card - s_size, seen, flag)
        # push clique extensions of sigma (lex DFS emulated with an explicit stack)
        if s_size < max_card:
            if sigma == 0:
                cand = full
            else:
                low = (<uint64_t>1) << (63 - _clz_top(sigma))
                cand = full & _hi_bits(low)
                m = sigma
                while m:
                    cand &= adj[ctz64(m & (~m + 1))]
                    m &= m - 1
            m = cand
            while m:
                low = m & (~m + 1)
                m ^= low
                sig_stack[top] = sigma | low
                sig_sizes[top] = s_size + 1
                top += 1


cdef int _clz_top(uint64_t x) noexcept nogil:
    # index helper: count leading zeros so 63 - clz = index of highest set bit
    cdef int c = 0
    cdef uint64_t probe = (<uint64_t>1) << 63
    while probe and not (x & probe):
        probe >>= 1
        c += 1
    return c


cdef bint _equiv_one(uint64_t* adj, int n, int max_card, uint8_t* seen,
                     uint64_t* sig_stack, int* sig_sizes) noexcept nogil:
    cdef uint64_t full = ((<uint64_t>1) << n) - 1
    cdef uint64_t mask, pair, cand
    cdef int a, b
    cdef int verts[64]
    cdef bint ok = 1
    # direct odd-rule faces -> flag 1
    if max_card >= 1:
        for a in range(n):
            seen[(<uint64_t>1) << a] |= 1
    if max_card >= 2:
        for a in range(n):
            for b in range(a + 1, n):
                pair = ((<uint64_t>1) << a) | ((<uint64_t>1) << b)
                seen[pair] |= 1
                if max_card >= 3:
                    cand = _odd_mask(adj, a, b) & _hi_bits((<uint64_t>1) << b) & full
                    if cand:
                        verts[0] = a
                        verts[1] = b
                        _mark_odd_rec(adj, verts, 2, pair, cand, max_card, seen, 1, full)
    # involution quotient of the separated deleted join -> flag 2
    _mark_sdj_quotient(adj, n, max_card, seen, 2, full, sig_stack, sig_sizes)
    for mask in range(1, (<uint64_t>1) << n):
        if popcount64(mask) > max_card:
            continue
        if seen[mask] == 1 or seen[mask] == 2:
            ok = 0
            break
        if seen[mask] == 3 and not _splits(adj, mask):
            ok = 0
            break
    memset(seen, 0, (<size_t>1) << n)
    return ok


def equivalence_check(adj, int n, int max_card):
    if n > 24:
        raise ValueError("compiled equivalence_check supports n <= 24")
    cdef uint64_t cadj[64]
    _load_adj(adj, cadj, n)
    cdef uint8_t* seen = <uint8_t*> malloc((<size_t>1) << n)
    cdef uint64_t* sig_stack = <uint64_t*> malloc((<size_t>1 << n) * sizeof(uint64_t))
    cdef int* sig_sizes = <int*> malloc((<size_t>1 << n) * sizeof(int))
    if seen == NULL or sig_stack == NULL or sig_sizes == NULL:
        free(seen); free(sig_stack); free(sig_sizes)
        raise MemoryError
    memset(seen, 0, (<size_t>1) << n)
    try:
        return bool(_equiv_one(cadj, n, max_card, seen, sig_stack, sig_sizes))
    finally:
        free(seen)
        free(sig_stack)
        free(sig_sizes)


def exhaustive_equivalence(int n):
    if n > 8:
        raise ValueError("exhaustive sweep supported for n <= 8")
    cdef int npairs = n * (n - 1) // 2
    cdef int pu[32]
    cdef int pv[32]
    cdef int i = 0, u, v
    for u in range(n):
        for v in range(u + 1, n):
            pu[i] = u
            pv[i] = v
            i += 1
    cdef uint64_t cadj[64]
    cdef uint8_t* seen = <uint8_t*> malloc((<size_t>1) << n)
    cdef uint64_t* sig_stack = <uint64_t*> malloc((<size_t>1 << n) * sizeof(uint64_t))
    cdef int* sig_sizes = <int*> malloc((<size_t>1 << n) * sizeof(int))
    if seen == NULL or sig_stack == NULL or sig_sizes == NULL:
        free(seen); free(sig_stack); free(sig_sizes)
        raise MemoryError
    memset(seen, 0, (<size_t>1) << n)
    cdef uint64_t bits, rem, low
    cdef long failures = 0
    cdef uint64_t total = (<uint64_t>1) << npairs
    try:
        with nogil:
            for bits in range(total):
                for u in range(n):
                    cadj[u] = 0
                rem = bits
                while rem:
                    low = rem & (~rem + 1)
                    i = ctz64(low)
                    cadj[pu[i]] |= (<uint64_t>1) << pv[i]
                    cadj[pv[i]] |= (<uint64_t>1) << pu[i]
                    rem ^= low
                if not _equiv_one(cadj, n, n, seen, sig_stack, sig_sizes):
                    failures += 1
        return failures
    finally:
        free(seen)
        free(sig_stack)
        free(sig_sizes)
