"""Elementary collapses: greedy free-face reduction and the lifted sequence
that mirrors a base-complex collapse inside its separated deleted join.

A free face is one contained in a unique maximal face; collapsing it removes
the whole interval between the two.  Traces record every (free face, maximal
coface) pair in order and can be replayed with full validity checking.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .complexes import Complex, Face, _from_face_iter
from .errors import LiftBlockedError, ParameterError
from .rng import Rng

Step = tuple[Face, Face]


@dataclass(frozen=True)
class CollapseTrace:
    """Ordered collapse steps, the residual dimension, and whether the run
    halted before reaching a single vertex."""

    steps: tuple[Step, ...]
    final_dim: int
    stuck: bool


def _face_mask(face: Face) -> int:
    m = 0
    for v in face:
        m |= 1 << v
    return m


def _mask_face(mask: int) -> Face:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


class _Working:
    """Mutable face set over bitmasks with free-face queries."""

    def __init__(self, c: Complex):
        self.n = c.n
        self.faces: set[int] = {_face_mask(f) for f in c.all_faces()}

    def ext_vertices(self, mask: int) -> list[int]:
        out = []
        for v in range(self.n):
            if not mask >> v & 1 and (mask | 1 << v) in self.faces:
                out.append(v)
        return out

    def free_coface(self, mask: int) -> int | None:
        """The unique maximal coface if `mask` is free, else None."""
        if mask not in self.faces:
            return None
        ext = self.ext_vertices(mask)
        if not ext:
            return None
        top = mask
        for v in ext:
            top |= 1 << v
        if top in self.faces:
            return top
        return None

    def remove_interval(self, mask: int, top: int) -> None:
        gap = top & ~mask
        sub = gap
        while True:
            self.faces.discard(mask | sub)
            if sub == 0:
                break
            sub = (sub - 1) & gap

    def final_dim(self) -> int:
        return max((m.bit_count() for m in self.faces), default=0) - 1

    def to_complex(self, max_dim: int, signed: bool) -> Complex:
        return _from_face_iter(self.n, (_mask_face(m) for m in self.faces), max_dim, signed)


def collapse_greedy(c: Complex, max_free_dim: int, seed: int) -> tuple[Complex, CollapseTrace]:
    """Repeatedly collapse a free face of dimension <= max_free_dim (chosen
    uniformly among known candidates with the seeded generator) until none
    remains.  stuck means the residual is more than a single vertex."""
    if max_free_dim < 0:
        raise ParameterError("max_free_dim must be nonnegative")
    work = _Working(c)
    rng = Rng(seed)
    max_card = max_free_dim + 1
    pending = sorted(m for m in work.faces if m.bit_count() <= max_card)
    steps: list[Step] = []
    while pending:
        i = rng.below(len(pending))
        pending[i], pending[-1] = pending[-1], pending[i]
        mask = pending.pop()
        top = work.free_coface(mask)
        if top is None:
            continue
        work.remove_interval(mask, top)
        steps.append((_mask_face(mask), _mask_face(top)))
        # freeness can only change for present subsets of the removed star's top
        bits = _mask_face(top)
        for size in range(1, min(max_card, len(bits)) + 1):
            for combo in combinations(bits, size):
                sub = _face_mask(combo)
                if sub in work.faces and work.free_coface(sub) is not None:
                    pending.append(sub)
    residual = work.to_complex(c.max_dim, c.signed)
    stuck = len(work.faces) > 1
    return residual, CollapseTrace(tuple(steps), work.final_dim(), stuck)


def replay_trace(c: Complex, steps: tuple[Step, ...]) -> Complex:
    """Re-apply recorded steps, checking each free face has exactly the
    recorded maximal coface at its removal time."""
    work = _Working(c)
    for face, coface in steps:
        mask = _face_mask(face)
        top = work.free_coface(mask)
        if top is None:
            raise ParameterError(f"step face {face} is not free at replay time")
        if top != _face_mask(coface):
            raise ParameterError(
                f"free face {face} has maximal coface {_mask_face(top)}, trace says {coface}"
            )
        work.remove_interval(mask, top)
    return work.to_complex(c.max_dim, c.signed)


# ---------------------------------------------------------------- lifted collapse


def _decode_plus(face: Face) -> Face:
    return tuple(x // 2 for x in face)


def lifted_collapse(
    join: Complex, inv, f: Face, v: int
) -> tuple[Complex, CollapseTrace]:
    """Mirror an elementary collapse (f, f+{v}) of the base complex inside its
    separated deleted join.

    For each side, every face with that side's part exactly f is collapsed
    into the corresponding face with part f+{v}, taking partners sigma in
    decreasing cardinality.  When some maximal partner is adjacent to v the
    needed coface is not a face, no such mirrored sequence exists, and
    LiftBlockedError is raised naming the partner (see the limitations note
    in the README).  On success the result equals the separated deleted join
    of the reduced base complex, with separation inherited from the ambient
    1-skeleton.
    """
    if not join.signed:
        raise ParameterError("join must carry sign labels")
    if tuple(inv.mapping) != tuple(x ^ 1 for x in range(join.n)):
        raise ParameterError("involution must be the sign swap of the join encoding")
    f = tuple(sorted(f))
    fv = tuple(sorted(f + (v,)))
    if v in f:
        raise ParameterError("v must not already lie in f")
    base_faces: set[Face] = set()
    for g in join.all_faces():
        if all(x % 2 == 1 for x in g):
            base_faces.add(_decode_plus(g))
    if f not in base_faces or fv not in base_faces:
        raise ParameterError("(f, f+{v}) is not an elementary collapse pair: faces missing")
    fset = set(f)
    cofaces = [g for g in base_faces if fset.issubset(g) and g != f]
    if cofaces != [fv] and sorted(cofaces) != [fv]:
        raise ParameterError(
            f"(f, f+{{v}}) is not an elementary collapse pair: cofaces of {f} are {sorted(cofaces)}"
        )
    work = _Working(join)
    steps: list[Step] = []
    for side_parity in (0, 1):  # minus copy first, then plus
        enc_f = _face_mask(tuple(2 * x + side_parity for x in f))
        enc_fv = _face_mask(tuple(2 * x + side_parity for x in fv))
        partners = []
        for mask in work.faces:
            side_part = _side_part(mask, side_parity)
            if side_part == enc_f:
                other = mask ^ enc_f
                if other:
                    partners.append(other)
        partners.sort(key=lambda m: (-m.bit_count(), _mask_face(m)))
        for sigma in partners + [0]:
            low_face = enc_f | sigma
            top_face = enc_fv | sigma
            if top_face not in work.faces:
                raise LiftBlockedError(
                    f"partner {_mask_face(sigma)} admits no coface: "
                    f"{_mask_face(top_face)} is not a face (partner adjacent to {v})"
                )
            maximal = work.free_coface(low_face)
            if maximal != top_face:
                raise LiftBlockedError(
                    f"face {_mask_face(low_face)} is not free with coface {_mask_face(top_face)}"
                )
            work.remove_interval(low_face, top_face)
            steps.append((_mask_face(low_face), _mask_face(top_face)))
    residual = work.to_complex(join.max_dim, join.signed)
    return residual, CollapseTrace(tuple(steps), work.final_dim(), False)


def _side_part(mask: int, parity: int) -> int:
    out = 0
    m = mask
    while m:
        low = m & -m
        x = low.bit_length() - 1
        if x % 2 == parity:
            out |= low
        m ^= low
    return out
