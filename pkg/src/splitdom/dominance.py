"""Single and union dominance of split sets on the cube, and minimum covers.

A list of splits dominates ``S`` when the union of their cube parts contains
``S`` intersected with the cube. Union dominance is decided over the cells of
the arrangement formed by the closed sides of the listed splits: each cell is
convex, so it misses the open slab ``S`` iff it sits on one closed side of it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from splitdom.geometry import _frac, mixed_witness, solve_box_lp
from splitdom.rational import format_rational
from splitdom.splits import (
    Region,
    SplitSet,
    evaluate,
    is_cube_empty,
    point_to_record,
)

DEFAULT_CELL_LIMIT = 20


class CellLimitExceeded(ValueError):
    pass


@dataclass(frozen=True)
class DominanceReport:
    dominated: bool
    witness: Optional[tuple[Fraction, ...]] = None
    cells_checked: int = 0
    failing_cell: Optional[tuple[int, ...]] = None

    def __bool__(self) -> bool:
        return self.dominated

    def to_record(self) -> dict:
        rec = {"dominated": self.dominated, "cells_checked": self.cells_checked}
        if self.witness is not None:
            rec["witness"] = point_to_record(self.witness)
        if self.failing_cell is not None:
            rec["failing_cell"] = list(self.failing_cell)
        return rec


def _check_dims(n: int, splits: Iterable[SplitSet]) -> None:
    for t in splits:
        if t.n != n:
            raise ValueError(f"dimension mismatch: {t.n} vs {n}")


def _slab_rows(s: SplitSet):
    """``eta < pi.x < eta + 1`` as two strict rows ``a.x < b``."""
    return [(tuple(-p for p in s.pi), -s.eta), (s.pi, s.eta + 1)]


def _witness(w) -> tuple[Fraction, ...]:
    return tuple(_frac(v) for v in w)


def dominates(s1: SplitSet, s0: SplitSet) -> DominanceReport:
    """Does ``s1`` contain ``s0`` on the cube?

    Containment fails iff ``s0`` meets one of the closed sides of ``s1``
    inside the cube; a point found there is the witness.
    """
    _check_dims(s0.n, [s1])
    if is_cube_empty(s0):
        return DominanceReport(True)
    strict = _slab_rows(s0)
    checked = 0
    for side in s1.complement_sides():
        checked += 1
        w = mixed_witness(s0.n, [side], strict)
        if w is not None:
            return DominanceReport(False, _witness(w), checked)
    return DominanceReport(True, None, checked)


def union_dominates(
    splits: Sequence[SplitSet], s: SplitSet, cell_limit: int = DEFAULT_CELL_LIMIT
) -> DominanceReport:
    """Decide whether the union of ``splits`` contains ``s`` on the cube.

    Cells ``A_u`` are explored depth first in lexicographic order of ``u``.
    A prefix whose partial cell cannot meet ``s`` (in particular an empty
    partial cell) prunes every extension. Each full nonempty cell must lie
    in ``pi.x <= eta`` or in ``pi.x >= eta + 1``; the first cell that does
    neither yields the witness.
    """
    splits = list(splits)
    _check_dims(s.n, splits)
    if len(splits) > cell_limit:
        raise CellLimitExceeded(f"{len(splits)} splits exceeds the cell limit {cell_limit}")
    if is_cube_empty(s):
        return DominanceReport(True)

    n = s.n
    p = len(splits)
    strict = _slab_rows(s)
    sides = [t.complement_sides() for t in splits]
    pi = s.pi
    neg_pi = tuple(-v for v in pi)
    cells = 0

    def visit(depth, rows, u):
        nonlocal cells
        if depth == p:
            top = solve_box_lp(n, rows, pi)
            if top is None:
                return None
            cells += 1
            if top[0] <= s.eta:
                return None
            bottom = solve_box_lp(n, rows, neg_pi)
            if bottom[0] <= -(s.eta + 1):
                return None
            return u, mixed_witness(n, rows, strict)
        if depth and mixed_witness(n, rows, strict) is None:
            return None
        for bit in (0, 1):
            found = visit(depth + 1, rows + [sides[depth][bit]], u + (bit,))
            if found is not None:
                return found
        return None

    found = visit(0, [], ())
    if found is None:
        return DominanceReport(True, None, cells)
    u, w = found
    return DominanceReport(False, _witness(w), cells, u)


@dataclass(frozen=True)
class CoverResult:
    """A dominating sublist of a family; ``indices`` locate each member in the family."""

    splits: tuple[SplitSet, ...]
    indices: tuple[int, ...]
    optimal: bool = True
    witnesses_used: int = 0

    @property
    def size(self) -> int:
        return len(self.splits)

    def to_record(self) -> dict:
        return {
            "size": self.size,
            "optimal": self.optimal,
            "splits": [t.to_record() for t in self.splits],
            "family_indices": list(self.indices),
            "witnesses_used": self.witnesses_used,
        }


@dataclass(frozen=True)
class NoneWithin:
    """No sublist of size ``<= p_max`` dominates; ``witnesses`` certify it.

    No ``p_max`` family members can cover all witness points, and every
    witness lies in the queried split on the cube.
    """

    p_max: int
    witnesses: tuple[tuple[Fraction, ...], ...] = field(default=())

    size = math.inf

    def to_record(self) -> dict:
        return {
            "size": None,
            "none_within": self.p_max,
            "witnesses": [point_to_record(w) for w in self.witnesses],
        }


def _canonical(t: SplitSet):
    # (pi, eta) and (-pi, -eta-1) describe the same slab
    flipped = (tuple(-v for v in t.pi), -t.eta - 1)
    return min((t.pi, t.eta), flipped)


def _smallest_cover(coverers, n_w, lower, p_max):
    """Minimum set of candidates covering all ``n_w`` witness bits, size in [lower, p_max].

    ``coverers[w]`` lists candidate indices (ascending) containing witness ``w``;
    ``masks`` maps a candidate to its witness bitmask.
    """
    masks: dict[int, int] = {}
    for w, cs in enumerate(coverers):
        for j in cs:
            masks[j] = masks.get(j, 0) | (1 << w)
    full = (1 << n_w) - 1
    order = sorted(range(n_w), key=lambda w: (len(coverers[w]), w))

    def search(uncovered, budget, chosen):
        if not uncovered:
            return list(chosen)
        if budget == 0:
            return None
        w = next(w for w in order if uncovered >> w & 1)
        for j in coverers[w]:
            chosen.append(j)
            got = search(uncovered & ~masks[j], budget - 1, chosen)
            chosen.pop()
            if got is not None:
                return got
        return None

    for size in range(max(lower, 1), p_max + 1):
        got = search(full, size, [])
        if got is not None:
            return sorted(got)
    return None


def min_cover(family: Iterable[SplitSet], s: SplitSet, p_max: int) -> Union[CoverResult, NoneWithin]:
    """Smallest sublist of ``family`` dominating ``s``, searched up to ``p_max`` members.

    Lazy set cover over a growing witness set ``W`` of points of ``s`` in the
    cube: an exact minimum cover of ``W`` is a lower bound on the answer; if
    it dominates ``s`` it is optimal, otherwise the failure witness joins ``W``.
    """
    members = list(family)
    if p_max < 0:
        raise ValueError("p_max must be nonnegative")
    _check_dims(s.n, members)
    if is_cube_empty(s):
        return CoverResult((), (), True, 0)
    if not members:
        raise ValueError("family must be nonempty")

    cands = []
    seen = set()
    for j, t in enumerate(members):
        if is_cube_empty(t):
            continue
        key = _canonical(t)
        if key in seen:
            continue
        seen.add(key)
        cands.append(j)

    seed = mixed_witness(s.n, [], _slab_rows(s))
    witnesses = [_witness(seed)]
    coverers = [[j for j in cands if evaluate(members[j], witnesses[0]) is Region.INSIDE]]
    lower = 0
    while True:
        chosen = _smallest_cover(coverers, len(witnesses), lower, p_max)
        if chosen is None:
            return NoneWithin(p_max, tuple(witnesses))
        lower = len(chosen)
        report = union_dominates([members[j] for j in chosen], s, cell_limit=max(DEFAULT_CELL_LIMIT, p_max))
        if report.dominated:
            return CoverResult(tuple(members[j] for j in chosen), tuple(chosen), True, len(witnesses))
        w = report.witness
        witnesses.append(w)
        coverers.append([j for j in cands if evaluate(members[j], w) is Region.INSIDE])


@dataclass(frozen=True)
class EmpiricalCovering:
    value: Union[int, float]
    argmax: Optional[SplitSet]
    sizes: tuple

    def to_record(self) -> dict:
        return {
            "value": None if self.value == math.inf else self.value,
            "unbounded_within_pmax": self.value == math.inf,
            "argmax": self.argmax.to_record() if self.argmax is not None else None,
            "sizes": [None if v == math.inf else v for v in self.sizes],
        }


def covering_number_empirical(family, tests: Sequence[SplitSet], p_max: int) -> EmpiricalCovering:
    """Largest ``min_cover`` size over ``tests``; a test with no cover within ``p_max`` counts as infinity."""
    family = list(family)
    best = -1
    arg = None
    sizes = []
    for t in tests:
        res = min_cover(family, t, p_max)
        size = res.size
        sizes.append(size)
        if size > best:
            best, arg = size, t
    return EmpiricalCovering(max(best, 0), arg, tuple(sizes))


def format_witness(w) -> str:
    return "(" + ", ".join(format_rational(c) for c in w) + ")"
