"""Explicit dominators from F_2 and covers from F_3, F_4.

Each construction normalizes the input (nonnegative coefficients sorted
ascending, support in the trailing coordinates), picks a case from the
normalized coefficients, builds the answer in normalized coordinates and
maps it back. Cases are tested in a fixed order; the first match fires.
"""

from __future__ import annotations

from typing import Sequence

from splitdom.splits import SplitSet, invert_map, is_cube_empty, normalize

EMPTY = "empty"
LOWER_SPARSITY = "lower-sparsity"

CASE_TAGS = (
    (EMPTY, LOWER_SPARSITY)
    + tuple(f"k2-case{i}" for i in range(1, 4))
    + tuple(f"k3-case{i}" for i in range(1, 4))
    + tuple(f"k4-case{i}" for i in range(1, 11))
)


class CubeEmptySplit(ValueError):
    """The split misses the cube, so nothing is needed to dominate it."""


class ConstructionNotVerified(AssertionError):
    pass


def _indicator(n: int, positions: Sequence[int], eta: int) -> SplitSet:
    pi = [0] * n
    for j in positions:
        pi[j] = 1
    return SplitSet(n, tuple(pi), eta)


def _prepare(s: SplitSet, k: int):
    if s.sparsity > k:
        raise ValueError(f"split has sparsity {s.sparsity} > {k}")
    if is_cube_empty(s):
        raise CubeEmptySplit(f"{s} does not meet the cube")
    return normalize(s)


def _face(ns: SplitSet, pos: int, value: int):
    """Restriction of ``ns`` to ``x_pos = value``, as a split with coefficient 0 at ``pos``.

    Returns None when the restriction misses the cube.
    """
    pi = list(ns.pi)
    eta = ns.eta - value * pi[pos]
    pi[pos] = 0
    if not any(pi):
        return None
    face = SplitSet(ns.n, tuple(pi), eta)
    return None if is_cube_empty(face) else face


def _verify(outputs, s):
    from splitdom.dominance import union_dominates

    report = union_dominates(list(outputs), s)
    if not report.dominated:
        raise ConstructionNotVerified(f"construction for {s} misses witness {report.witness}")


def dominate_with_F2(s: SplitSet, verify: bool = False) -> tuple[SplitSet, str]:
    """A single member of F_2 containing ``s`` on the cube, with the case that produced it."""
    ns, m = _prepare(s, 2)
    n = s.n
    if ns.sparsity == 1:
        out, tag = _indicator(n, [n - 1], 0), LOWER_SPARSITY
    else:
        a, b = n - 2, n - 1
        p1, p2, eta = ns.pi[a], ns.pi[b], ns.eta
        if eta + 1 <= p1:
            out, tag = _indicator(n, [a, b], 0), "k2-case1"
        elif eta + 1 <= p2:
            out, tag = _indicator(n, [b], 0), "k2-case2"
        else:
            out, tag = _indicator(n, [a, b], 1), "k2-case3"
    result = invert_map(m, out)
    if verify:
        _verify([result], s)
    return result, tag


def cover_with_F3(s: SplitSet, verify: bool = False) -> tuple[tuple[SplitSet, ...], str]:
    """At most two members of F_3 whose union contains ``s`` on the cube."""
    if s.n < 3:
        t, tag = dominate_with_F2(s, verify)
        return (t,), tag
    ns, m = _prepare(s, 3)
    n = s.n
    a, b, c = n - 3, n - 2, n - 1
    p1, p2, p3, eta = ns.pi[a], ns.pi[b], ns.pi[c], ns.eta

    if p3 >= eta + 1 or p1 + p2 <= eta:
        tag = "k3-case1" if p3 >= eta + 1 else "k3-case2"
        face = _face(ns, c, 0 if tag == "k3-case1" else 1)
        outs = []
        if face is not None:
            outs.append(dominate_with_F2(face)[0])
        outs.append(_indicator(n, [c], 0))
    else:
        tag = "k3-case3"
        outs = [_indicator(n, [a, b, c], 1)]

    result = tuple(invert_map(m, t) for t in outs)
    if verify:
        _verify(result, s)
    return result, tag


def cover_with_F4(s: SplitSet, verify: bool = False) -> tuple[tuple[SplitSet, ...], str]:
    """At most three members of F_4 whose union contains ``s`` on the cube."""
    if s.n < 4:
        return cover_with_F3(s, verify)
    ns, m = _prepare(s, 4)
    n = s.n
    x1, x2, x3, x4 = n - 4, n - 3, n - 2, n - 1
    p1, p2, p3, p4 = (ns.pi[j] for j in (x1, x2, x3, x4))
    eta = ns.eta
    hi = eta + 1
    ind = lambda pos, e: _indicator(n, pos, e)  # noqa: E731
    every = [x1, x2, x3, x4]

    if p4 >= hi or p1 + p2 + p3 <= eta:
        tag = "k4-case1" if p4 >= hi else "k4-case2"
        face = _face(ns, x4, 0 if tag == "k4-case1" else 1)
        outs = list(cover_with_F3(face)[0]) if face is not None else []
        outs.append(ind([x4], 0))
    elif p1 + p2 >= hi:
        tag, outs = "k4-case3", [ind(every, 1)]
    elif p1 + p3 >= hi:
        tag, outs = "k4-case4", [ind(every, 1), ind([x3, x4], 0)]
    elif p3 + p4 <= eta:
        tag, outs = "k4-case5", [ind(every, 2)]
    elif p2 + p4 <= eta:
        tag, outs = "k4-case6", [ind(every, 2), ind([x3, x4], 1)]
    elif p2 + p3 >= hi and p1 + p4 >= hi:
        tag, outs = "k4-case7", [ind([x2, x3, x4], 1), ind([x1], 0), ind([x4], 0)]
    elif p2 + p3 <= eta and p1 + p4 <= eta:
        tag, outs = "k4-case8", [ind([x2, x3], 0), ind([x1, x2, x3], 2), ind([x4], 0)]
    elif p2 + p3 >= hi and p1 + p4 <= eta:
        tag, outs = "k4-case9", [ind([x2, x3, x4], 1), ind([x1], 0), ind([x2, x3], 0)]
    elif p2 + p3 <= eta and p1 + p4 >= hi:
        tag, outs = "k4-case10", [ind(every, 1), ind([x1, x2, x3], 2), ind([x4], 0)]
    else:
        raise RuntimeError(f"no case applies to normalized split {ns}")

    result = tuple(invert_map(m, t) for t in outs)
    if verify:
        _verify(result, s)
    return result, tag
