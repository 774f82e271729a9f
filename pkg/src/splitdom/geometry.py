"""Exact rational LP and mixed strict/weak feasibility inside the unit box.

Every system here implicitly carries ``0 <= x_i <= 1``, so feasible LPs
always attain their optimum. The solver is a dense two-phase tableau
simplex with Bland's rule, run on reduced rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from splitdom.rational import Q, to_fraction

Row = tuple[tuple[Fraction, ...], Fraction]


def _row(a: Sequence, b, n: int) -> Row:
    if len(a) != n:
        raise ValueError(f"row has {len(a)} coefficients, system has dimension {n}")
    return tuple(to_fraction(v) for v in a), to_fraction(b)


@dataclass(frozen=True)
class LinSystem:
    """Weak rows ``a.x <= b`` and strict rows ``a.x < b`` over ``[0, 1]^n``."""

    n: int
    weak: tuple[Row, ...] = ()
    strict: tuple[Row, ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("dimension must be positive")
        object.__setattr__(self, "weak", tuple(_row(a, b, self.n) for a, b in self.weak))
        object.__setattr__(self, "strict", tuple(_row(a, b, self.n) for a, b in self.strict))

    def with_rows(self, weak=(), strict=()) -> "LinSystem":
        return LinSystem(self.n, self.weak + tuple(weak), self.strict + tuple(strict))

    def satisfied_by(self, x: Sequence) -> bool:
        """Direct substitution check, box included."""
        x = [to_fraction(v) for v in x]
        if len(x) != self.n or any(not 0 <= v <= 1 for v in x):
            return False
        dot = lambda a: sum((ai * xi for ai, xi in zip(a, x)), Fraction(0))  # noqa: E731
        return all(dot(a) <= b for a, b in self.weak) and all(dot(a) < b for a, b in self.strict)


@dataclass(frozen=True)
class LPOutcome:
    value: Fraction
    argpoint: tuple[Fraction, ...]


class UnboundedLP(RuntimeError):
    """Cannot happen for box-bounded systems; raised if the tableau says otherwise."""


def _pivot(rows, obj, basis, r, c):
    prow = rows[r]
    inv = 1 / prow[c]
    prow = [v * inv for v in prow]
    rows[r] = prow
    for i, row in enumerate(rows):
        if i != r:
            f = row[c]
            if f:
                rows[i] = [a - f * p for a, p in zip(row, prow)]
    f = obj[c]
    if f:
        obj[:] = [a - f * p for a, p in zip(obj, prow)]
    basis[r] = c


def _run(rows, obj, basis, ncols):
    """Maximize with Bland's rule over columns ``0..ncols-1``."""
    while True:
        enter = -1
        for j in range(ncols):
            if obj[j] > 0:
                enter = j
                break
        if enter < 0:
            return
        leave = -1
        best = None
        for i, row in enumerate(rows):
            a = row[enter]
            if a > 0:
                ratio = row[-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave < 0:
            raise UnboundedLP("unbounded direction in a box-bounded LP")
        _pivot(rows, obj, basis, leave, enter)


def solve_box_lp(n: int, rows, c) -> Optional[tuple]:
    """Maximize ``c.x`` subject to ``a.x <= b`` for each (a, b) in rows and ``0 <= x <= 1``.

    ``rows`` and ``c`` may hold any rational type; the kernel converts to ``Q``.
    Returns ``(value, x)`` with ``Q`` entries, or None when infeasible.
    """
    all_rows = [([Q(v) for v in a], Q(b)) for a, b in rows]
    for j in range(n):
        e = [Q(0)] * n
        e[j] = Q(1)
        all_rows.append((e, Q(1)))
    m = len(all_rows)
    neg = [i for i, (_, b) in enumerate(all_rows) if b < 0]
    n_art = len(neg)
    width = n + m + n_art
    zero = Q(0)
    one = Q(1)

    tab = []
    basis = []
    art_of = {i: k for k, i in enumerate(neg)}
    for i, (a, b) in enumerate(all_rows):
        row = [zero] * (width + 1)
        sign = -1 if i in art_of else 1
        for j in range(n):
            row[j] = a[j] * sign
        row[n + i] = one * sign
        row[width] = b * sign
        if i in art_of:
            col = n + m + art_of[i]
            row[col] = one
            basis.append(col)
        else:
            basis.append(n + i)
        tab.append(row)

    if n_art:
        obj = [zero] * (width + 1)
        for i in neg:
            obj = [o + v for o, v in zip(obj, tab[i])]
        for k in range(n_art):
            obj[n + m + k] = zero
        _run(tab, obj, basis, width)
        if obj[width] != 0:
            return None
        # drive zero-level artificials out of the basis
        i = 0
        while i < len(tab):
            if basis[i] >= n + m:
                row = tab[i]
                col = next((j for j in range(n + m) if row[j] != 0), -1)
                if col < 0:
                    del tab[i]
                    del basis[i]
                    continue
                _pivot(tab, [zero] * (width + 1), basis, i, col)
            i += 1
        tab = [row[: n + m] + [row[width]] for row in tab]

    width = n + m
    cq = [Q(v) for v in c] + [zero] * m
    obj = cq + [zero]
    for i, bcol in enumerate(basis):
        f = cq[bcol]
        if f:
            obj = [o - f * v for o, v in zip(obj, tab[i])]
    _run(tab, obj, basis, width)

    x = [zero] * n
    for i, bcol in enumerate(basis):
        if bcol < n:
            x[bcol] = tab[i][width]
    return -obj[width], x


def _frac(v) -> Fraction:
    return Fraction(int(v.numerator), int(v.denominator))


def lp_maximize(c: Sequence, system: LinSystem) -> Optional[LPOutcome]:
    """Exact maximum of ``c.x`` over the weak rows plus the box; None if infeasible."""
    if system.strict:
        raise ValueError("lp_maximize takes a system without strict rows")
    if len(c) != system.n:
        raise ValueError(f"objective has dimension {len(c)}, system has {system.n}")
    res = solve_box_lp(system.n, system.weak, [to_fraction(v) for v in c])
    if res is None:
        return None
    value, x = res
    return LPOutcome(_frac(value), tuple(_frac(v) for v in x))


def mixed_witness(n: int, weak, strict) -> Optional[list]:
    """Kernel for :func:`feasible_mixed` on raw rows; returns ``Q`` coordinates."""
    zero, one = Q(0), Q(1)
    rows = [(list(a) + [zero], b) for a, b in weak]
    rows += [(list(a) + [one], b) for a, b in strict]
    rows.append(([zero] * n + [one], one))
    res = solve_box_lp(n + 1, rows, [zero] * n + [one])
    if res is None:
        return None
    gap, x = res
    if gap <= 0:
        return None
    return x[:n]


def feasible_mixed(system: LinSystem) -> Optional[tuple[Fraction, ...]]:
    """A rational point meeting every weak row, every strict row strictly, and the box.

    Strict rows ``a.x < b`` become ``a.x + t <= b`` with a gap variable
    ``0 <= t <= 1``; the mixed system is feasible iff the maximal gap is
    positive, and the maximizer is returned. None means the system is empty.
    """
    x = mixed_witness(system.n, system.weak, system.strict)
    if x is None:
        return None
    return tuple(_frac(v) for v in x)


def contained_in_halfspace(system: LinSystem, a: Sequence, b) -> bool:
    """True iff every point of the weak system (plus box) satisfies ``a.x <= b``."""
    res = lp_maximize(a, system)
    return res is None or res.value <= to_fraction(b)
