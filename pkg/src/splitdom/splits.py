"""Split sets, their restriction to the unit cube, and the cube symmetries.

A split set ``S(pi, eta)`` is the open slab ``eta < pi.x < eta + 1`` for an
integer vector ``pi`` and an integer ``eta``. Coordinates are 0-based.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import comb
from typing import Iterable, Sequence

from splitdom.rational import format_rational, parse_rational, to_fraction


class Region(enum.Enum):
    BELOW = "below"
    INSIDE = "inside"
    ABOVE = "above"


def _as_int(value, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise TypeError(f"{what} must be an integer, got {value!r}")
    return value


@dataclass(frozen=True)
class SplitSet:
    """The open slab ``{x : eta < pi.x < eta + 1}`` in R^n."""

    n: int
    pi: tuple[int, ...]
    eta: int

    def __post_init__(self):
        _as_int(self.n, "n")
        object.__setattr__(self, "pi", tuple(_as_int(p, "pi entry") for p in self.pi))
        _as_int(self.eta, "eta")
        if self.n < 1:
            raise ValueError("dimension must be positive")
        if len(self.pi) != self.n:
            raise ValueError(f"pi has length {len(self.pi)}, expected {self.n}")
        if not any(self.pi):
            raise ValueError("pi must not be the zero vector")

    @classmethod
    def of(cls, pi: Sequence[int], eta: int) -> "SplitSet":
        return cls(len(pi), tuple(pi), eta)

    @property
    def sparsity(self) -> int:
        return sum(1 for p in self.pi if p != 0)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, p in enumerate(self.pi) if p != 0)

    def value(self, x: Sequence) -> Fraction:
        if len(x) != self.n:
            raise ValueError(f"point has dimension {len(x)}, split has {self.n}")
        return sum((p * to_fraction(c) for p, c in zip(self.pi, x) if p), Fraction(0))

    def complement_sides(self):
        """The two closed sides as weak rows ``a.x <= b``: ``pi.x <= eta`` and ``-pi.x <= -(eta+1)``."""
        return (self.pi, self.eta), (tuple(-p for p in self.pi), -(self.eta + 1))

    def to_record(self) -> dict:
        return {"n": self.n, "pi": list(self.pi), "eta": self.eta}

    @classmethod
    def from_record(cls, record) -> "SplitSet":
        if not isinstance(record, dict):
            raise ValueError("split record must be an object")
        missing = {"n", "pi", "eta"} - record.keys()
        if missing:
            raise ValueError(f"split record is missing {sorted(missing)}")
        if not isinstance(record["pi"], list):
            raise ValueError("pi must be a list of integers")
        try:
            return cls(record["n"], tuple(record["pi"]), record["eta"])
        except TypeError as exc:
            raise ValueError(str(exc)) from None

    def __str__(self) -> str:
        terms = " ".join(f"{p:+d}*x{i}" for i, p in enumerate(self.pi) if p)
        return f"{self.eta} < {terms} < {self.eta + 1}"


def check_cube_point(x: Iterable) -> tuple[Fraction, ...]:
    """Validate and convert to a tuple of Fractions in [0, 1]."""
    coords = tuple(to_fraction(c) for c in x)
    for c in coords:
        if not 0 <= c <= 1:
            raise ValueError(f"coordinate {c} lies outside [0, 1]")
    return coords


def point_to_record(x: Sequence) -> list[str]:
    return [format_rational(c) for c in x]


def point_from_record(record) -> tuple[Fraction, ...]:
    return check_cube_point(parse_rational(c) for c in record)


def evaluate(s: SplitSet, x: Sequence) -> Region:
    v = s.value(x)
    if v <= s.eta:
        return Region.BELOW
    if v >= s.eta + 1:
        return Region.ABOVE
    return Region.INSIDE


def cube_range(s: SplitSet) -> tuple[int, int]:
    """Min and max of ``pi.x`` over the cube: (sum of negatives, sum of positives)."""
    return sum(p for p in s.pi if p < 0), sum(p for p in s.pi if p > 0)


def is_cube_empty(s: SplitSet) -> bool:
    lo, hi = cube_range(s)
    return not (lo <= s.eta <= hi - 1)


def cube_window(pi: Sequence[int]) -> range:
    """All eta for which ``S(pi, eta)`` meets the cube."""
    lo = sum(p for p in pi if p < 0)
    hi = sum(p for p in pi if p > 0)
    return range(lo, hi)


@dataclass(frozen=True)
class NormalizationMap:
    """Coordinate flips ``x_i -> 1 - x_i`` followed by a permutation.

    ``perm[j]`` is the source coordinate that lands in position ``j``.
    ``eta_shift`` is the change of eta for the split the map was built from.
    """

    flips: frozenset[int]
    perm: tuple[int, ...]
    eta_shift: int = 0

    def __post_init__(self):
        object.__setattr__(self, "flips", frozenset(self.flips))
        object.__setattr__(self, "perm", tuple(self.perm))
        n = len(self.perm)
        if sorted(self.perm) != list(range(n)):
            raise ValueError(f"perm {self.perm} is not a permutation of 0..{n - 1}")
        if any(not 0 <= i < n for i in self.flips):
            raise ValueError("flip index out of range")

    @classmethod
    def identity(cls, n: int) -> "NormalizationMap":
        return cls(frozenset(), tuple(range(n)), 0)

    def to_record(self) -> dict:
        return {"flips": sorted(self.flips), "perm": list(self.perm), "eta_shift": self.eta_shift}


def _check_dim(m: NormalizationMap, n: int) -> None:
    if len(m.perm) != n:
        raise ValueError(f"map has dimension {len(m.perm)}, split has {n}")


def apply_map(m: NormalizationMap, s: SplitSet) -> SplitSet:
    _check_dim(m, s.n)
    pi = list(s.pi)
    eta = s.eta
    for i in m.flips:
        eta -= pi[i]
        pi[i] = -pi[i]
    return SplitSet(s.n, tuple(pi[src] for src in m.perm), eta)


def invert_map(m: NormalizationMap, s: SplitSet) -> SplitSet:
    _check_dim(m, s.n)
    pi = [0] * s.n
    for j, src in enumerate(m.perm):
        pi[src] = s.pi[j]
    eta = s.eta
    for i in m.flips:
        eta -= pi[i]
        pi[i] = -pi[i]
    return SplitSet(s.n, tuple(pi), eta)


def transform_point(m: NormalizationMap, x: Sequence) -> tuple[Fraction, ...]:
    """Point map matching :func:`apply_map`: ``x in S`` iff ``transform_point(m, x) in apply_map(m, S)``."""
    _check_dim(m, len(x))
    y = [1 - to_fraction(c) if i in m.flips else to_fraction(c) for i, c in enumerate(x)]
    return tuple(y[src] for src in m.perm)


def inverse_transform_point(m: NormalizationMap, x: Sequence) -> tuple[Fraction, ...]:
    _check_dim(m, len(x))
    y = [Fraction(0)] * len(x)
    for j, src in enumerate(m.perm):
        y[src] = to_fraction(x[j])
    return tuple(1 - c if i in m.flips else c for i, c in enumerate(y))


def normalize(s: SplitSet) -> tuple[SplitSet, NormalizationMap]:
    """Flip negative coefficients, then stable-sort coefficients ascending.

    Zero coefficients therefore come first and the support occupies the
    trailing coordinates.
    """
    flips = frozenset(i for i, p in enumerate(s.pi) if p < 0)
    perm = tuple(sorted(range(s.n), key=lambda i: abs(s.pi[i])))
    shift = -sum(s.pi[i] for i in flips)
    m = NormalizationMap(flips, perm, shift)
    return apply_map(m, s), m


@dataclass(frozen=True)
class SplitFamily:
    """An ordered, duplicate-free list of splits in a common dimension."""

    n: int
    k: int
    splits: tuple[SplitSet, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "splits", tuple(self.splits))
        seen = set()
        for s in self.splits:
            if s.n != self.n:
                raise ValueError(f"family member {s} has dimension {s.n}, expected {self.n}")
            key = (s.pi, s.eta)
            if key in seen:
                raise ValueError(f"duplicate family member {s}")
            seen.add(key)

    def __iter__(self):
        return iter(self.splits)

    def __len__(self) -> int:
        return len(self.splits)

    def __getitem__(self, i):
        return self.splits[i]

    def is_standard(self) -> bool:
        """True when every member satisfies the coefficient/sparsity/eta bounds for ``k``."""
        return all(member_of_family(s, self.k) for s in self.splits)

    def to_record(self) -> dict:
        return {"n": self.n, "k": self.k, "splits": [s.to_record() for s in self.splits]}

    @classmethod
    def from_record(cls, record) -> "SplitFamily":
        if not isinstance(record, dict) or not {"n", "k", "splits"} <= record.keys():
            raise ValueError("family record needs n, k and splits")
        return cls(record["n"], record["k"], tuple(SplitSet.from_record(r) for r in record["splits"]))


def family_size(n: int, k: int) -> int:
    return sum(comb(n, j) * 2**j for j in range(1, k + 1)) * (2 * k + 1)


def enumerate_family(n: int, k: int) -> SplitFamily:
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    keyed = []
    for size in range(1, k + 1):
        for support in combinations(range(n), size):
            for signs in product((-1, 1), repeat=size):
                pi = [0] * n
                for i, sg in zip(support, signs):
                    pi[i] = sg
                for eta in range(-k, k + 1):
                    keyed.append(((support, signs, eta), SplitSet(n, tuple(pi), eta)))
    keyed.sort(key=lambda item: item[0])
    return SplitFamily(n, k, tuple(s for _, s in keyed))


def member_of_family(s: SplitSet, k: int) -> bool:
    return (
        all(p in (-1, 0, 1) for p in s.pi)
        and 1 <= s.sparsity <= k
        and -k <= s.eta <= k
    )
