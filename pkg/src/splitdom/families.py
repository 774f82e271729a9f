"""Counterexample families and the sweep experiments built on them.

The experiments are finite instantiations: a passing report means the exact
checks agree with the statement at the given parameters, nothing more.
"""

from __future__ import annotations

import random
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations_with_replacement, product
from typing import Callable, Iterable, Sequence

from splitdom.constructive import cover_with_F3, cover_with_F4, dominate_with_F2
from splitdom.dominance import dominates, min_cover, union_dominates
from splitdom.splits import (
    Region,
    SplitSet,
    cube_window,
    enumerate_family,
    evaluate,
    is_cube_empty,
    member_of_family,
    point_to_record,
)


@dataclass
class ExperimentReport:
    name: str
    parameters: dict
    verdict: bool
    details: list = field(default_factory=list)
    timing: float = 0.0
    summary: dict = field(default_factory=dict)

    @property
    def verdict_label(self) -> str:
        return "Pass" if self.verdict else "Fail"

    def failures(self) -> list:
        return [d for d in self.details if not d.get("verified", True)]

    def to_record(self, include_timing: bool = False, include_details: bool = True) -> dict:
        rec = {
            "name": self.name,
            "parameters": self.parameters,
            "verdict": self.verdict_label,
            "summary": self.summary,
        }
        if include_details:
            rec["details"] = self.details
        if include_timing:
            rec["timing"] = round(self.timing, 3)
        return rec


def gen_S_gamma(gamma: int) -> SplitSet:
    """``gamma < x1 + gamma*x2 + (gamma+1)*x3 < gamma + 1`` in R^3."""
    if isinstance(gamma, bool) or not isinstance(gamma, int) or gamma < 1:
        raise ValueError(f"gamma must be a positive integer, got {gamma!r}")
    return SplitSet(3, (1, gamma, gamma + 1), gamma)


def gen_S_theta(k: int, theta: int, parity: str = "even") -> SplitSet:
    """Weights ``theta^1..theta^k`` repeated on two blocks, offset ``sum theta^i``.

    The odd variant appends one coordinate with coefficient 1.
    """
    if k < 1 or theta < 1:
        raise ValueError("need k >= 1 and theta >= 1")
    if parity not in ("even", "odd"):
        raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}")
    weights = tuple(theta**i for i in range(1, k + 1))
    pi = weights + weights + ((1,) if parity == "odd" else ())
    return SplitSet(len(pi), pi, sum(weights))


def _map(func: Callable, items: Sequence, jobs: int) -> list:
    if jobs is None or jobs <= 1 or len(items) < 2:
        return [func(it) for it in items]
    chunk = max(1, len(items) // (jobs * 8))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(func, items, chunksize=chunk))


def _prop2_instance(s: SplitSet) -> dict:
    out, tag = dominate_with_F2(s)
    report = dominates(out, s)
    in_family = member_of_family(out, 2)
    rec = {
        "input": s.to_record(),
        "output": out.to_record(),
        "case": tag,
        "in_family": in_family,
        "verified": report.dominated and in_family,
    }
    if member_of_family(s, 2):
        rec["output_equals_input"] = out == s
    if not report.dominated:
        rec["witness"] = point_to_record(report.witness)
    return rec


def experiment_prop2(M: int = 8, E: int = 16, jobs: int = 1) -> ExperimentReport:
    """Every cube-meeting split ``pi in [-M, M]^2``, ``|eta| <= E`` gets a verified F_2 dominator."""
    if M < 1 or E < 1:
        raise ValueError("need M >= 1 and E >= 1")
    start = time.perf_counter()
    instances = []
    for pi in product(range(-M, M + 1), repeat=2):
        if not any(pi):
            continue
        for eta in range(-E, E + 1):
            s = SplitSet(2, pi, eta)
            if not is_cube_empty(s):
                instances.append(s)
    details = _map(_prop2_instance, instances, jobs)
    verdict = all(d["verified"] for d in details)
    summary = {
        "instances": len(details),
        "failures": sum(not d["verified"] for d in details),
        "cases": dict(sorted(Counter(d["case"] for d in details).items())),
    }
    return ExperimentReport(
        "prop2", {"M": M, "E": E}, verdict, details, time.perf_counter() - start, summary
    )


def _upper_instance(args) -> dict:
    k, s = args
    construct = cover_with_F3 if k == 3 else cover_with_F4
    outs, tag = construct(s)
    report = union_dominates(outs, s)
    in_family = all(member_of_family(t, k) for t in outs)
    distinct = len(set(outs)) == len(outs)
    rec = {
        "input": s.to_record(),
        "output": [t.to_record() for t in outs],
        "case": tag,
        "size": len(outs),
        "verified": report.dominated and in_family and distinct and len(outs) <= k - 1,
    }
    if not report.dominated:
        rec["witness"] = point_to_record(report.witness)
    return rec


def normalized_sweep(k: int, M: int) -> list[SplitSet]:
    """All ``0 <= pi_1 <= ... <= pi_k <= M`` (not all zero) with eta in ``[0, sum(pi) - 1]``."""
    out = []
    for pi in combinations_with_replacement(range(M + 1), k):
        if not any(pi):
            continue
        for eta in range(sum(pi)):
            out.append(SplitSet(k, pi, eta))
    return out


def experiment_prop_upper(k: int, M: int, jobs: int = 1) -> ExperimentReport:
    """Covers of size at most ``k - 1`` from F_k for every normalized split with entries up to ``M``."""
    if k not in (3, 4):
        raise ValueError("k must be 3 or 4")
    if M < 1:
        raise ValueError("need M >= 1")
    start = time.perf_counter()
    instances = [(k, s) for s in normalized_sweep(k, M)]
    details = _map(_upper_instance, instances, jobs)
    prefix = f"k{k}-case"
    one_case = all(d["case"].startswith(prefix) for d in details)
    verdict = one_case and all(d["verified"] for d in details)
    summary = {
        "instances": len(details),
        "failures": sum(not d["verified"] for d in details),
        "max_size": max((d["size"] for d in details), default=0),
        "cases": dict(sorted(Counter(d["case"] for d in details).items())),
    }
    return ExperimentReport(
        f"prop-upper-k{k}", {"k": k, "M": M}, verdict, details, time.perf_counter() - start, summary
    )


def bounded_splits(n: int, B: int) -> list[SplitSet]:
    """Every split in R^n with ``|pi_i| <= B`` and eta in its cube window."""
    out = []
    for pi in product(range(-B, B + 1), repeat=n):
        if any(pi):
            out.extend(SplitSet(n, pi, eta) for eta in cube_window(pi))
    return out


def _has_forced_shape(t: SplitSet) -> bool:
    """``pi = (1, eta, eta + 1)``, possibly after rewriting the slab as ``(-pi, -eta - 1)``."""
    for pi, eta in ((t.pi, t.eta), (tuple(-v for v in t.pi), -t.eta - 1)):
        if pi == (1, eta, eta + 1):
            return True
    return False


def _gamma_instance(args) -> dict:
    gamma, B, with_cover = args
    target = gen_S_gamma(gamma)
    found = [t for t in bounded_splits(3, B) if dominates(t, target).dominated]
    shape_ok = all(_has_forced_shape(t) for t in found)
    rec = {
        "gamma": gamma,
        "split": target.to_record(),
        "dominators": [t.to_record() for t in found],
        "forced_shape_holds": shape_ok,
        "expect_none": gamma > B,
    }
    ok = shape_ok and not (gamma > B and found)
    if with_cover:
        fam = enumerate_family(3, 3)
        singles = [t for t in fam if dominates(t, target).dominated]
        constructed, tag = cover_with_F3(target)
        constructed_ok = union_dominates(constructed, target).dominated
        res = min_cover(fam, target, 2)
        rec.update(
            {
                "family_singletons_dominating": len(singles),
                "constructed_cover": [t.to_record() for t in constructed],
                "constructed_case": tag,
                "min_cover_size": None if res.size == float("inf") else res.size,
                "min_cover": res.to_record(),
            }
        )
        ok = ok and not singles and constructed_ok and len(constructed) <= 2 and res.size == 2
    rec["verified"] = ok
    return rec


def experiment_thm3(
    gamma_set: Iterable[int], B: int = 3, with_cover: bool = False, jobs: int = 1
) -> ExperimentReport:
    """No split with coefficients bounded by ``B`` dominates ``S_gamma`` once ``gamma > B``.

    Every single dominator found must have the shape ``(1, eta, eta + 1)``.
    With ``with_cover`` the minimum F_3 cover of each ``S_gamma`` must be exactly 2.
    """
    if B < 1:
        raise ValueError("need B >= 1")
    gammas = sorted(set(gamma_set))
    for g in gammas:
        gen_S_gamma(g)
    start = time.perf_counter()
    details = _map(_gamma_instance, [(g, B, with_cover) for g in gammas], jobs)
    verdict = all(d["verified"] for d in details)
    summary = {
        "dominator_counts": {str(d["gamma"]): len(d["dominators"]) for d in details},
        "candidates_per_gamma": len(bounded_splits(3, B)),
    }
    if with_cover:
        summary["min_cover_sizes"] = {str(d["gamma"]): d["min_cover_size"] for d in details}
    return ExperimentReport(
        "thm3",
        {"gamma_set": gammas, "B": B, "with_cover": with_cover},
        verdict,
        details,
        time.perf_counter() - start,
        summary,
    )


def _theta_instance(args) -> dict:
    k, theta, p_max = args
    target = gen_S_theta(k // 2, theta, "even" if k % 2 == 0 else "odd")
    fam = enumerate_family(k, k)
    res = min_cover(fam, target, p_max)
    size = res.size
    rec = {
        "theta": theta,
        "split": target.to_record(),
        "min_cover_size": None if size == float("inf") else size,
        "cover": res.to_record(),
        "verified": True,
    }
    return rec


def experiment_lower_bound(k: int, theta_set: Iterable[int], p_max: int, jobs: int = 1) -> ExperimentReport:
    """Minimum F_k covers of the theta-weighted splits in R^k.

    Passes when some theta needs at least ``k // 2`` members and, for
    ``k <= 4``, no theta needs more than ``k - 1``.
    """
    if k < 2:
        raise ValueError("need k >= 2")
    if p_max < k // 2:
        raise ValueError("p_max must be at least k // 2")
    thetas = sorted(set(theta_set))
    if not thetas or thetas[0] < 1:
        raise ValueError("theta values must be positive")
    start = time.perf_counter()
    details = _map(_theta_instance, [(k, t, p_max) for t in thetas], jobs)
    sizes = [d["min_cover_size"] if d["min_cover_size"] is not None else float("inf") for d in details]
    lower_ok = max(sizes) >= k // 2
    upper_ok = k > 4 or all(s <= k - 1 for s in sizes)
    if k <= 4:
        for d, s in zip(details, sizes):
            d["verified"] = s <= k - 1
    summary = {
        "sizes": {str(d["theta"]): d["min_cover_size"] for d in details},
        "max_size": None if max(sizes) == float("inf") else max(sizes),
        "lower_bound": k // 2,
        "lower_bound_witnessed": lower_ok,
        "within_upper_bound": upper_ok,
    }
    return ExperimentReport(
        "lower-bound",
        {"k": k, "theta_set": thetas, "p_max": p_max},
        lower_ok and upper_ok,
        details,
        time.perf_counter() - start,
        summary,
    )


def random_split(rng: random.Random, n: int, bound: int) -> SplitSet:
    """Uniform nonzero ``pi`` in ``[-bound, bound]^n`` with eta drawn from the cube window."""
    while True:
        pi = tuple(rng.randint(-bound, bound) for _ in range(n))
        if any(pi):
            window = cube_window(pi)
            return SplitSet(n, pi, rng.randint(window.start, window.stop - 1))


def experiment_witness_soundness(count: int = 1000, seed: int = 0) -> ExperimentReport:
    """Random union-dominance failures whose witnesses are re-checked by substitution.

    Instances are drawn until ``count`` of them are not dominated; only those count.
    """
    if count < 1:
        raise ValueError("count must be positive")
    rng = random.Random(seed)
    start = time.perf_counter()
    details = []
    attempts = 0
    while len(details) < count:
        attempts += 1
        n = rng.randint(1, 4)
        s = random_split(rng, n, 4)
        splits = [random_split(rng, n, 3) for _ in range(rng.randint(0, 3))]
        report = union_dominates(splits, s)
        if report.dominated:
            continue
        w = report.witness
        ok = (
            all(0 <= c <= 1 for c in w)
            and evaluate(s, w) is Region.INSIDE
            and all(evaluate(t, w) is not Region.INSIDE for t in splits)
        )
        details.append(
            {
                "split": s.to_record(),
                "list": [t.to_record() for t in splits],
                "witness": point_to_record(w),
                "verified": ok,
            }
        )
    summary = {
        "instances": len(details),
        "attempts": attempts,
        "failures": sum(not d["verified"] for d in details),
    }
    return ExperimentReport(
        "witnesses",
        {"count": count, "seed": seed},
        summary["failures"] == 0,
        details,
        time.perf_counter() - start,
        summary,
    )
