"""Cross-verification sweep over thick cycles.

Every instance is checked several independent ways: closed form against the
Smith form of the reduced Laplacian, the order against Kirchhoff and brute
force tree counting, ``m_t = g_t`` on the permuted Laplacian, permutation
invariance, the banana duality, and the minor selection.
"""

from __future__ import annotations

import itertools
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .linalg import minors_gcd
from .multigraph import (
    build_banana,
    build_thick_cycle,
    enumeration_guard,
    spanning_tree_count,
    spanning_tree_enumerate,
)
from .sandpile import AbelianGroup, sandpile_group
from .thick_cycle import (
    gcd_products,
    order_thick_cycle,
    permuted_laplacian,
    thick_cycle_group,
    verify_selected_minor,
)

__all__ = ["VerifyReport", "run_verify", "check_instance", "sweep_instances"]

EXHAUSTIVE_N_MAX = 4
EXHAUSTIVE_MULT_MAX = 4
# m_t = g_t and minor selection are brute force; keep them to small n
MINORS_N_MAX = 6
BANANA_VERTEX_MAX = 20


@dataclass
class VerifyReport:
    instances_checked: int = 0
    exhaustive_instances: int = 0
    random_instances: int = 0
    checks_run: int = 0
    failures: list[dict] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self, include_elapsed: bool = False) -> dict:
        out = {
            "instances_checked": self.instances_checked,
            "exhaustive_instances": self.exhaustive_instances,
            "random_instances": self.random_instances,
            "checks_run": self.checks_run,
            "failures": self.failures,
        }
        if include_elapsed:
            out["elapsed_seconds"] = round(self.elapsed, 3)
        return out


def _g(group: AbelianGroup) -> list[int]:
    return list(group.invariant_factors)


def check_instance(
    a: Sequence[int],
    perm: Sequence[int],
    group_fn: Callable[[Sequence[int]], AbelianGroup] = thick_cycle_group,
) -> tuple[int, list[dict]]:
    """Run every cross-check on one multiplicity vector.

    ``perm`` is the reordering used for the permutation-invariance check.
    Returns ``(checks_run, failures)``.
    """
    a = tuple(a)
    n = len(a)
    failures = []
    runs = 0

    def check(name, expected, actual):
        nonlocal runs
        runs += 1
        if expected != actual:
            failures.append({"check": name, "input": list(a),
                             "expected": expected, "actual": actual})

    graph = build_thick_cycle(a)
    closed = group_fn(a)
    check("theorem_vs_snf", _g(sandpile_group(graph)), _g(closed))

    order = order_thick_cycle(a)
    check("order_vs_kirchhoff", spanning_tree_count(graph), order)
    if graph.edge_count <= enumeration_guard():
        check("order_vs_enumeration", spanning_tree_enumerate(graph), order)

    shuffled = [a[i] for i in perm]
    check("permutation_invariance", _g(closed), _g(group_fn(shuffled)))

    if 2 + sum(x - 1 for x in a) <= BANANA_VERTEX_MAX:
        check("banana_duality", _g(closed), _g(sandpile_group(build_banana(a))))

    if 3 <= n <= MINORS_N_MAX:
        lp = permuted_laplacian(a)
        for t in range(1, n - 1):
            check(f"minors_gcd_t{t}", gcd_products(a, t), minors_gcd(lp, t))
        for t in range(1, n - 1):
            for subset in itertools.combinations(range(1, n + 1), t):
                check(f"minor_selection{list(subset)}", True, verify_selected_minor(a, subset))
    return runs, failures


def sweep_instances(n_max: int, mult_max: int, samples: int, seed: int):
    """Exhaustive small vectors followed by seeded random ones.

    Yields ``(vector, permutation, is_random)``; the permutation is drawn
    from the same seeded generator, so a seed fixes the whole sweep.
    """
    rng = random.Random(seed)
    for n in range(2, min(n_max, EXHAUSTIVE_N_MAX) + 1):
        for a in itertools.product(range(1, min(mult_max, EXHAUSTIVE_MULT_MAX) + 1), repeat=n):
            perm = list(range(n))
            rng.shuffle(perm)
            yield a, perm, False
    for _ in range(samples):
        n = rng.randint(2, n_max)
        a = tuple(rng.randint(1, mult_max) for _ in range(n))
        perm = list(range(n))
        rng.shuffle(perm)
        yield a, perm, True


def run_verify(
    n_max: int = 8,
    mult_max: int = 6,
    samples: int = 500,
    seed: int = 0,
    workers: int = 1,
    group_fn: Callable[[Sequence[int]], AbelianGroup] | None = None,
) -> VerifyReport:
    """Run the sweep; ``group_fn`` replaces the closed form under test."""
    if n_max < 2 or mult_max < 1 or samples < 0:
        raise ValueError("need n_max >= 2, mult_max >= 1 and samples >= 0")
    if group_fn is None:
        group_fn = thick_cycle_group
    start = time.perf_counter()
    instances = list(sweep_instances(n_max, mult_max, samples, seed))
    report = VerifyReport()

    def job(item):
        a, perm, _ = item
        return check_instance(a, perm, group_fn)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(job, instances))
    else:
        results = [job(item) for item in instances]

    for (_, _, is_random), (runs, failures) in zip(instances, results):
        report.instances_checked += 1
        if is_random:
            report.random_instances += 1
        else:
            report.exhaustive_instances += 1
        report.checks_run += runs
        report.failures.extend(failures)
    report.elapsed = time.perf_counter() - start
    return report
