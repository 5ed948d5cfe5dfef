"""Closed-form sandpile groups of thick cycles.

A thick cycle is an ``n``-cycle whose ``i``-th edge (joining ``v_i`` and
``v_{i+1}``) carries ``a_i`` parallel copies. Its sandpile group is read off
from ``g_t``, the gcd of all products of ``t`` distinct multiplicities.

Index arguments in :func:`select_minor_indices` and friends are 1-based and
cyclic, like the vertex labels ``v_1 .. v_n``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .linalg import IntegerMatrix, det
from .multigraph import GraphError, as_multiplicities, build_thick_cycle, laplacian
from .sandpile import AbelianGroup

__all__ = [
    "MinorSelectionError",
    "IndexSelection",
    "TraceStep",
    "order_thick_cycle",
    "gcd_products",
    "gcd_sequence",
    "thick_cycle_group",
    "permuted_laplacian",
    "select_minor_indices",
    "verify_selected_minor",
    "selected_minor",
    "generic_multiplicities",
]


class MinorSelectionError(RuntimeError):
    """The selected submatrix failed the determinant post-check."""


def order_thick_cycle(a: Sequence[int]) -> int:
    """Spanning-tree count: sum over ``i`` of the product of all ``a_j``, ``j != i``."""
    a = as_multiplicities(a)
    return sum(math.prod(a[:i] + a[i + 1:]) for i in range(len(a)))


def gcd_products(a: Sequence[int], t: int) -> int:
    """``g_t``: gcd of the products of every ``t`` distinct entries of ``a``.

    Dynamic program over prefixes: ``G[s]`` after reading ``a_1..a_k`` holds
    the gcd of all ``s``-products drawn from that prefix, updated as
    ``G[s] = gcd(G[s], G[s-1] * a_k)``.
    """
    a = as_multiplicities(a)
    if not 1 <= t <= len(a):
        raise ValueError(f"t={t} out of range 1..{len(a)}")
    g = [1] + [0] * t
    for k, ak in enumerate(a, start=1):
        for s in range(min(t, k), 0, -1):
            g[s] = math.gcd(g[s], g[s - 1] * ak)
    return g[t]


def gcd_sequence(a: Sequence[int]) -> list[int]:
    """``[g_1, ..., g_{n-2}]`` (empty for ``n = 2``)."""
    a = as_multiplicities(a)
    return [gcd_products(a, t) for t in range(1, len(a) - 1)]


def thick_cycle_group(a: Sequence[int]) -> AbelianGroup:
    """Sandpile group from the gcd sequence, without any matrix reduction.

    Factors are ``g_1, g_2/g_1, ..., g_{n-2}/g_{n-3}, |S|/g_{n-2}`` with the
    units dropped.
    """
    a = as_multiplicities(a)
    order = order_thick_cycle(a)
    factors = []
    prev = 1
    for g in gcd_sequence(a):
        factors.append(g // prev)
        prev = g
    factors.append(order // prev)
    return AbelianGroup(tuple(f for f in factors if f > 1))


def permuted_laplacian(a: Sequence[int]) -> IntegerMatrix:
    """Thick-cycle Laplacian with columns rotated one step left.

    Column ``j`` of the result is column ``j + 1`` of the Laplacian
    (cyclically), which puts ``-a_i`` on the main diagonal, ``a_{i-1} + a_i``
    just below-left and ``-a_{i-1}`` two places left.
    """
    a = as_multiplicities(a)
    n = len(a)
    if n < 3:
        raise GraphError("the permuted Laplacian needs at least 3 vertices")
    lap = laplacian(build_thick_cycle(a))
    return IntegerMatrix.from_rows(
        [[lap[i, (j + 1) % n] for j in range(n)] for i in range(n)], n
    )


@dataclass(frozen=True)
class TraceStep:
    """One pass of the reselection loop (1-based ``R`` and ``C``)."""

    iteration: int
    k: int
    gap: int
    R: tuple[int, ...]
    C: tuple[int, ...]
    changed: bool

    def to_json(self) -> dict:
        return {"iteration": self.iteration, "k": self.k, "gap": self.gap,
                "R": list(self.R), "C": list(self.C), "changed": self.changed}


@dataclass(frozen=True)
class IndexSelection:
    """Row and column indices (1-based) of a minor equal to ``+-prod a_i``."""

    n: int
    subset: tuple[int, ...]
    R: tuple[int, ...]
    C: tuple[int, ...]
    step: int
    trace: tuple[TraceStep, ...] = field(default=())
    rotation: int = 0

    def zero_based(self) -> tuple[list[int], list[int]]:
        return [r - 1 for r in self.R], [c - 1 for c in self.C]

    def to_json(self) -> dict:
        return {"n": self.n, "subset": list(self.subset), "R": list(self.R),
                "C": list(self.C), "step": self.step, "rotation": self.rotation,
                "trace": [s.to_json() for s in self.trace]}


def _cyc(i: int, n: int) -> int:
    return (i - 1) % n + 1


def _isolated(n: int, subset: Sequence[int]) -> bool:
    s = set(subset)
    for i in subset:
        if not ({_cyc(i - 1, n), _cyc(i - 2, n)} & s):
            return True
        if not ({_cyc(i + 1, n), _cyc(i + 2, n)} & s):
            return True
    return False


def selected_minor(a: Sequence[int], sel: IndexSelection) -> int:
    """Signed determinant of the permuted Laplacian of ``a`` restricted to ``sel``."""
    rows, cols = sel.zero_based()
    return det(permuted_laplacian(a).submatrix(rows, cols))


def _primes(count: int, start: int = 2) -> list[int]:
    out = []
    p = max(start, 2)
    while len(out) < count:
        if all(p % q for q in range(2, math.isqrt(p) + 1)):
            out.append(p)
        p += 1
    return out


def generic_multiplicities(n: int) -> list[list[int]]:
    """Two pairwise coprime substitute vectors for the determinant post-check."""
    return [_primes(n), _primes(n, start=101)]


def _check_failure(sel: IndexSelection) -> str | None:
    for a in generic_multiplicities(sel.n):
        want = math.prod(a[i - 1] for i in sel.subset)
        got = selected_minor(a, sel)
        if abs(got) != want:
            return (f"n={sel.n}, I={list(sel.subset)}: R={list(sel.R)}, C={list(sel.C)} "
                    f"gives det {got} at multiplicities {a}, expected +-{want}")
    return None


def _run_selection(n: int, subset: tuple[int, ...], shift: int) -> IndexSelection:
    """Steps 1 and 2 on the labels ``i - shift``, mapped back afterwards."""
    labels = sorted(_cyc(i - shift, n) for i in subset)
    if _isolated(n, labels):
        return IndexSelection(n, subset, subset, subset, step=1, rotation=shift)
    r, c = list(labels), list(labels)
    trace = []

    def back(xs):
        return tuple(_cyc(x + shift, n) for x in xs)

    for it, k in enumerate(range(len(labels), 1, -1), start=1):
        gap = r[k - 1] - r[k - 2]
        changed = gap == 2
        if changed:
            r[k - 2] = _cyc(r[k - 2] + 1, n)
            c[k - 2] = _cyc(c[k - 2] - 1, n)
        trace.append(TraceStep(it, k, gap, back(r), back(c), changed))
    return IndexSelection(n, subset, back(r), back(c), step=2,
                          trace=tuple(trace), rotation=shift)


def select_minor_indices(n: int, subset: Sequence[int], cyclic_retry: bool = True) -> IndexSelection:
    """Rows ``R`` and columns ``C`` of the permuted Laplacian whose minor is ``+-prod_{i in I} a_i``.

    If some ``-a_i`` is alone in its row or column of the ``I x I``
    submatrix, that submatrix already works (step 1). Otherwise walk ``k``
    down from ``t`` to 2 and, whenever ``R_k - R_{k-1} = 2``, shift entry
    ``k - 1`` to take ``-a`` from the lowest band: ``R_{k-1} += 1``,
    ``C_{k-1} -= 1`` (wrapping into ``1..n``).

    Every result is checked numerically. When the loop wraps past ``n`` it
    can repeat a column; with ``cyclic_retry`` the same procedure is rerun
    on cyclically relabelled indices (``L'`` is invariant under rotating
    labels) and the first rotation that passes is returned. Without a
    passing selection :class:`MinorSelectionError` is raised.
    """
    if n < 3:
        raise ValueError("minor selection needs n >= 3")
    subset = tuple(sorted(int(i) for i in subset))
    t = len(subset)
    if t < 1:
        raise ValueError("index subset is empty")
    if t > n - 2:
        raise ValueError(f"subset of size {t} exceeds n - 2 = {n - 2}")
    if len(set(subset)) != t or not all(1 <= i <= n for i in subset):
        raise ValueError(f"subset {list(subset)} must hold distinct indices in 1..{n}")

    sel = _run_selection(n, subset, 0)
    failure = _check_failure(sel)
    if failure is None:
        return sel
    if cyclic_retry:
        for shift in range(1, n):
            sel = _run_selection(n, subset, shift)
            if _check_failure(sel) is None:
                return sel
    raise MinorSelectionError(failure)


def verify_selected_minor(a: Sequence[int], subset: Sequence[int]) -> bool:
    """Whether the selected minor evaluates to ``+-prod_{i in I} a_i`` at ``a``."""
    a = as_multiplicities(a)
    sel = select_minor_indices(len(a), subset)
    return abs(selected_minor(a, sel)) == math.prod(a[i - 1] for i in sel.subset)
