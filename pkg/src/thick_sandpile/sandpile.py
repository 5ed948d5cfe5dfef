"""Sandpile groups of multigraphs and the monodromy pairing."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .linalg import IntegerMatrix, integer_inverse, smith_normal_form, solve_integer, solve_rational
from .multigraph import GraphError, Multigraph, laplacian, reduced_laplacian

__all__ = [
    "AbelianGroup",
    "DisconnectedGraphError",
    "DivisorError",
    "sandpile_group",
    "canonicalize_group",
    "groups_isomorphic",
    "monodromy_pairing",
    "divisor_class_equal",
    "class_representatives",
]


class DisconnectedGraphError(GraphError):
    """The graph is disconnected, so its cokernel is infinite."""


class DivisorError(ValueError):
    """A divisor has the wrong length or degree."""


@dataclass(frozen=True)
class AbelianGroup:
    """Finite abelian group ``Z_f1 + ... + Z_fr`` in invariant-factor form.

    Factors are all at least 2 and each divides the next. The trivial group
    has no factors.
    """

    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        f = tuple(int(x) for x in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", f)
        if any(x < 2 for x in f):
            raise ValueError(f"invariant factors must be >= 2, got {list(f)}")
        if any(y % x for x, y in zip(f, f[1:])):
            raise ValueError(f"invariant factors {list(f)} do not form a divisibility chain")

    @property
    def order(self) -> int:
        n = 1
        for x in self.invariant_factors:
            n *= x
        return n

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    def to_json(self) -> dict:
        return {"invariant_factors": list(self.invariant_factors), "order": self.order}

    @classmethod
    def from_json(cls, data: Mapping) -> "AbelianGroup":
        g = cls(tuple(data["invariant_factors"]))
        if "order" in data and data["order"] != g.order:
            raise ValueError(f"order {data['order']} disagrees with factors {list(g.invariant_factors)}")
        return g

    def __str__(self) -> str:
        if not self.invariant_factors:
            return "0"
        return " + ".join(f"Z_{f}" for f in self.invariant_factors)


def _from_diagonal(diag: Iterable[int]) -> AbelianGroup:
    return AbelianGroup(tuple(d for d in diag if d > 1))


def sandpile_group(g: Multigraph, sink: int | None = None) -> AbelianGroup:
    """Cokernel of the reduced Laplacian, via its Smith normal form.

    The result does not depend on ``sink``; vertex 0 is used by default.
    """
    if not g.is_connected():
        raise DisconnectedGraphError("sandpile group of a disconnected graph is infinite")
    snf = smith_normal_form(reduced_laplacian(g, 0 if sink is None else sink))
    return _from_diagonal(snf.diag)


def canonicalize_group(orders: Sequence[int]) -> AbelianGroup:
    """Invariant-factor form of ``Z_n1 + Z_n2 + ...``."""
    orders = [int(x) for x in orders]
    if any(x < 1 for x in orders):
        raise ValueError(f"cyclic orders must be positive, got {orders}")
    return _from_diagonal(smith_normal_form(IntegerMatrix.diagonal(orders)).diag)


def groups_isomorphic(g1: AbelianGroup, g2: AbelianGroup) -> bool:
    return g1.invariant_factors == g2.invariant_factors


def _check_divisor(g: Multigraph, d: Sequence[int], name: str) -> list[int]:
    d = [int(x) for x in d]
    if len(d) != g.vertex_count:
        raise DivisorError(f"divisor {name} has {len(d)} entries, graph has {g.vertex_count} vertices")
    return d


def monodromy_pairing(g: Multigraph, a: Sequence[int], b: Sequence[int]) -> Fraction:
    """``<[a], [b]>`` in Q/Z, returned as a Fraction in ``[0, 1)``.

    Solves ``L mu = b`` exactly with the last vertex grounded and returns
    ``a . mu mod 1``.
    """
    if not g.is_connected():
        raise DisconnectedGraphError("monodromy pairing needs a connected graph")
    a = _check_divisor(g, a, "a")
    b = _check_divisor(g, b, "b")
    for name, d in (("a", a), ("b", b)):
        if sum(d):
            raise DivisorError(f"divisor {name} has degree {sum(d)}, expected 0")
    n = g.vertex_count
    mu = solve_rational(reduced_laplacian(g, n - 1), b[:-1]) + [Fraction(0)]
    return sum((x * y for x, y in zip(a, mu)), Fraction(0)) % 1


def divisor_class_equal(g: Multigraph, a: Sequence[int], b: Sequence[int]) -> bool:
    """Whether ``a - b`` lies in the integer image of the Laplacian."""
    a = _check_divisor(g, a, "a")
    b = _check_divisor(g, b, "b")
    if sum(a) != sum(b):
        return False
    diff = [x - y for x, y in zip(a, b)]
    return solve_integer(laplacian(g), diff) is not None


def class_representatives(g: Multigraph, sink: int = 0) -> list[list[int]]:
    """One degree-0 divisor from every class of the sandpile group.

    With ``U D V`` the Smith form of the reduced Laplacian, the cokernel is
    ``prod Z_{d_i}`` in the coordinates ``y = U x``; each box point ``y`` is
    pulled back by ``U^-1`` and the sink absorbs the degree.
    """
    if not g.is_connected():
        raise DisconnectedGraphError("sandpile group of a disconnected graph is infinite")
    n = g.vertex_count
    if n == 1:
        return [[0]]
    snf = smith_normal_form(reduced_laplacian(g, sink))
    u_inv = integer_inverse(snf.U)
    reps = []
    for y in itertools.product(*(range(d) for d in snf.diag)):
        x = u_inv.matvec(list(y))
        x.insert(sink, -sum(x))
        reps.append(x)
    return reps
