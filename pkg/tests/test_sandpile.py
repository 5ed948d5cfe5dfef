import random
from fractions import Fraction

import pytest

from thick_sandpile.multigraph import Multigraph, build_basic, build_thick_cycle, laplacian
from thick_sandpile.sandpile import (
    AbelianGroup,
    DisconnectedGraphError,
    DivisorError,
    canonicalize_group,
    class_representatives,
    divisor_class_equal,
    groups_isomorphic,
    monodromy_pairing,
    sandpile_group,
)
from thick_sandpile.thick_cycle import thick_cycle_group

from oracles import brute_minors_gcd, group_of_diagonal

K4 = Multigraph(4, [(i, j, 1) for i in range(4) for j in range(i + 1, 4)])


class TestAbelianGroup:
    def test_validation(self):
        with pytest.raises(ValueError):
            AbelianGroup((1, 2))
        with pytest.raises(ValueError):
            AbelianGroup((4, 6))

    def test_trivial(self):
        g = AbelianGroup()
        assert g.order == 1 and str(g) == "0"
        assert g.to_json() == {"invariant_factors": [], "order": 1}

    def test_json_round_trip(self):
        g = AbelianGroup((2, 138))
        assert AbelianGroup.from_json(g.to_json()) == g
        with pytest.raises(ValueError):
            AbelianGroup.from_json({"invariant_factors": [2], "order": 3})


class TestSandpileGroup:
    def test_thick_32423(self):
        assert sandpile_group(build_thick_cycle((3, 2, 4, 2, 3))) == AbelianGroup((2, 138))

    def test_cycles(self):
        for n in range(3, 9):
            assert sandpile_group(build_basic("cycle", n)) == AbelianGroup((n,))

    def test_k4(self):
        assert sandpile_group(K4) == AbelianGroup((4, 4))

    def test_trivial_groups(self):
        assert sandpile_group(build_basic("path", 2)) == AbelianGroup()
        assert sandpile_group(Multigraph(1)) == AbelianGroup()

    def test_disconnected(self):
        with pytest.raises(DisconnectedGraphError):
            sandpile_group(Multigraph(3, [(0, 1, 1)]))

    def test_sink_independence_and_order(self, corpus):
        from thick_sandpile.multigraph import reduced_laplacian, spanning_tree_count

        for name, g in corpus.items():
            groups = {sandpile_group(g, s) for s in range(g.vertex_count)}
            assert len(groups) == 1, name
            (grp,) = groups
            assert grp.order == spanning_tree_count(g)
            if 1 < g.vertex_count <= 5:
                # invariant factors from ratios of brute-force minor gcds
                red = reduced_laplacian(g, 0).to_rows()
                m = [1] + [brute_minors_gcd(red, t) for t in range(1, len(red) + 1)]
                factors = [m[t] // m[t - 1] for t in range(1, len(m))]
                assert list(grp.invariant_factors) == [f for f in factors if f > 1], name


class TestCanonicalize:
    @pytest.mark.parametrize("orders,expected", [
        ([2, 3], (6,)), ([2, 4], (2, 4)), ([6, 4], (2, 12)), ([1, 1], ()),
    ])
    def test_examples(self, orders, expected):
        assert canonicalize_group(orders) == AbelianGroup(expected)

    def test_against_prime_powers(self):
        rng = random.Random(2)
        for _ in range(300):
            orders = [rng.randint(1, 60) for _ in range(rng.randint(1, 5))]
            assert list(canonicalize_group(orders).invariant_factors) == group_of_diagonal(orders)

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            canonicalize_group([2, 0])


def test_isomorphic():
    assert groups_isomorphic(AbelianGroup((6,)), canonicalize_group([2, 3]))
    assert not groups_isomorphic(AbelianGroup((2, 2)), AbelianGroup((4,)))
    g = build_thick_cycle((3, 2, 4, 2, 3))
    assert groups_isomorphic(thick_cycle_group((3, 2, 4, 2, 3)), sandpile_group(g))


class TestPairing:
    def test_zero_divisor(self):
        c3 = build_basic("cycle", 3)
        for b in ([0, 0, 0], [-1, 1, 0], [2, 0, -2]):
            assert monodromy_pairing(c3, [0, 0, 0], b) == 0

    def test_three_cycle(self):
        c3 = build_basic("cycle", 3)
        assert monodromy_pairing(c3, [-1, 1, 0], [-1, 1, 0]) == Fraction(2, 3)

    def test_two_vertex_thick_cycle(self):
        g = build_thick_cycle((1, 2))
        assert monodromy_pairing(g, [-1, 1], [-1, 1]) == Fraction(1, 3)

    def test_value_in_unit_interval(self):
        g = build_thick_cycle((3, 2, 4, 2, 3))
        v = monodromy_pairing(g, [5, -3, 0, 0, -2], [-7, 1, 1, 1, 4])
        assert 0 <= v < 1

    def test_errors(self):
        c3 = build_basic("cycle", 3)
        with pytest.raises(DivisorError):
            monodromy_pairing(c3, [1, 0, 0], [0, 0, 0])
        with pytest.raises(DivisorError):
            monodromy_pairing(c3, [1, -1], [0, 0, 0])
        with pytest.raises(DisconnectedGraphError):
            monodromy_pairing(Multigraph(3, [(0, 1, 1)]), [1, -1, 0], [1, -1, 0])

    def test_ground_choice_irrelevant(self):
        # a . mu with mu from any grounding gives the same class mod 1
        from thick_sandpile.linalg import solve_rational
        from thick_sandpile.multigraph import reduced_laplacian

        g = build_thick_cycle((3, 2, 4, 2, 3))
        a, b = [1, 2, -3, 0, 0], [0, -1, 0, 4, -3]
        values = set()
        for s in range(5):
            keep = [i for i in range(5) if i != s]
            mu = solve_rational(reduced_laplacian(g, s), [b[i] for i in keep])
            mu.insert(s, Fraction(0))
            values.add(sum(x * y for x, y in zip(a, mu)) % 1)
        assert values == {monodromy_pairing(g, a, b)}


class TestDivisorClasses:
    def test_examples(self):
        c3 = build_basic("cycle", 3)
        assert divisor_class_equal(c3, [1, 2, 3], [1, 2, 3])
        assert divisor_class_equal(c3, [-3, 3, 0], [0, 0, 0])
        assert not divisor_class_equal(c3, [-1, 1, 0], [0, 0, 0])
        assert not divisor_class_equal(c3, [1, 0, 0], [0, 0, 0])

    def test_laplacian_shift(self):
        g = build_thick_cycle((1, 3, 3, 3, 3))
        lap = laplacian(g)
        x = [2, -1, 0, 5, 3]
        a = [1, -1, 2, 0, -2]
        shifted = [p + q for p, q in zip(a, lap.matvec(x))]
        assert divisor_class_equal(g, a, shifted)

    def test_representatives_are_distinct_classes(self, corpus):
        for name, g in corpus.items():
            grp = sandpile_group(g)
            if grp.order > 30:
                continue
            reps = class_representatives(g)
            assert len(reps) == grp.order, name
            assert all(sum(r) == 0 for r in reps)
            for i, r in enumerate(reps):
                for s in reps[i + 1:]:
                    assert not divisor_class_equal(g, r, s), name
