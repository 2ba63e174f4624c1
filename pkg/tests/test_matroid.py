"""Matroid construction, characteristic polynomials, and extensions.

The characteristic polynomial has an independent oracle: the Whitney
rank expansion chi(t) = sum over subsets S of (-1)^|S| t^(r - r(S)),
which only uses rank_of and never touches the Moebius recursion.
"""

from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tropsurf import matroid as mt
from tropsurf.errors import MatroidError


def whitney_char_poly(m):
    coeffs = [0] * (m.rank + 1)
    for size in range(m.n + 1):
        for s in combinations(range(m.n), size):
            coeffs[m.rank - m.rank_of(s)] += (-1) ** size
    coeffs.reverse()
    return tuple(coeffs)


@st.composite
def matroids(draw):
    n = draw(st.integers(min_value=3, max_value=7))
    target = draw(st.integers(min_value=0, max_value=4))
    pool = [c for k in range(3, n) for c in combinations(range(n), k)]
    chosen = []
    for line in draw(st.permutations(pool)):
        if len(chosen) == target:
            break
        if all(len(set(line) & set(c)) <= 1 for c in chosen):
            chosen.append(line)
    return mt.from_lines(n, chosen)


matroids = matroids()


class TestConstruction:
    def test_uniform_flat_counts(self):
        u = mt.uniform(3, 5)
        assert len(u.flats(1)) == 5
        assert len(u.flats(2)) == 10
        assert u.is_simple()

    def test_from_lines_braid(self, braid):
        assert braid.rank == 3
        assert sorted(len(f) for f in braid.flats(2)) == [2, 2, 2, 3, 3, 3, 3]

    def test_from_lines_rejects_overlapping_lines(self):
        with pytest.raises(MatroidError):
            mt.from_lines(5, [[0, 1, 2], [0, 1, 3]])

    def test_from_lines_rejects_full_ground_set(self):
        with pytest.raises(MatroidError):
            mt.from_lines(3, [[0, 1, 2]])

    def test_validation_rejects_broken_cover(self):
        with pytest.raises(MatroidError):
            mt.Matroid(
                3,
                (
                    (frozenset(),),
                    (frozenset([0]), frozenset([1]), frozenset([2])),
                    (frozenset([0, 1]),),  # {2} not covered at rank 2
                    (frozenset([0, 1, 2]),),
                ),
            )

    def test_closure_and_rank(self, braid):
        assert braid.closure([0, 1]) == frozenset([0, 1, 3])
        assert braid.rank_of([0, 1]) == 2
        assert braid.rank_of([0, 4]) == 2
        assert braid.rank_of([0, 1, 2]) == 3

    def test_direct_sum(self):
        m = mt.direct_sum(mt.uniform(2, 3), mt.uniform(1, 1))
        assert m.rank == 3
        assert frozenset([0, 1, 2]) in m.flats(2)
        assert m.point_count(3) == 3

    def test_parallel_connection(self):
        m = mt.parallel_connection(2, 2)
        assert m.n == 5
        assert frozenset([0, 1, 2]) in m.flats(2)
        assert frozenset([0, 3, 4]) in m.flats(2)
        assert m.point_count(0) == 2
        assert mt.is_isomorphic(mt.parallel_connection(1, 1), mt.uniform(3, 3))


class TestCharPoly:
    def test_u34(self, u34):
        # chi = (t-1)(t^2 - 3t + 3)
        assert mt.characteristic_polynomial(u34) == (1, -4, 6, -3)
        assert mt.reduced_characteristic_polynomial(u34) == (1, -3, 3)
        assert mt.chi_bar_at_one(u34) == 1

    def test_braid(self, braid):
        # chi of the K4 graphic matroid: (t-1)(t-2)(t-3)
        assert mt.characteristic_polynomial(braid) == (1, -6, 11, -6)
        assert mt.chi_bar_at_one(braid) == 2

    def test_u33(self, u33):
        assert mt.characteristic_polynomial(u33) == (1, -3, 3, -1)
        assert mt.chi_bar_at_one(u33) == 0

    @settings(max_examples=40, deadline=None)
    @given(matroids)
    def test_whitney_oracle(self, m):
        assert mt.characteristic_polynomial(m) == whitney_char_poly(m)

    @settings(max_examples=40, deadline=None)
    @given(matroids)
    def test_line_count_formula(self, m):
        assert mt.chi_bar_at_one(m) == mt.chi_bar_at_one_from_lines(m)

    @settings(max_examples=40, deadline=None)
    @given(matroids)
    def test_covering_identity(self, m):
        # every pair of elements lies on exactly one rank-2 flat
        nn = m.n - 1
        assert nn * (nn + 1) == sum(len(f) * (len(f) - 1) for f in m.flats(2))


class TestExtension:
    def test_free_extension_of_u33(self, u33, u34):
        assert mt.is_isomorphic(mt.extend_by_line(u33), u34)

    def test_extension_through_point(self, u33):
        m = mt.extend_by_line(u33, [[0, 1]])
        assert frozenset([0, 1, 3]) in m.flats(2)
        assert frozenset([2, 3]) in m.flats(2)

    def test_extension_rejects_meeting_flats(self, braid):
        with pytest.raises(MatroidError):
            mt.extend_by_line(braid, [[0, 1, 3], [1, 2, 4]])

    @settings(max_examples=30, deadline=None)
    @given(matroids, st.randoms())
    def test_extend_then_delete(self, m, rng):
        flats = [f for f in m.flats(2)]
        rng.shuffle(flats)
        chosen = []
        for f in flats:
            if all(not (f & g) for g in chosen):
                chosen.append(f)
        chosen = chosen[: rng.randint(0, 2)]
        extended = mt.extend_by_line(m, chosen)
        assert mt.is_isomorphic(mt.delete(extended, m.n), m)

    def test_delete_braid(self, braid):
        m = mt.delete(braid, 5)
        assert m.n == 5
        assert sorted(len(f) for f in m.flats(2)) == [2, 2, 2, 2, 3, 3]


class TestIsomorphism:
    def test_relabeled_braid(self, braid):
        perm = [3, 0, 4, 1, 5, 2]
        lines = [[perm[x] for x in f] for f in braid.flats(2) if len(f) >= 3]
        other = mt.from_lines(6, lines)
        assert mt.is_isomorphic(braid, other)

    def test_distinguishes_configurations(self):
        a = mt.from_lines(6, [[0, 1, 2], [0, 3, 4]])
        b = mt.from_lines(6, [[0, 1, 2], [3, 4, 5]])
        assert not mt.is_isomorphic(a, b)

    def test_different_sizes(self, u33, u34):
        assert not mt.is_isomorphic(u33, u34)


class TestEnumeration:
    def test_counts(self):
        assert len(mt.enumerate_simple_rank3(3)) == 1
        assert len(mt.enumerate_simple_rank3(4)) == 5
        assert len(mt.enumerate_simple_rank3(5)) == 31

    def test_all_simple_rank3(self):
        for m in mt.enumerate_simple_rank3(5):
            assert m.rank == 3
            assert m.is_simple()
