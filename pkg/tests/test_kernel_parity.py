"""The compiled and pure kernels must agree bit-for-bit: same witnesses,
same node counts, same exhaustion flags."""

import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bergelab import _spectrum as pure

cy = pytest.importorskip("bergelab._spectrum_cy")


def random_edges(n, m, seed, r=3):
    rng = random.Random(seed)
    universe = list(combinations(range(n), r))
    rng.shuffle(universe)
    return tuple(sorted(universe[:m]))


class TestParity:
    @given(
        st.integers(4, 9),
        st.integers(0, 30),
        st.integers(0, 10**6),
        st.sampled_from([10, 100, 10**4, 10**7]),
    )
    @settings(max_examples=150, deadline=None)
    def test_matches_pure(self, n, m, seed, budget):
        edges = random_edges(n, min(m, 25), seed)
        a = pure.spectrum_search(n, edges, 3, n, budget)
        b = cy.spectrum_search(n, edges, 3, n, budget)
        assert a == b

    def test_k7(self):
        edges = tuple(combinations(range(7), 3))
        a = pure.spectrum_search(7, edges, 3, 7, 10**7)
        b = cy.spectrum_search(7, edges, 3, 7, 10**7)
        assert a == b
        assert [h[0] for h in a[0]] == [3, 4, 5, 6, 7]

    @given(st.integers(4, 8), st.integers(0, 10**6))
    @settings(max_examples=40, deadline=None)
    def test_mixed_sizes(self, n, seed):
        rng = random.Random(seed)
        edges = set()
        for _ in range(rng.randrange(1, 10)):
            size = rng.choice((2, 3, 4))
            if size <= n:
                edges.add(tuple(sorted(rng.sample(range(n), size))))
        edges = tuple(sorted(edges))
        a = pure.spectrum_search(n, edges, 3, n, 10**6)
        b = cy.spectrum_search(n, edges, 3, n, 10**6)
        assert a == b

    def test_large_vertex_guard(self):
        with pytest.raises(ValueError):
            cy.spectrum_search(65, ((0, 1, 2),), 3, 5, 100)
