import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bergelab import finder as fd
from bergelab.certify import verify_cycle
from bergelab.errors import NotLinear, PreconditionUnmet
from bergelab.generators import (
    complete_r,
    random_linear_r,
    steiner_triple,
    tight_path_hypergraph,
)
from bergelab.hypergraph import Hypergraph, average_degree
from bergelab.oracle import oracle_spectrum
from bergelab.skeleton import build_skeleton, classify_levels


def down_heavy_fixture(seed=0):
    """Two-level fixture whose level-2 down class meets the (k+2)|L_i| bound
    for k = 2: 8 co-neighbor parents each a perfect matching over 12 leaves."""
    rng = random.Random(seed)
    root = 0
    l1 = list(range(1, 11))        # 1..10; 1 and 2 parent the leaves
    l2 = list(range(11, 23))       # 12 leaves
    aux = iter(range(23, 200))
    edges = [(root, j, next(aux)) for j in l1]
    edges += [(1, v, next(aux)) for v in l2[:6]]
    edges += [(2, v, next(aux)) for v in l2[6:]]
    # 1-factorization of K_12 via the round-robin rotation
    m = len(l2)
    rounds = []
    circle = l2[1:]
    for _ in range(m - 1):
        pairs = [(l2[0], circle[0])]
        for t in range(1, m // 2):
            pairs.append((circle[t], circle[-t]))
        rounds.append(pairs)
        circle = circle[1:] + circle[:1]
    rng.shuffle(rounds)
    for p, matching in zip(range(3, 11), rounds):
        for u, w in matching:
            edges.append(tuple(sorted((u, w, p))))
    n = max(max(e) for e in edges) + 1
    return Hypergraph.from_edges(n, edges, uniformity=3)


def case1_grid_fixture(g):
    """g^2 slice edges {u_i, v_j, c_i}: marked pair (u_i, v_j) has co-degree 1,
    the apex pair (u_i, c_i) has co-degree g (high)."""
    edges = []
    for i in range(g):
        for j in range(g):
            edges.append((i, g + j, 2 * g + i))
    return Hypergraph.from_edges(3 * g, edges, uniformity=3)


def check_run(H, run, k):
    lens = run.lengths()
    assert len(lens) == k
    assert all(b - a == 1 for a, b in zip(lens, lens[1:]))
    assert lens[0] <= run.shortest_bound
    for w in run.cycles:
        assert verify_cycle(H, w)


class TestTightPathCycles:
    @pytest.mark.parametrize("r", (3, 4, 5))
    @pytest.mark.parametrize("m", range(3, 13))
    def test_exact_lengths(self, r, m):
        H = tight_path_hypergraph(m + 1, r)
        tp = fd.TightPath(tuple(range(m + r)), r)
        wits = fd.tight_path_cycles(tp)
        assert sorted(w.length for w in wits) == list(range(3, m + 1))
        for w in wits:
            assert verify_cycle(H, w)

    def test_smallest(self):
        H = tight_path_hypergraph(4, 3)
        tp = fd.TightPath(tuple(range(6)), 3)
        wits = fd.tight_path_cycles(tp)
        assert [w.length for w in wits] == [3]
        assert verify_cycle(H, wits[0])

    def test_too_short(self):
        with pytest.raises(PreconditionUnmet):
            fd.tight_path_cycles(fd.TightPath(tuple(range(5)), 3))


class TestSplitByCodegree:
    def test_k5_dense(self):
        H = complete_r(5, 3)
        out = fd.split_by_codegree(H, 1)
        assert isinstance(out, fd.DenseCore)
        assert out.edge_ids == tuple(range(10))

    def test_fano_slice(self):
        H = steiner_triple(7)
        out = fd.split_by_codegree(H, 1)
        assert isinstance(out, fd.MarkedSlice)
        assert len(out.entries) == 7
        marks = [m for _, m, _ in out.entries]
        assert len(set(marks)) == 7
        assert all(c1 for _, _, c1 in out.entries)
        for ei, m, _ in out.entries:
            assert set(m) <= set(H.edges[ei])

    def test_ledger_counterexample_slice_is_paper_faithful(self):
        # lex-least greedy can leave an edge with no slice-co-degree-1 pair
        H = Hypergraph.from_edges(
            9,
            [
                (0, 1, 2),  # abc
                (0, 1, 3),  # abd
                (0, 1, 6),  # abg
                (0, 2, 4),  # ace
                (0, 2, 7),  # acx
                (1, 2, 5),  # bcf
                (1, 2, 8),  # bcy
            ],
        )
        out = fd.split_by_codegree(H, 2)
        assert isinstance(out, fd.MarkedSlice)
        marks = [m for _, m, _ in out.entries]
        assert len(set(marks)) == len(marks)
        assert len(out.entries) * 2 >= len(H.edges)
        assert any(not c1 for _, _, c1 in out.entries)

    @given(st.integers(0, 10**6), st.integers(1, 3), st.integers(3, 4))
    @settings(max_examples=120, deadline=None)
    def test_dichotomy_random(self, seed, k, r):
        rng = random.Random(seed)
        n = rng.randrange(r + 2, 10)
        universe = list(combinations(range(n), r))
        rng.shuffle(universe)
        H = Hypergraph.from_edges(
            n, universe[: rng.randrange(1, len(universe))], uniformity=r
        )
        out = fd.split_by_codegree(H, k)
        if isinstance(out, fd.DenseCore):
            sub, _ = H.restrict(out.edge_ids)
            counts = fd._codegree_subsets(sub)
            assert min(counts.values()) >= k + 1
        else:
            assert len(out.entries) * k >= len(H.edges)
            marks = [m for _, m, _ in out.entries]
            assert len(set(marks)) == len(marks)
            for ei, m, _ in out.entries:
                assert set(m) <= set(H.edges[ei])


class TestMinCodegreeCycles:
    def test_k7_k3(self):
        H = complete_r(7, 3)
        wits = fd.min_codegree_cycles(H, 3)
        assert sorted(w.length for w in wits) == [3, 4, 5]
        for w in wits:
            assert verify_cycle(H, w)

    def test_k6_k3(self):
        H = complete_r(6, 3)
        wits = fd.min_codegree_cycles(H, 3)
        assert sorted(w.length for w in wits) == [3, 4, 5]

    def test_k1(self):
        H = complete_r(5, 3)
        wits = fd.min_codegree_cycles(H, 1)
        assert [w.length for w in wits] == [3]

    def test_precondition(self):
        H = steiner_triple(7)
        with pytest.raises(PreconditionUnmet):
            fd.min_codegree_cycles(H, 1)

    @given(st.integers(0, 10**6), st.integers(1, 3), st.integers(3, 4))
    @settings(max_examples=60, deadline=None)
    def test_disjoint_cliques(self, seed, k, r):
        rng = random.Random(seed)
        sizes = [rng.randrange(r + k, r + k + 3) for _ in range(rng.randrange(1, 3))]
        edges, base = [], 0
        for s in sizes:
            edges += [
                tuple(sorted(base + x for x in e))
                for e in combinations(range(s), r)
            ]
            base += s
        H = Hypergraph.from_edges(base, edges, uniformity=r)
        wits = fd.min_codegree_cycles(H, k)
        assert sorted(w.length for w in wits) == list(range(3, k + 3))
        for w in wits:
            assert verify_cycle(H, w)


class TestDownEdges:
    def test_fixture_fires(self):
        H = down_heavy_fixture()
        sk = build_skeleton(H, 0)
        cls = classify_levels(H, sk)
        assert len(cls.down[2]) == 48
        assert len(sk.levels[2]) == 12
        run = fd.cycles_from_down_edges(H, sk, 2, 2, classes=cls)
        check_run(H, run, 2)
        assert run.shortest_bound == 4
        assert run.lengths() == (4, 5)

    def test_precondition(self):
        H = steiner_triple(7)
        sk = build_skeleton(H, 0)
        with pytest.raises(PreconditionUnmet):
            fd.cycles_from_down_edges(H, sk, 1, 5)

    @pytest.mark.parametrize("seed", range(50))
    def test_heavy_seeds(self, seed):
        H = down_heavy_fixture(seed)
        sk = build_skeleton(H, 0)
        run = fd.cycles_from_down_edges(H, sk, 2, 2)
        check_run(H, run, 2)
        assert run.lengths()[0] <= 4  # a <= 2i with i = 2


def pair_route_fixture(swap=False):
    """Level-2 component whose bichromatic mass sits in one color class:
    12 within-level edges pairing one branch's leaves through the other's.
    With swap=True the paired leaves hang under the second branch, driving
    the second color class instead."""
    aux = iter(range(100, 200))
    A = list(range(3, 9))     # paired leaves
    B = list(range(9, 13))    # third vertices
    pa, pb = (2, 1) if swap else (1, 2)
    edges = [(0, 1, next(aux)), (0, 2, next(aux))]
    edges += [(pa, a, next(aux)) for a in A]
    edges += [(pb, b, next(aux)) for b in B]
    matchings = [
        [(3, 4), (5, 6), (7, 8)],
        [(3, 5), (4, 7), (6, 8)],
        [(3, 6), (4, 8), (5, 7)],
        [(3, 7), (4, 6), (5, 8)],
    ]
    for b, matching in zip(B, matchings):
        for u, w in matching:
            edges.append(tuple(sorted((u, w, b))))
    n = max(max(e) for e in edges) + 1
    return Hypergraph.from_edges(n, edges, uniformity=3)


def deep_anchor_fixture(seed=0):
    """The down-heavy gadget hung below a two-edge stalk, so the common
    ancestor of the co-neighbors sits at level 2 rather than at the root."""
    rng = random.Random(seed)
    aux = iter(range(300, 500))
    edges = [(0, 1, next(aux)), (1, 2, next(aux))]
    parents = list(range(3, 13))    # children of 2 (level 3)
    leaves = list(range(13, 25))    # level 4
    edges += [(2, p, next(aux)) for p in parents]
    edges += [tuple(sorted((parents[0], v, next(aux)))) for v in leaves[:6]]
    edges += [tuple(sorted((parents[1], v, next(aux)))) for v in leaves[6:]]
    m = len(leaves)
    rounds = []
    circle = leaves[1:]
    for _ in range(m - 1):
        pairs = [(leaves[0], circle[0])]
        for t in range(1, m // 2):
            pairs.append((circle[t], circle[-t]))
        rounds.append(pairs)
        circle = circle[1:] + circle[:1]
    rng.shuffle(rounds)
    for p, matching in zip(parents[2:], rounds):
        for u, w in matching:
            edges.append(tuple(sorted((u, w, p))))
    n = max(max(e) for e in edges) + 1
    return Hypergraph.from_edges(n, edges, uniformity=3)


def mono_route_upper_fixture():
    """Mono-heavy component whose bridging edge reaches into the next
    level, so the two-colored endpoint of the good path sits in L_{i+1}."""
    sts = steiner_triple(43)
    aux = iter(range(300, 400))
    shift = 6
    edges = [(0, 1, next(aux)), (0, 2, next(aux))]
    edges += [(1, 3, next(aux)), (1, 5, next(aux))]   # y1 = 3 and b = 5
    edges += [(3, 4, next(aux))]                      # x3 = 4 at level 3
    edges += [(2, v + shift, next(aux)) for v in range(43)]
    edges += [tuple(v + shift for v in e) for e in sts.edges]
    edges.append((4, 5, shift))                       # bridge into level 3
    n = max(max(e) for e in edges) + 1
    return Hypergraph.from_edges(n, edges, uniformity=3)


def ladder_route_fixture(t=6):
    """Level-2 component of transversal edges joining the two branches into
    level 3: exactly one vertex in each of S1, S2, and the next level."""
    aux = iter(range(400, 600))
    C = list(range(3, 3 + t))                 # children of 1, parents of W
    A = list(range(3 + t, 3 + 2 * t))         # children of 1, color 1
    B = list(range(3 + 2 * t, 3 + 3 * t))     # children of 2, color 2
    W = list(range(3 + 3 * t, 3 + 4 * t))     # level 3
    edges = [(0, 1, next(aux)), (0, 2, next(aux))]
    edges += [(1, c, next(aux)) for c in C]
    edges += [(1, a, next(aux)) for a in A]
    edges += [(2, b, next(aux)) for b in B]
    edges += [(c, w, next(aux)) for c, w in zip(C, W)]
    for i in range(t):
        for j in range(t):
            edges.append(tuple(sorted((A[i], B[j], W[(i + j) % t]))))
    n = max(max(e) for e in edges) + 1
    return Hypergraph.from_edges(n, edges, uniformity=3)


def mono_route_fixture():
    """An STS(43) embedded inside one branch's level 2 plus a single
    two-colored bridge edge: the monochromatic mass exceeds the bound."""
    sts = steiner_triple(43)
    aux = iter(range(300, 400))
    shift = 3
    edges = [(0, 1, next(aux)), (0, 2, next(aux))]
    edges += [(1, v + shift, next(aux)) for v in range(43)]
    edges += [(2, 46, next(aux)), (2, 47, next(aux))]
    edges += [tuple(v + shift for v in e) for e in sts.edges]
    edges.append((3, 46, 47))
    n = max(max(e) for e in edges) + 1
    return Hypergraph.from_edges(n, edges, uniformity=3)


class TestDichotomyRoutes:
    def test_pair_route(self):
        H = pair_route_fixture()
        sk = build_skeleton(H, 0)
        out = fd.cycles_or_level_bound(H, sk, 2, 2)
        assert isinstance(out, fd.ConsecutiveRun)
        check_run(H, out, 2)
        assert out.shortest_bound == 6

    def test_pair_route_second_class(self):
        H = pair_route_fixture(swap=True)
        sk = build_skeleton(H, 0)
        out = fd.cycles_or_level_bound(H, sk, 2, 2)
        assert isinstance(out, fd.ConsecutiveRun)
        check_run(H, out, 2)

    def test_ladder_route(self):
        H = ladder_route_fixture()
        sk = build_skeleton(H, 0)
        out = fd.cycles_or_level_bound(H, sk, 2, 2)
        assert isinstance(out, fd.ConsecutiveRun)
        check_run(H, out, 2)

    def test_mono_route(self):
        H = mono_route_fixture()
        sk = build_skeleton(H, 0)
        out = fd.cycles_or_level_bound(H, sk, 2, 2)
        assert isinstance(out, fd.ConsecutiveRun)
        check_run(H, out, 2)

    def test_mono_route_upper_endpoint(self):
        H = mono_route_upper_fixture()
        sk = build_skeleton(H, 0)
        assert sk.level_of()[4] == 3  # the bridge endpoint sits one level up
        out = fd.cycles_or_level_bound(H, sk, 2, 2)
        assert isinstance(out, fd.ConsecutiveRun)
        check_run(H, out, 2)
        assert out.lengths()[0] <= 6

    @pytest.mark.parametrize("seed", range(8))
    def test_deep_anchor_down_route(self, seed):
        H = deep_anchor_fixture(seed)
        sk = build_skeleton(H, 0)
        cls = classify_levels(H, sk)
        assert len(cls.down[4]) >= 4 * len(sk.levels[4])
        run = fd.cycles_from_down_edges(H, sk, 4, 2, classes=cls)
        check_run(H, run, 2)
        # the common ancestor sits at level 2, so the run starts at 2(4-2)
        assert run.lengths() == (4, 5)
        assert run.shortest_bound == 8


class TestLevelDichotomy:
    def test_sparse_certificate(self):
        H = steiner_triple(7)
        sk = build_skeleton(H, 0)
        out = fd.cycles_or_level_bound(H, sk, 1, 3)
        if isinstance(out, fd.LevelEdgeBound):
            assert out.counted <= out.bound
        else:
            check_run(H, out, 3)

    @given(st.integers(0, 10**6))
    @settings(max_examples=100, deadline=None)
    def test_dichotomy_random(self, seed):
        rng = random.Random(seed)
        n = rng.randrange(9, 26)
        H, _ = random_linear_r(n, 3, rng.randrange(3, 2 * n), seed=seed)
        if not H.edges:
            return
        root = min(H.edges[0])
        sk = build_skeleton(H, root)
        k = rng.choice((1, 2, 3))
        for i in range(1, sk.height + 1):
            out = fd.cycles_or_level_bound(H, sk, i, k)
            if isinstance(out, fd.ConsecutiveRun):
                check_run(H, out, k)
                assert out.shortest_bound == 2 * i + 2
            else:
                assert out.counted <= out.bound


class TestSkeletonSweep:
    def test_sts127_guaranteed(self):
        H = steiner_triple(127)
        assert average_degree(H) == 63
        run = fd.skeleton_sweep(H, 2)
        assert run is not None
        check_run(H, run, 2)

    def test_fano_below_threshold(self):
        H = steiner_triple(7)
        run = fd.skeleton_sweep(H, 2)
        if run is not None:
            check_run(H, run, 2)

    def test_not_linear(self):
        H = complete_r(5, 3)
        with pytest.raises(NotLinear):
            fd.skeleton_sweep(H, 1)


class TestFindLinearR:
    def test_lifted_4graph(self):
        H3 = down_heavy_fixture()
        fresh = iter(range(H3.n, H3.n + len(H3.edges)))
        quads = [e + (next(fresh),) for e in H3.edges]
        H4 = Hypergraph.from_edges(H3.n + len(H3.edges), quads, uniformity=4)
        run = fd.find_linear_r(H4, 2)
        assert run is not None
        check_run(H4, run, 2)
        # spines must come from the 3-graph engine verbatim
        run3 = fd.skeleton_sweep(H3, 2)
        assert run3 is not None
        assert tuple(w.spine for w in run.cycles) == tuple(w.spine for w in run3.cycles)

    def test_not_linear(self):
        with pytest.raises(NotLinear):
            fd.find_linear_r(complete_r(6, 4), 1)


class TestFindGeneral3:
    def test_dense_core_route(self):
        H = complete_r(35, 3)
        assert average_degree(H) >= fd.general_3_threshold(2)
        run = fd.find_general_3(H, 2)
        assert run is not None
        check_run(H, run, 2)
        assert run.lengths() == (3, 4)

    def test_case2_linear_slice(self):
        H = steiner_triple(127)
        run = fd.find_general_3(H, 2)
        assert run is not None
        check_run(H, run, 2)

    def test_case1_high_pairs(self):
        H = case1_grid_fixture(84)
        run = fd.find_general_3(H, 2)
        assert run is not None
        check_run(H, run, 2)

    def test_small_absent_ok(self):
        H = steiner_triple(7)
        run = fd.find_general_3(H, 2)
        if run is not None:
            check_run(H, run, 2)

    def test_oracle_agreement_small(self):
        for n in (5, 6, 7):
            H = complete_r(n, 3)
            run = fd.find_general_3(H, 1)
            if run is None:
                continue
            spec = oracle_spectrum(H, H.n)
            for L in run.lengths():
                assert L in spec.lengths


class TestFindGeneralR:
    def test_dense_core_r4(self):
        H = complete_r(23, 4)
        assert average_degree(H) >= fd.general_r_threshold(4, 2)
        run = fd.find_general_r(H, 2)
        assert run is not None
        check_run(H, run, 2)
        assert run.lengths() == (3, 4)

    def test_slice_recursion_r4(self):
        # one shared fourth vertex keeps the marked 3-graph dense enough
        # for the high-pair branch after the slice recursion
        g = 85
        H3 = case1_grid_fixture(g)
        quads = [e + (3 * g,) for e in H3.edges]
        H4 = Hypergraph.from_edges(3 * g + 1, quads, uniformity=4)
        run = fd.find_general_r(H4, 2)
        assert run is not None
        check_run(H4, run, 2)

    def test_r3_delegates(self):
        H = complete_r(10, 3)
        run = fd.find_general_r(H, 1)
        assert run is not None
        check_run(H, run, 1)
