"""Consecutive-run finders.

The linear-3-graph engine classifies each skeleton level's incident edges
and either extracts k Berge cycles of consecutive lengths (through the
ancestor frame and the path machinery) or certifies the level is sparse;
sweeping skeletons off the hypergraph turns the per-level dichotomy into
the density guarantees. Reduction routes (one 3-subset per edge, co-degree
splitting, tight paths) bring general r-graphs down to that engine.

Runs are certificates: every cycle is re-verified before a run is
returned, and dichotomies surface their counting as exact inequalities.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional, Sequence, Union

from .certify import BergeCycleWitness, verify_cycle
from .errors import (
    InternalProofFailure,
    NotLinear,
    PreconditionUnmet,
)
from .graphs import Graph, connected_components, long_path_from_density, norm_edge
from .hypergraph import Hypergraph, average_degree, is_linear
from .pathtools import (
    ColoredGraph,
    _covered_vertices,
    consecutive_even_cycles,
    special_linear_path,
    special_path,
    tripartite_ladder,
)
from .skeleton import (
    LevelEdgeClasses,
    Skeleton,
    build_skeleton,
    classify_levels,
    frame_from_parent,
)


@dataclass(frozen=True)
class ConsecutiveRun:
    """k verified Berge cycles whose lengths fill [a, a+k-1], a <= shortest_bound."""

    k: int
    cycles: tuple[BergeCycleWitness, ...]
    shortest_bound: int

    def lengths(self) -> tuple[int, ...]:
        return tuple(w.length for w in self.cycles)


def validate_run(H: Hypergraph, run: ConsecutiveRun) -> None:
    lens = run.lengths()
    if len(lens) != run.k or sorted(lens) != list(lens):
        raise InternalProofFailure("run shape", f"lengths {lens}")
    if any(b - a != 1 for a, b in zip(lens, lens[1:])):
        raise InternalProofFailure("run shape", f"not consecutive: {lens}")
    if lens and lens[0] > run.shortest_bound:
        raise InternalProofFailure(
            "run bound", f"shortest {lens[0]} exceeds {run.shortest_bound}"
        )
    for w in run.cycles:
        res = verify_cycle(H, w)
        if not res:
            raise InternalProofFailure("run witness", res.reason or "")


@dataclass(frozen=True)
class LevelEdgeBound:
    """Certified sparsity of one level's within/up classes."""

    level: int
    counted: int
    bound: Fraction

    def __post_init__(self):
        if self.counted > self.bound:
            raise InternalProofFailure(
                "level bound", f"counted {self.counted} above bound {self.bound}"
            )


@dataclass(frozen=True)
class TightPath:
    """Vertex sequence whose every r-window is an edge."""

    vertices: tuple[int, ...]
    r: int

    @property
    def length(self) -> int:
        return len(self.vertices) - self.r + 1

    def windows(self) -> list[tuple[int, ...]]:
        return [
            tuple(sorted(self.vertices[i : i + self.r])) for i in range(self.length)
        ]


@dataclass(frozen=True)
class DenseCore:
    edge_ids: tuple[int, ...]


@dataclass(frozen=True)
class MarkedSlice:
    """Greedy slice: (representative edge, marked (r-1)-subset, subset has
    co-degree 1 within the slice) triples; marked subsets are distinct and
    each is contained in its representative."""

    entries: tuple[tuple[int, tuple[int, ...], bool], ...]


# ---------------------------------------------------------------------------
# assembly helpers


def _close_through_tree(
    H: Hypergraph,
    sk: Skeleton,
    anchor: int,
    path_vertices: Sequence[int],
    path_edges: Sequence[int],
) -> BergeCycleWitness:
    """Close an extendable path between two tree vertices through the tree."""
    x, y = path_vertices[0], path_vertices[-1]
    X = sk.tree_path(anchor, x)
    Y = sk.tree_path(anchor, y)
    spine = X + list(path_vertices[1:]) + Y[::-1][1:-1]
    edges = sk.spine_edges(X) + list(path_edges) + sk.spine_edges(Y)[::-1]
    w = BergeCycleWitness(tuple(spine), tuple(edges))
    res = verify_cycle(H, w)
    if not res:
        raise InternalProofFailure("tree closure", f"{res.reason}: {res.detail}")
    return w


def _edge_components(H: Hypergraph, edge_ids: Sequence[int]) -> list[list[int]]:
    """Partition edge ids into shadow-connected groups (sorted, deterministic)."""
    parent: dict[int, int] = {}

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for ei in edge_ids:
        for v in H.edges[ei]:
            parent.setdefault(v, v)
        vs = H.edges[ei]
        for w in vs[1:]:
            ra, rb = find(vs[0]), find(w)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, list[int]] = {}
    for ei in sorted(edge_ids):
        groups.setdefault(find(H.edges[ei][0]), []).append(ei)
    return [groups[r] for r in sorted(groups)]


# ---------------------------------------------------------------------------
# the two per-level routes


def cycles_from_down_edges(
    H: Hypergraph,
    sk: Skeleton,
    i: int,
    k: int,
    active_edges: Optional[Iterable[int]] = None,
    classes: Optional[LevelEdgeClasses] = None,
) -> ConsecutiveRun:
    """Run of k consecutive lengths from a heavy down-class at level i
    (edges with two vertices in L_i and one in L_{i-1}); shortest <= 2i."""
    if classes is None:
        classes = classify_levels(H, sk, active_edges)
    if k < 1 or i < 1 or i > sk.height:
        raise PreconditionUnmet("need k >= 1 and a level inside the tree")
    down = classes.down[i]
    li = set(sk.levels[i])
    if len(down) < (k + 2) * len(li):
        raise PreconditionUnmet(
            f"need |down_{i}| >= {(k + 2) * len(li)}, have {len(down)}"
        )
    level_of = sk.level_of()
    pair_to_edge: dict[tuple[int, int], int] = {}
    third: dict[tuple[int, int], int] = {}
    for ei in down:
        e = H.edges[ei]
        pair = tuple(v for v in e if level_of.get(v) == i)
        below = [v for v in e if level_of.get(v) == i - 1]
        key = norm_edge(pair[0], pair[1])
        if key in pair_to_edge:
            raise InternalProofFailure("linearity", f"pair {key} repeats in the down class")
        pair_to_edge[key] = ei
        third[key] = below[0]
    proj = Graph.build({v for p in pair_to_edge for v in p}, pair_to_edge)
    comps = sorted(
        connected_components(proj), key=lambda c: (-c.average_degree(), c.vertices[0])
    )
    comp = comps[0]
    if comp.average_degree() < 2 * k + 4:
        raise InternalProofFailure("component density", f"d = {comp.average_degree()}")
    conbrs = sorted({third[e] for e in comp.edges})
    if len(conbrs) < 2:
        raise InternalProofFailure("co-neighbors", "a single link must be a matching")
    frame = frame_from_parent(sk.parent, conbrs)
    if frame is None:
        raise InternalProofFailure("ancestor frame", "co-neighbors on a single branch")
    anchor, color_of, _kids = frame
    phi = {e: color_of[third[e]] for e in comp.edges}
    if sum(1 for c in phi.values() if c == 2) > sum(1 for c in phi.values() if c == 1):
        phi = {e: 3 - c for e, c in phi.items()}
    cg = ColoredGraph(comp, phi)
    try:
        sp = special_path(cg, k + 1)
    except PreconditionUnmet as exc:
        raise InternalProofFailure("special path", str(exc)) from exc
    walk = sp.vertices
    x = third[norm_edge(walk[0], walk[1])]
    cycles = []
    for l in range(1, k + 1):
        y = third[norm_edge(walk[l], walk[l + 1])]
        pathv = [x] + list(walk[1 : l + 1]) + [y]
        pathe = [pair_to_edge[norm_edge(walk[0], walk[1])]] + [
            pair_to_edge[norm_edge(walk[j], walk[j + 1])] for j in range(1, l + 1)
        ]
        cycles.append(_close_through_tree(H, sk, anchor, pathv, pathe))
    run = ConsecutiveRun(k=k, cycles=tuple(cycles), shortest_bound=2 * i)
    validate_run(H, run)
    return run


def cycles_or_level_bound(
    H: Hypergraph,
    sk: Skeleton,
    i: int,
    k: int,
    active_edges: Optional[Iterable[int]] = None,
    classes: Optional[LevelEdgeClasses] = None,
) -> Union[ConsecutiveRun, LevelEdgeBound]:
    """The level dichotomy: either a run with shortest length <= 2i+2, or a
    certificate that the within/up classes at level i are sparse."""
    if classes is None:
        classes = classify_levels(H, sk, active_edges)
    if k < 1 or i < 1 or i > sk.height:
        raise PreconditionUnmet("need k >= 1 and a level inside the tree")
    within = classes.within[i] if i < len(classes.within) else ()
    up = classes.up[i] if i < len(classes.up) else ()
    ids = sorted(within) + sorted(up)
    li = set(sk.levels[i])
    li1 = set(sk.levels[i + 1]) if i + 1 <= sk.height else set()
    bound = Fraction(7 * k, 2) * len(li) + len(li) + (Fraction(5 * k, 2) + 2) * len(li1)
    level_of = sk.level_of()
    for comp_ids in _edge_components(H, ids):
        run = _bc_component_routes(H, sk, i, k, comp_ids, set(up), level_of)
        if run is not None:
            validate_run(H, run)
            return run
    cert = LevelEdgeBound(level=i, counted=len(ids), bound=bound)
    return cert


def _bc_component_routes(H, sk, i, k, ids, up_ids, level_of):
    verts = _covered_vertices(H, ids)
    n_i = sum(1 for v in verts if level_of.get(v) == i)
    n_i1 = len(verts) - n_i
    frame = frame_from_parent(sk.parent, sorted(verts))
    if frame is None:
        raise InternalProofFailure("bc frame", "component on a single branch")
    anchor, color_of, _ = frame
    if anchor in verts:
        raise InternalProofFailure("bc frame", "anchor inside the component")
    mono, poly = [], []
    for ei in ids:
        cs = {color_of[v] for v in H.edges[ei]}
        (mono if len(cs) == 1 else poly).append(ei)
    if not poly:
        raise InternalProofFailure("bc coloring", "component has no two-colored edge")

    if len(mono) > (2 * k + 2) * (n_i + n_i1):
        return _bc_mono_route(H, sk, i, k, ids, mono, anchor, color_of, level_of)

    s1 = {v for v in verts if level_of.get(v) == i and color_of[v] == 1}
    s2 = {v for v in verts if level_of.get(v) == i and color_of[v] == 2}
    n1, n2, n3 = [], [], []
    for ei in poly:
        e = H.edges[ei]
        a, b = len(set(e) & s1), len(set(e) & s2)
        if a == 2:
            n1.append(ei)
        elif b == 2:
            n2.append(ei)
        elif a == 1 and b == 1 and ei in up_ids:
            n3.append(ei)
    for cls, own, other in ((n1, 1, 2), (n2, 2, 1)):
        if 2 * len(cls) > (k - 1) * n_i:
            run = _bc_pair_route(H, sk, i, k, cls, own, anchor, color_of, level_of)
            if run is not None:
                return run
    if n3:
        cov3 = _covered_vertices(H, n3)
        if Fraction(3 * len(n3), len(cov3)) > Fraction(3 * k, 2):
            return _bc_ladder_route(H, sk, i, k, n3, s1, s2, anchor, level_of)
    return None


def _bc_mono_route(H, sk, i, k, ids, mono, anchor, color_of, level_of):
    colors = {}
    for ei in ids:
        colors[ei] = 1 if ei in set(mono) else 2
    arr = [0] * len(H.edges)
    for ei, c in colors.items():
        arr[ei] = c
    try:
        w = special_linear_path(H, arr, k + 1, edge_ids=ids)
    except PreconditionUnmet as exc:
        raise InternalProofFailure("bc mono route", str(exc)) from exc
    P = list(w.edges[: k + 1])
    rest_colors = {color_of[v] for ei in P[1:] for v in H.edges[ei]}
    if len(rest_colors) != 1:
        raise InternalProofFailure("bc mono route", "tail is not single-colored")
    cc = rest_colors.pop()
    e1, e2 = set(H.edges[P[0]]), set(H.edges[P[1]])
    endpoints = sorted(e1 - e2)
    off = [v for v in endpoints if color_of[v] != cc]
    if not off:
        raise InternalProofFailure("bc mono route", "first edge is single-colored")
    x = min(off)
    shared = [min(set(H.edges[a]) & set(H.edges[b])) for a, b in zip(P, P[1:])]

    def spine_to(l: int, y: int) -> tuple[list[int], list[int]]:
        return [x] + shared[: l - 1] + [y], P[:l]

    cycles = []
    if level_of[x] == i + 1:
        for l in range(1, k + 1):
            if l == 1:
                pool = [v for v in e1 if level_of.get(v) == i and color_of[v] == cc]
            else:
                ends = set(H.edges[P[l - 1]]) - set(H.edges[P[l - 2]])
                pool = [v for v in ends if level_of.get(v) == i]
            if not pool:
                raise InternalProofFailure("bc mono route", f"no level-i endpoint at {l}")
            pv, pe = spine_to(l, min(pool))
            cycles.append(_close_through_tree(H, sk, anchor, pv, pe))
    else:
        for l in range(2, k + 2):
            ends = set(H.edges[P[l - 1]]) - set(H.edges[P[l - 2]])
            pool = [v for v in ends if level_of.get(v) == i]
            if not pool:
                raise InternalProofFailure("bc mono route", f"no level-i endpoint at {l}")
            pv, pe = spine_to(l, min(pool))
            cycles.append(_close_through_tree(H, sk, anchor, pv, pe))
    return ConsecutiveRun(k=k, cycles=tuple(cycles), shortest_bound=2 * i + 2)


def _bc_pair_route(H, sk, i, k, cls, own_color, anchor, color_of, level_of):
    pair_to_edge: dict[tuple[int, int], int] = {}
    for ei in cls:
        e = H.edges[ei]
        pair = tuple(
            sorted(v for v in e if level_of.get(v) == i and color_of[v] == own_color)
        )
        if len(pair) != 2:
            raise InternalProofFailure("bc pairs", "class edge lost its pair")
        if pair in pair_to_edge:
            raise InternalProofFailure("linearity", f"pair {pair} repeats")
        pair_to_edge[pair] = ei
    proj = Graph.build({v for p in pair_to_edge for v in p}, pair_to_edge)
    comp = max(
        connected_components(proj), key=lambda c: (c.average_degree(), -c.vertices[0])
    )
    if 2 * comp.e <= (k - 1) * comp.n:
        return None
    path = long_path_from_density(comp, k - 1)[: k + 1]
    first = pair_to_edge[norm_edge(path[0], path[1])]
    x = next(v for v in H.edges[first] if color_of.get(v) != own_color)
    cycles = []
    for l in range(1, k + 1):
        pathv = [x] + list(path[1 : l + 1])
        pathe = [first] + [
            pair_to_edge[norm_edge(path[j], path[j + 1])] for j in range(1, l)
        ]
        cycles.append(_close_through_tree(H, sk, anchor, pathv, pathe))
    return ConsecutiveRun(k=k, cycles=tuple(cycles), shortest_bound=2 * i + 2)


def _bc_ladder_route(H, sk, i, k, n3, s1, s2, anchor, level_of):
    cov = _covered_vertices(H, n3)
    parts = (
        sorted(cov & s1),
        sorted(cov & s2),
        sorted(v for v in cov if level_of.get(v) == i + 1),
    )
    try:
        _, wits = tripartite_ladder(H, parts, k, edge_ids=n3)
    except PreconditionUnmet as exc:
        raise InternalProofFailure("bc ladder route", str(exc)) from exc
    cycles = []
    for w in wits:
        cycles.append(_close_through_tree(H, sk, anchor, list(w.spine), list(w.edges)))
    return ConsecutiveRun(k=k, cycles=tuple(cycles), shortest_bound=2 * i + 2)


# ---------------------------------------------------------------------------
# sweeps and reductions


def skeleton_sweep(H: Hypergraph, k: int) -> Optional[ConsecutiveRun]:
    """Build a skeleton on the densest remaining component, try every level,
    delete the tree and repeat. Guaranteed to find a run when the average
    degree is at least 21(k+1)."""
    if H.uniformity != 3:
        raise PreconditionUnmet("sweep needs a 3-graph")
    if not is_linear(H):
        raise NotLinear("sweep needs a linear 3-graph")
    if k < 1:
        raise PreconditionUnmet("k must be at least 1")
    guaranteed = average_degree(H) >= 21 * (k + 1)
    alive = set(range(len(H.edges)))
    while alive:
        comps = _edge_components(H, sorted(alive))
        comp_ids = max(
            comps,
            key=lambda ids: (
                Fraction(3 * len(ids), len(_covered_vertices(H, ids))),
                -min(_covered_vertices(H, ids)),
            ),
        )
        root = min(_covered_vertices(H, comp_ids))
        sk = build_skeleton(H, root, active_edges=comp_ids)
        classes = classify_levels(H, sk, active_edges=comp_ids)
        run = _levels_once(H, sk, k, comp_ids, classes)
        if run is not None:
            return run
        vt = sk.tree_vertices()
        incident = {ei for ei in alive if set(H.edges[ei]) & vt}
        if len(incident) >= 7 * (k + 1) * len(vt):
            raise InternalProofFailure(
                "sweep counting",
                f"{len(incident)} incident edges on a {len(vt)}-vertex tree "
                f"despite certified levels",
            )
        alive -= incident
    if guaranteed:
        raise InternalProofFailure(
            "sweep exhaustion", "edges ran out above the density threshold"
        )
    return None


def _levels_once(H, sk, k, active, classes) -> Optional[ConsecutiveRun]:
    for i in range(1, sk.height + 1):
        if len(classes.down[i]) >= (k + 2) * len(sk.levels[i]):
            return cycles_from_down_edges(H, sk, i, k, active, classes)
    for i in range(1, sk.height + 1):
        res = cycles_or_level_bound(H, sk, i, k, active, classes)
        if isinstance(res, ConsecutiveRun):
            return res
    return None


def find_linear_r(H: Hypergraph, k: int) -> Optional[ConsecutiveRun]:
    """Reduce a linear r-graph to a linear 3-graph (the least 3-subset of
    each edge), sweep, and lift the witnesses back."""
    if H.uniformity is None or H.uniformity < 3:
        raise PreconditionUnmet("need a uniform hypergraph with r >= 3")
    if not is_linear(H):
        raise NotLinear("input must be linear")
    if H.uniformity == 3:
        run = skeleton_sweep(H, k)
        guaranteed = average_degree(H) >= 21 * (k + 1)
    else:
        triples = [e[:3] for e in H.edges]
        back: dict[tuple[int, ...], int] = {}
        for idx, t in enumerate(triples):
            back[t] = idx
        H3 = Hypergraph.from_edges(H.n, triples, uniformity=3)
        lift = [back[t] for t in H3.edges]
        run3 = skeleton_sweep(H3, k)
        run = None
        if run3 is not None:
            cycles = tuple(
                BergeCycleWitness(w.spine, tuple(lift[e] for e in w.edges))
                for w in run3.cycles
            )
            run = ConsecutiveRun(k=k, cycles=cycles, shortest_bound=run3.shortest_bound)
            validate_run(H, run)
        guaranteed = average_degree(H) >= 7 * H.uniformity * (k + 1)
    if run is None and guaranteed:
        raise InternalProofFailure("linear reduction", "no run above the threshold")
    return run


# ---------------------------------------------------------------------------
# co-degree splitting and dense-core cycles


def split_by_codegree(H: Hypergraph, k: int) -> Union[DenseCore, MarkedSlice]:
    """Greedy dichotomy: either a subgraph in which every (r-1)-subset of an
    edge has co-degree >= k+1, or a slice of >= |H|/k edges with distinct
    marked (r-1)-subsets, one per edge."""
    if H.uniformity is None:
        raise PreconditionUnmet("uniform hypergraph required")
    if k < 1:
        raise PreconditionUnmet("k must be at least 1")
    r = H.uniformity
    count: dict[tuple[int, ...], int] = {}
    members: dict[tuple[int, ...], list[int]] = {}
    for ei, e in enumerate(H.edges):
        for sub in combinations(e, r - 1):
            count[sub] = count.get(sub, 0) + 1
            members.setdefault(sub, []).append(ei)
    alive = set(range(len(H.edges)))
    heap: list[tuple[int, tuple[int, ...]]] = []
    for ei, e in enumerate(H.edges):
        for sub in combinations(e, r - 1):
            if count[sub] <= k:
                heap.append((ei, sub))
    heapq.heapify(heap)
    slice_entries: list[tuple[int, tuple[int, ...]]] = []
    while heap:
        ei, sub = heapq.heappop(heap)
        if ei not in alive or count[sub] > k or count[sub] < 1:
            continue
        slice_entries.append((ei, sub))
        for dead in members[sub]:
            if dead not in alive:
                continue
            alive.discard(dead)
            for s2 in combinations(H.edges[dead], r - 1):
                count[s2] -= 1
                if count[s2] == k:
                    for cand in members[s2]:
                        if cand in alive:
                            heapq.heappush(heap, (cand, s2))
    if alive:
        return DenseCore(edge_ids=tuple(sorted(alive)))
    if len(slice_entries) * k < len(H.edges):
        raise InternalProofFailure("slice count", "fewer than |H|/k representatives")
    # re-mark with slice-co-degree-1 subsets when available
    slice_count: dict[tuple[int, ...], int] = {}
    for ei, _ in slice_entries:
        for sub in combinations(H.edges[ei], r - 1):
            slice_count[sub] = slice_count.get(sub, 0) + 1
    out = []
    for ei, sub0 in sorted(slice_entries):
        fresh = [s for s in combinations(H.edges[ei], r - 1) if slice_count[s] == 1]
        if fresh:
            out.append((ei, fresh[0], True))
        else:
            out.append((ei, sub0, False))
    marked = [m for _, m, _ in out]
    if len(set(marked)) != len(marked):
        raise InternalProofFailure("slice marks", "marked subsets collide")
    return MarkedSlice(entries=tuple(out))


def tight_path_cycles(P: TightPath) -> list[BergeCycleWitness]:
    """Berge cycles of every length 3..m-1 from a tight path of length m,
    by the explicit zigzag spines. Edge indices refer to window positions."""
    m = P.length
    if m < 4:
        raise PreconditionUnmet("need a tight path of length at least 4")
    out = []
    v = P.vertices
    for L in range(3, m):
        t = L + 1  # 1-based construction parameter
        if t % 2 == 0:
            spine1 = list(range(2, t + 1, 2)) + list(range(t - 1, 2, -2))
            edges1 = list(range(2, t - 1, 2)) + [t - 1] + list(range(t - 3, 2, -2)) + [1]
        else:
            spine1 = list(range(2, t, 2)) + [t] + list(range(t - 2, 2, -2))
            edges1 = list(range(2, t - 2, 2)) + [t - 1] + list(range(t - 2, 2, -2)) + [1]
        spine = tuple(v[j - 1] for j in spine1)
        edges = tuple(j - 1 for j in edges1)
        out.append(BergeCycleWitness(spine, edges))
    return out


def _codegree_subsets(H: Hypergraph):
    r = H.uniformity
    count: dict[tuple[int, ...], int] = {}
    for e in H.edges:
        for sub in combinations(e, r - 1):
            count[sub] = count.get(sub, 0) + 1
    return count


def min_codegree_cycles(H: Hypergraph, k: int) -> list[BergeCycleWitness]:
    """Berge cycles of all lengths 3..k+2 when every (r-1)-subset of an edge
    lies in at least k+1 edges. Greedy maximal tight path plus the two
    top-length completions."""
    if H.uniformity is None or H.uniformity < 3:
        raise PreconditionUnmet("need r >= 3")
    if k < 1:
        raise PreconditionUnmet("k must be at least 1")
    r = H.uniformity
    counts = _codegree_subsets(H)
    if not counts or min(counts.values()) < k + 1:
        raise PreconditionUnmet(f"minimum nonzero co-degree below {k + 1}")
    index_of = {e: i for i, e in enumerate(H.edges)}
    extras: dict[tuple[int, ...], list[int]] = {}
    for e in H.edges:
        for sub in combinations(e, r - 1):
            extras.setdefault(sub, []).append(next(v for v in e if v not in sub))
    path = list(H.edges[0])
    onpath = set(path)
    grown = True
    while grown:
        grown = False
        tail = tuple(sorted(path[-(r - 1) :]))
        cands = sorted(w for w in extras.get(tail, ()) if w not in onpath)
        if cands:
            path.append(cands[0])
            onpath.add(cands[0])
            grown = True
    grown = True
    while grown:
        grown = False
        head = tuple(sorted(path[: r - 1]))
        cands = sorted(w for w in extras.get(head, ()) if w not in onpath)
        if cands:
            path.insert(0, cands[0])
            onpath.add(cands[0])
            grown = True
    m = len(path) - r + 1
    if m < k + 1:
        raise InternalProofFailure("tight path", f"maximal length {m} below k+1")
    tp = TightPath(tuple(path), r)
    win = [index_of[w] for w in tp.windows()]
    zig = tight_path_cycles(tp) if m >= 4 else []
    by_len: dict[int, BergeCycleWitness] = {}
    for w in zig:
        if 3 <= w.length <= k + 2:
            by_len[w.length] = BergeCycleWitness(
                w.spine, tuple(win[e] for e in w.edges)
            )
    S = tuple(sorted(path[m:]))
    if m <= k + 2:
        flank = {}
        for j in range(m):
            f = tuple(sorted(S + (path[j],)))
            if f in index_of:
                flank[j] = index_of[f]
        if m == k + 1:
            if len(flank) != m:
                raise InternalProofFailure("top lengths", "missing flank edges")
            by_len[k + 2] = BergeCycleWitness(
                tuple(path[: k + 2]), tuple(win[: k + 1]) + (flank[0],)
            )
            by_len[k + 1] = BergeCycleWitness(
                tuple(path[1 : k + 2]), tuple(win[1 : k + 1]) + (flank[1],)
            )
        else:  # m == k + 2
            missing = [j for j in range(m) if j not in flank]
            if len(missing) > 1:
                raise InternalProofFailure("top lengths", f"{len(missing)} flanks missing")
            i0 = missing[0] if missing else k + 1
            keep = [j for j in range(k + 2) if j != i0]
            j0, j1 = keep[0], keep[1]
            spine2 = [path[j] for j in range(k + 3) if j != i0]
            edges2 = [win[j] for j in keep] + [flank[j0]]
            by_len[k + 2] = BergeCycleWitness(tuple(spine2), tuple(edges2))
            spine1 = [path[j] for j in range(k + 3) if j not in (i0, j0)]
            edges1 = [win[j] for j in keep[1:]] + [flank[j1]]
            by_len[k + 1] = BergeCycleWitness(tuple(spine1), tuple(edges1))
    out = []
    for L in range(3, k + 3):
        if L not in by_len:
            raise InternalProofFailure("length coverage", f"no cycle of length {L}")
        w = by_len[L]
        res = verify_cycle(H, w)
        if not res:
            raise InternalProofFailure("codegree cycle", f"{res.reason} at length {L}")
        out.append(w)
    return out


# ---------------------------------------------------------------------------
# general finders


def _run_from_core(H: Hypergraph, core_ids: Sequence[int], k: int) -> ConsecutiveRun:
    sub, idx = H.restrict(core_ids)
    cycles = min_codegree_cycles(sub, k)
    lifted = tuple(
        BergeCycleWitness(w.spine, tuple(idx[e] for e in w.edges)) for w in cycles
    )
    run = ConsecutiveRun(k=k, cycles=lifted, shortest_bound=3)
    validate_run(H, run)
    return run


def general_3_threshold(k: int) -> int:
    return 105 * k * k + 63 * k


def find_general_3(H: Hypergraph, k: int) -> Optional[ConsecutiveRun]:
    """k consecutive lengths in any 3-graph of average degree at least
    105k^2+63k; below the threshold absence is permitted."""
    if H.uniformity != 3:
        raise PreconditionUnmet("need a 3-graph")
    if k < 1:
        raise PreconditionUnmet("k must be at least 1")
    split = split_by_codegree(H, k)
    if isinstance(split, DenseCore):
        return _run_from_core(H, split.edge_ids, k)
    run = _case_high_pairs(H, split, k)
    if run is None:
        run = _case_low_pairs(H, split, k)
    if run is None and average_degree(H) >= general_3_threshold(k):
        raise InternalProofFailure("general 3-graph", "no run above the threshold")
    return run


def _slice_pair_codegrees(H: Hypergraph, reps: Sequence[int]):
    count: dict[tuple[int, int], int] = {}
    for ei in reps:
        for p in combinations(H.edges[ei], 2):
            count[p] = count.get(p, 0) + 1
    return count


def _case_high_pairs(H: Hypergraph, sl: MarkedSlice, k: int) -> Optional[ConsecutiveRun]:
    reps = [ei for ei, _, _ in sl.entries]
    cod = _slice_pair_codegrees(H, reps)
    good_entries = [
        (ei, mark)
        for ei, mark, c1 in sl.entries
        if c1 and any(cod[p] >= 3 for p in combinations(H.edges[ei], 2))
    ]
    if not good_entries:
        return None
    if Fraction(3 * len(good_entries), H.n) < 42 * k:
        return None
    chosen = _derandomized_good_set(H, good_entries)
    if 27 * len(chosen) < 4 * len(good_entries):
        raise InternalProofFailure("good set", "conditional expectation under 4/27")
    rep_pairs: dict[tuple[int, int], list[int]] = {}
    for ei in reps:
        for p in combinations(H.edges[ei], 2):
            rep_pairs.setdefault(p, []).append(ei)
    pair_to_edge: dict[tuple[int, int], int] = {}
    third: dict[tuple[int, int], int] = {}
    for ei, mark in chosen:
        if mark in pair_to_edge:
            raise InternalProofFailure("marked pairs", "collision among marks")
        pair_to_edge[mark] = ei
        third[mark] = next(v for v in H.edges[ei] if v not in mark)
    G1 = Graph.build({v for p in pair_to_edge for v in p}, pair_to_edge)
    bip = _greedy_bipartite_subgraph(G1)
    k_even = (k + 1) // 2
    try:
        even_run = consecutive_even_cycles(bip, k_even)
    except PreconditionUnmet:
        return None
    by_len: dict[int, BergeCycleWitness] = {}
    for cyc in even_run.cycles:
        L = len(cyc)
        pairs = [norm_edge(cyc[j], cyc[(j + 1) % L]) for j in range(L)]
        eids = [pair_to_edge[p] for p in pairs]
        by_len[L] = BergeCycleWitness(tuple(cyc), tuple(eids))
        aug = _augment_through_high_pair(H, cod, rep_pairs, pair_to_edge, third, cyc)
        by_len[L + 1] = aug
    lens = sorted(by_len)
    lo = lens[0]
    want = list(range(lo, lo + k))
    if any(L not in by_len for L in want):
        raise InternalProofFailure("augmented run", f"lengths {lens} missing from {want}")
    run = ConsecutiveRun(
        k=k,
        cycles=tuple(by_len[L] for L in want),
        shortest_bound=max(even_run.shortest_bound, lo),
    )
    validate_run(H, run)
    return run


def _augment_through_high_pair(H, cod, rep_pairs, pair_to_edge, third, cyc):
    """Insert the third vertex of the first cycle edge's hyperedge, rerouting
    through a high pair; lengthens the Berge cycle by exactly one."""
    L = len(cyc)
    a, b = cyc[0], cyc[1]
    key = norm_edge(a, b)
    base = pair_to_edge[key]
    w = third[key]
    if cod.get(norm_edge(a, w), 0) >= 3:
        hi, banned = a, {b, cyc[-1]}
        rest = list(cyc[1:])  # b, u2, .., u_{L-1}
    elif cod.get(norm_edge(b, w), 0) >= 3:
        hi, banned = b, {a, cyc[2 % L]}
        rest = [a] + list(reversed(cyc[2:]))  # a, u_{L-1}, .., u_2
    else:
        raise InternalProofFailure("augmentation", "no high pair beside the mark")
    cand = None
    for ei in rep_pairs.get(norm_edge(hi, w), ()):
        z = next(v for v in H.edges[ei] if v not in (hi, w))
        if z not in banned and ei != base:
            cand = ei
            break
    if cand is None:
        raise InternalProofFailure("augmentation", "high pair lost its edges")
    spine = [hi, w] + rest
    edges = [cand, base]
    for j in range(len(rest) - 1):
        edges.append(pair_to_edge[norm_edge(rest[j], rest[j + 1])])
    edges.append(pair_to_edge[norm_edge(rest[-1], hi)])
    return BergeCycleWitness(tuple(spine), tuple(edges))


def _derandomized_good_set(H: Hypergraph, entries):
    """Choose S by conditional expectation so that at least 4/27 of the
    entries become good (marked pair inside S, third vertex outside)."""
    touch: dict[int, list[int]] = {}
    info = []
    for idx, (ei, mark) in enumerate(entries):
        t = next(v for v in H.edges[ei] if v not in mark)
        info.append((mark, t))
        for v in H.edges[ei]:
            touch.setdefault(v, []).append(idx)
    state: dict[int, bool] = {}

    def prob(idx) -> Fraction:
        mark, t = info[idx]
        p = Fraction(1)
        for v in mark:
            if v in state:
                if not state[v]:
                    return Fraction(0)
            else:
                p *= Fraction(2, 3)
        if t in state:
            if state[t]:
                return Fraction(0)
        else:
            p *= Fraction(1, 3)
        return p

    for v in sorted(touch):
        gain_in = gain_out = Fraction(0)
        for idx in touch[v]:
            base = prob(idx)
            state[v] = True
            gain_in += prob(idx) - base
            state[v] = False
            gain_out += prob(idx) - base
            del state[v]
        state[v] = gain_in >= gain_out
    out = []
    for idx, (ei, mark) in enumerate(entries):
        t = info[idx][1]
        if all(state.get(v, False) for v in mark) and not state.get(t, False):
            out.append((ei, mark))
    return out


def _greedy_bipartite_subgraph(G: Graph) -> Graph:
    """Spanning bipartite subgraph keeping at least half the edges."""
    adj = G.adjacency()
    side: dict[int, int] = {}
    for v in G.vertices:
        zero = sum(1 for w in adj[v] if side.get(w) == 0)
        one = sum(1 for w in adj[v] if side.get(w) == 1)
        side[v] = 1 if zero >= one else 0
    edges = [e for e in G.edges if side[e[0]] != side[e[1]]]
    return Graph.build(G.vertices, edges)


def _case_low_pairs(H: Hypergraph, sl: MarkedSlice, k: int) -> Optional[ConsecutiveRun]:
    reps = [ei for ei, _, _ in sl.entries]
    cod = _slice_pair_codegrees(H, reps)
    low = [
        ei
        for ei in reps
        if all(cod[p] <= 2 for p in combinations(H.edges[ei], 2))
    ]
    if not low:
        return None
    pair_members: dict[tuple[int, int], list[int]] = {}
    for ei in low:
        for p in combinations(H.edges[ei], 2):
            pair_members.setdefault(p, []).append(ei)
    chosen: list[int] = []
    banned: set[int] = set()
    for ei in sorted(low):
        if ei in banned:
            continue
        chosen.append(ei)
        for p in combinations(H.edges[ei], 2):
            for other in pair_members[p]:
                banned.add(other)
    sub, idx = H.restrict(chosen)
    if average_degree(sub) < 21 * (k + 1):
        return None
    run3 = skeleton_sweep(sub, k)
    if run3 is None:
        return None
    cycles = tuple(
        BergeCycleWitness(w.spine, tuple(idx[e] for e in w.edges)) for w in run3.cycles
    )
    run = ConsecutiveRun(k=k, cycles=cycles, shortest_bound=run3.shortest_bound)
    validate_run(H, run)
    return run


def general_r_threshold(r: int, k: int) -> int:
    return r * (35 * k ** (r - 1) + 21 * k ** (r - 2))


def find_general_r(H: Hypergraph, k: int) -> Optional[ConsecutiveRun]:
    """Induction on r: split by co-degree; a dense core yields lengths
    3..k+2 directly, otherwise the marked (r-1)-graph recurses and the
    witnesses lift through the representatives."""
    r = H.uniformity
    if r is None or r < 3:
        raise PreconditionUnmet("need a uniform hypergraph with r >= 3")
    if k < 1:
        raise PreconditionUnmet("k must be at least 1")
    if r == 3:
        return find_general_3(H, k)
    split = split_by_codegree(H, k)
    if isinstance(split, DenseCore):
        return _run_from_core(H, split.edge_ids, k)
    marks = sorted(m for _, m, _ in split.entries)
    rep_of = {m: ei for ei, m, _ in split.entries}
    G = Hypergraph.from_edges(H.n, marks, uniformity=r - 1)
    lift = [rep_of[m] for m in G.edges]
    sub_run = find_general_r(G, k)
    if sub_run is None:
        if average_degree(H) >= general_r_threshold(r, k):
            raise InternalProofFailure("general r-graph", "no run above the threshold")
        return None
    cycles = tuple(
        BergeCycleWitness(w.spine, tuple(lift[e] for e in w.edges))
        for w in sub_run.cycles
    )
    run = ConsecutiveRun(k=k, cycles=cycles, shortest_bound=sub_run.shortest_bound)
    validate_run(H, run)
    return run
