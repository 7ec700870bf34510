"""Realize degree sequences as simple undirected graphs.

Three generator families share the same stub-pairing core but differ in how
stubs are pooled, which changes the wiring style while keeping the degree
sequence (almost) intact:

* Model A   - one global stub pool; classic configuration-model pairing.
* Model B   - stubs pair only inside small vertex blocks, which fragments the
              graph into many components.
* Kalisky   - vertices are placed hubs-first; each new vertex attaches its
              stubs to open stubs of already-placed vertices, then leftovers
              are paired globally.

All generators forbid self-loops and multi-edges.  Stub pairs that cannot be
placed after bounded edge-swap repair are dropped and reported, never turned
into loops.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import ImpossibleSequenceError


class Model(str, Enum):
    A = "A"
    B = "B"
    KALISKY = "KALISKY"


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph: vertex count, canonical edge list, adjacency.

    Edges are stored as (u, v) with u < v, sorted, so the edge list is a
    canonical representation and file output is bit-exact.
    """

    n: int
    edges: tuple
    adjacency: tuple

    @staticmethod
    def from_edges(n: int, edges) -> "Graph":
        canon = []
        seen = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"vertex id out of range: ({u}, {v})")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            seen.add(e)
            canon.append(e)
        canon.sort()
        adj = [[] for _ in range(n)]
        for u, v in canon:
            adj[u].append(v)
            adj[v].append(u)
        return Graph(n=n, edges=tuple(canon), adjacency=tuple(map(tuple, adj)))

    def degrees(self) -> np.ndarray:
        return np.array([len(a) for a in self.adjacency], dtype=np.int64)


def make_graphical(seq, seed: int = 0) -> np.ndarray:
    """Repair the pairing parity: if the degree sum is odd, bump one
    uniformly-chosen minimum-degree vertex by 1."""
    degrees = np.asarray(seq, dtype=np.int64).copy()
    if degrees.size == 0:
        raise ValueError("degree sequence must be nonempty")
    if degrees.sum() % 2 == 1:
        candidates = np.flatnonzero(degrees == degrees.min())
        pick = np.random.default_rng(seed).choice(candidates)
        degrees[pick] += 1
    return degrees


class _EdgeStore:
    """Edge set with O(1) membership, insertion, deletion and random choice."""

    def __init__(self):
        self.index = {}
        self.items = []

    def __len__(self):
        return len(self.items)

    def __contains__(self, edge):
        return edge in self.index

    def add(self, edge):
        self.index[edge] = len(self.items)
        self.items.append(edge)

    def remove(self, edge):
        pos = self.index.pop(edge)
        last = self.items.pop()
        if pos < len(self.items):
            self.items[pos] = last
            self.index[last] = pos

    def random(self, rng):
        return self.items[int(rng.integers(len(self.items)))]


def _swap_candidate(u, v, x, y, store: _EdgeStore) -> bool:
    """Whether rewiring edge (x, y) into (u, x) and (v, y) keeps the graph simple."""
    if u == x or v == y:
        return False
    e1 = (u, x) if u < x else (x, u)
    e2 = (v, y) if v < y else (y, v)
    if e1 == e2 or e1 in store or e2 in store:
        return False
    store.remove((x, y) if x < y else (y, x))
    store.add(e1)
    store.add(e2)
    return True


def _try_swap_repair(u, v, store: _EdgeStore, rng, budget: int) -> tuple[bool, int]:
    """Place the stub pair (u, v) by rewiring one existing edge.

    Random candidate edges first; if those fail and the store is small, a
    systematic scan guarantees a swap is found whenever one exists.
    Returns (placed, attempts_used).
    """
    attempts = 0
    cap = min(budget, 64)
    while attempts < cap and len(store) > 0:
        attempts += 1
        x, y = store.random(rng)
        if int(rng.integers(2)):
            x, y = y, x
        if _swap_candidate(u, v, x, y, store):
            return True, attempts
    if len(store) <= 4096:
        for x, y in list(store.items):
            attempts += 1
            if _swap_candidate(u, v, x, y, store) or _swap_candidate(
                u, v, y, x, store
            ):
                return True, attempts
    return False, attempts


def _pair_stubs(stubs: np.ndarray, store: _EdgeStore, rng) -> int:
    """Pair a stub multiset into simple edges added to ``store``.

    Alternates reshuffle rounds with edge-swap repair until the pool is empty
    or stops shrinking; repair work is bounded by 10 * |edges| candidate
    swaps overall.  Returns the number of stubs dropped.
    """
    pending = np.asarray(stubs, dtype=np.int64).copy()
    dropped = 0
    if pending.size % 2 == 1:
        # A lone stub can never pair; drop one uniformly-chosen occurrence.
        rng.shuffle(pending)
        pending, dropped = pending[:-1], 1

    budget = 10 * max(1, pending.size // 2)
    stalls = 0
    while pending.size > 0 and stalls < 3:
        before = pending.size
        rng.shuffle(pending)
        conflicts = []
        for i in range(0, pending.size, 2):
            u = int(pending[i])
            v = int(pending[i + 1])
            if u == v:
                conflicts.extend((u, v))
                continue
            e = (u, v) if u < v else (v, u)
            if e in store:
                conflicts.extend((u, v))
            else:
                store.add(e)
        unplaced = []
        for i in range(0, len(conflicts), 2):
            u, v = conflicts[i], conflicts[i + 1]
            if budget > 0:
                placed, used = _try_swap_repair(u, v, store, rng, budget)
                budget -= used
                if placed:
                    continue
            unplaced.extend((u, v))
        pending = np.array(unplaced, dtype=np.int64)
        stalls = stalls + 1 if pending.size == before else 0
    return dropped + pending.size


def _check_sequence(degrees: np.ndarray):
    n = degrees.size
    if n == 0:
        raise ValueError("degree sequence must be nonempty")
    if degrees.min() < 0:
        raise ValueError("degrees must be non-negative")
    if int(degrees.sum()) % 2 != 0:
        raise ValueError("degree sum must be even; run make_graphical first")
    if degrees.max() >= n:
        raise ImpossibleSequenceError(
            f"degree {int(degrees.max())} impossible in a simple graph on {n} vertices"
        )


def _generate_model_a(degrees, rng) -> _EdgeStore:
    store = _EdgeStore()
    stubs = np.repeat(np.arange(degrees.size, dtype=np.int64), degrees)
    _pair_stubs(stubs, store, rng)
    return store


def _generate_model_b(degrees, rng, block_size: int) -> _EdgeStore:
    """Pair stubs only inside vertex blocks.

    Blocks are built from a random vertex order with target size
    ``block_size`` but are extended until every member's degree is realizable
    inside the block with slack (enough distinct partners and enough partner
    stubs); otherwise hubs would be clipped and the degree distribution
    destroyed.
    """
    margin = 2.5  # partner slack per hub; tight blocks defeat edge-swap repair
    n = degrees.size
    order = rng.permutation(n)
    # Start at the highest-degree vertex so the dominant hub always heads a
    # block that keeps extending until its degree is realizable inside it.
    top = int(np.argmax(degrees[order]))
    order = np.roll(order, -top)

    blocks = []
    current = []
    cur_sum = 0
    cur_max = 0
    for v in order:
        current.append(int(v))
        d = int(degrees[v])
        cur_sum += d
        cur_max = max(cur_max, d)
        feasible = (
            len(current) >= block_size
            and len(current) > margin * cur_max
            and cur_sum - cur_max >= margin * cur_max
        )
        if feasible:
            blocks.append(current)
            current, cur_sum, cur_max = [], 0, 0
    if current:
        # Infeasible tail: fold it into the largest closed block, which has
        # the best chance of absorbing any remaining high-degree vertex.
        if blocks:
            max(blocks, key=len).extend(current)
        else:
            blocks.append(current)

    store = _EdgeStore()
    for block in blocks:
        block_store = _EdgeStore()
        members = np.array(block, dtype=np.int64)
        stubs = np.repeat(members, degrees[members])
        _pair_stubs(stubs, block_store, rng)
        for e in block_store.items:
            store.add(e)
    return store


def _generate_kalisky(degrees, rng) -> _EdgeStore:
    """Wire hubs-first, building the network outward from its core.

    Vertices are placed in descending degree order.  Each arriving vertex
    spends one stub on a random open stub of the already-placed vertices
    (probability proportional to open stub count, which favors the hubs) and
    pools the rest, so the whole positive-degree set joins one hub-centered
    component.  The pooled stubs are then paired globally.
    """
    order = np.argsort(-degrees, kind="stable")
    store = _EdgeStore()
    open_stubs = []  # vertex id repeated once per open stub
    for v in order:
        v = int(v)
        d = int(degrees[v])
        if d == 0:
            continue
        made = 0
        if open_stubs:
            # v is not yet in the pool, so the draw cannot self-loop and the
            # edge cannot already exist.
            pos = int(rng.integers(len(open_stubs)))
            u = open_stubs[pos]
            open_stubs[pos] = open_stubs[-1]
            open_stubs.pop()
            store.add((u, v) if u < v else (v, u))
            made = 1
        open_stubs.extend([v] * (d - made))
    if open_stubs:
        _pair_stubs(np.array(open_stubs, dtype=np.int64), store, rng)
    return store


def generate(seq, model: Model, seed: int, block_size: int = 32) -> Graph:
    """Realize ``seq`` as a simple undirected graph under the given model.

    The degree sum must already be even (see ``make_graphical``).  The
    realized degree of each vertex never exceeds its target; unpairable
    stubs are dropped (see ``drop_report``).  Deterministic per seed.
    """
    degrees = np.asarray(seq, dtype=np.int64)
    _check_sequence(degrees)
    model = Model(model)
    rng = np.random.default_rng(seed)
    if model is Model.A:
        store = _generate_model_a(degrees, rng)
    elif model is Model.B:
        store = _generate_model_b(degrees, rng, block_size)
    else:
        store = _generate_kalisky(degrees, rng)
    return Graph.from_edges(degrees.size, store.items)


@dataclass(frozen=True)
class DropReport:
    """Per-vertex target-minus-realized degree and its total."""

    per_vertex: tuple
    total: int


def drop_report(g: Graph, seq) -> DropReport:
    """Stubs of ``seq`` that the realization ``g`` failed to place."""
    degrees = np.asarray(seq, dtype=np.int64)
    if degrees.size != g.n:
        raise ValueError("sequence length does not match vertex count")
    realized = g.degrees()
    diff = degrees - realized
    return DropReport(per_vertex=tuple(int(d) for d in diff), total=int(diff.sum()))


def write_edge_list(g: Graph, path):
    """One ``u v`` line per edge, 0-based ids, u < v, sorted; bit-exact."""
    with open(path, "w", encoding="ascii") as fh:
        for u, v in g.edges:
            fh.write(f"{u} {v}\n")


def read_edge_list(path) -> Graph:
    """Parse an edge-list file; vertex count is max id + 1.

    Self-loops, duplicate edges (in either orientation) and malformed lines
    are rejected with their line number.
    """
    edges = []
    seen = set()
    max_id = -1
    with open(path, "r", encoding="ascii") as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped:
                continue
            parts = stripped.split()
            if len(parts) != 2:
                raise ValueError(f"line {lineno}: expected 'u v', got {stripped!r}")
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError:
                raise ValueError(
                    f"line {lineno}: vertex ids must be integers, got {stripped!r}"
                ) from None
            if u < 0 or v < 0:
                raise ValueError(f"line {lineno}: vertex ids must be non-negative")
            if u == v:
                raise ValueError(f"line {lineno}: self-loop at vertex {u}")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise ValueError(f"line {lineno}: duplicate edge {e}")
            seen.add(e)
            edges.append(e)
            max_id = max(max_id, u, v)
    return Graph.from_edges(max_id + 1, edges)
