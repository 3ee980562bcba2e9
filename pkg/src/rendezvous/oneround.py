"""One-round graphical rendezvous: orient edges to maximize in-pairs.

Each agent owns two channels, i.e. an edge; choosing a channel orients the
edge toward it. Two agents meet in the round when their edges share a
vertex and both point into it (an in-pair).

The optimizer relaxes "same role at the shared vertex" to a vector program
with one unit vector per edge, solved by low-rank projected gradient
ascent, then rounds with random hyperplanes. Since in-pairs and out-pairs
swap under a global flip, each rounded candidate is also tried flipped.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from itertools import combinations
from typing import Iterable, Optional, Sequence

import numpy as np

log = logging.getLogger(__name__)

MAX_BRUTE_FORCE_EDGES = 20


@dataclass(frozen=True)
class OrientedGraph:
    """Simple graph with one orientation bit per edge.

    Bit 0 points edge ``(u, v)`` (``u < v``) at ``u``; bit 1 points it at ``v``.
    """

    edges: tuple[tuple[int, int], ...]
    orientation: tuple[int, ...]

    def __post_init__(self):
        if len(self.orientation) != len(self.edges):
            raise ValueError("one orientation bit per edge required")
        if any(b not in (0, 1) for b in self.orientation):
            raise ValueError("orientation bits must be 0 or 1")

    @property
    def vertices(self) -> list[int]:
        return sorted({v for e in self.edges for v in e})

    def heads(self) -> list[int]:
        return [e[b] for e, b in zip(self.edges, self.orientation)]

    def flipped(self) -> "OrientedGraph":
        return replace(self, orientation=tuple(1 - b for b in self.orientation))


def make_graph(edges: Iterable[Sequence[int]], orientation: Optional[Sequence[int]] = None) -> OrientedGraph:
    """Normalize edges to ``(min, max)`` and reject self-loops and duplicates."""
    norm = []
    for u, v in edges:
        u, v = int(u), int(v)
        if u == v:
            raise ValueError(f"self-loop at {u}")
        norm.append((min(u, v), max(u, v)))
    if len(set(norm)) != len(norm):
        raise ValueError("duplicate edge")
    bits = tuple(orientation) if orientation is not None else (0,) * len(norm)
    return OrientedGraph(tuple(norm), tuple(int(b) for b in bits))


def parse_edges(text: str) -> OrientedGraph:
    """Parse ``"1-2,2-3,1-3"``."""
    text = text.strip()
    if not text:
        return make_graph([])
    return make_graph(tuple(int(x) for x in tok.split("-")) for tok in text.split(","))


def _degree_counts(g: OrientedGraph):
    indeg: dict[int, int] = {}
    deg: dict[int, int] = {}
    for (u, v), h in zip(g.edges, g.heads()):
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
        indeg[h] = indeg.get(h, 0) + 1
    return indeg, deg


def _c2(x: int) -> int:
    return x * (x - 1) // 2


def count_in_pairs(g: OrientedGraph) -> int:
    indeg, _ = _degree_counts(g)
    return sum(_c2(d) for d in indeg.values())


def count_out_pairs(g: OrientedGraph) -> int:
    indeg, deg = _degree_counts(g)
    return sum(_c2(deg[v] - indeg.get(v, 0)) for v in deg)


def count_cross_pairs(g: OrientedGraph) -> int:
    indeg, deg = _degree_counts(g)
    return sum(indeg.get(v, 0) * (deg[v] - indeg.get(v, 0)) for v in deg)


def count_incident_pairs(g: OrientedGraph) -> int:
    _, deg = _degree_counts(g)
    return sum(_c2(d) for d in deg.values())


def random_orient(g: OrientedGraph, seed: int) -> OrientedGraph:
    bits = np.random.default_rng(seed).integers(0, 2, size=len(g.edges))
    return replace(g, orientation=tuple(int(b) for b in bits))


# -- vector relaxation --------------------------------------------------------


@dataclass
class SdpInstance:
    """Sign matrix over edge pairs plus one unit vector per edge.

    ``signs[e, f]`` is +1 when incident edges e, f play the same role at
    their shared vertex under ``base`` (both in or both out), -1 when they
    cross, and 0 when they are not incident.
    """

    base: OrientedGraph
    signs: np.ndarray
    vectors: np.ndarray
    converged: bool = True
    iterations: int = 0
    history: list = field(default_factory=list)

    @property
    def pair_count(self) -> int:
        return int(np.count_nonzero(np.triu(self.signs, 1)))

    def objective(self, vectors: Optional[np.ndarray] = None) -> float:
        V = self.vectors if vectors is None else vectors
        gram = V @ V.T
        upper = np.triu(self.signs, 1)
        mask = upper != 0
        return float(np.sum((1 + upper[mask] * gram[mask]) / 2))


def sign_matrix(g: OrientedGraph) -> np.ndarray:
    m = len(g.edges)
    S = np.zeros((m, m), dtype=np.int64)
    heads = g.heads()
    for e, f in combinations(range(m), 2):
        shared = set(g.edges[e]) & set(g.edges[f])
        if len(shared) == 1:
            (v,) = shared
            same_role = (heads[e] == v) == (heads[f] == v)
            S[e, f] = S[f, e] = 1 if same_role else -1
    return S


def build_sdp(g: OrientedGraph, initial_orientation: Optional[Sequence[int]] = None, rank: int = 2) -> SdpInstance:
    if initial_orientation is not None:
        g = replace(g, orientation=tuple(int(b) for b in initial_orientation))
    if rank < 2:
        raise ValueError("rank must be >= 2")
    m = len(g.edges)
    V = np.zeros((m, rank))
    V[:, 0] = 1.0
    return SdpInstance(base=g, signs=sign_matrix(g), vectors=V)


def _normalize_rows(V: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(V, axis=1, keepdims=True)
    return V / np.where(norms == 0, 1.0, norms)


def _ascend(W: np.ndarray, V: np.ndarray, max_iters: int, tol: float, obj) -> tuple[np.ndarray, float, int, bool]:
    value = obj(V)
    # Growing the step lets normalize(V + step*G) collapse onto normalize(G)
    # and stall, so the step only ever shrinks.
    step = 1.0
    for it in range(1, max_iters + 1):
        # Gradient of sum_{e<f} W_ef <v_e, v_f> / 2 is W V / 2.
        cand = _normalize_rows(V + step * (W @ V) / 2)
        new = obj(cand)
        if new < value:
            step /= 2
            if step < 1e-12:
                return V, value, it, True
            continue
        gain = new - value
        V, value = cand, new
        if gain <= tol * max(1.0, abs(value)):
            return V, value, it, True
    return V, value, max_iters, False


def solve_sdp(
    inst: SdpInstance,
    rank: Optional[int] = None,
    max_iters: int = 500,
    tol: float = 1e-9,
    restarts: int = 5,
    seed: int = 0,
) -> SdpInstance:
    """Locally maximize the relaxation over unit vectors of dimension ``rank``.

    Steps that lower the objective are rejected and the step size halved, so
    accepted iterates are monotone. The best of ``restarts`` random starts is
    kept; hitting ``max_iters`` is logged and the best vectors still returned.
    """
    m = len(inst.base.edges)
    if rank is None:
        rank = max(2, min(m, 8))
    if rank < 2 or tol <= 0:
        raise ValueError("need rank >= 2 and tol > 0")
    if m == 0:
        return replace(inst, vectors=np.zeros((0, rank)), converged=True, iterations=0, history=[])
    W = inst.signs.astype(float)
    rng = np.random.default_rng(seed)
    best = None
    history = []
    for _ in range(max(1, restarts)):
        V0 = _normalize_rows(rng.standard_normal((m, rank)))
        V, value, iters, ok = _ascend(W, V0, max_iters, tol, inst.objective)
        history.append(value)
        if best is None or value > best[1]:
            best = (V, value, iters, ok)
    V, value, iters, ok = best
    if not ok:
        log.warning("vector relaxation stopped at max_iters=%d (objective %.6f)", max_iters, value)
    return replace(inst, vectors=V, converged=ok, iterations=iters, history=history)


def hyperplane_round(inst: SdpInstance, seed: int) -> np.ndarray:
    """Flip indicator per edge: 1 where the edge vector falls strictly below a random hyperplane."""
    r = np.random.default_rng(seed).standard_normal(inst.vectors.shape[1])
    return (inst.vectors @ r < 0).astype(np.int64)


def apply_flips(g: OrientedGraph, flips: Sequence[int]) -> OrientedGraph:
    return replace(g, orientation=tuple(int(b ^ f) for b, f in zip(g.orientation, flips)))


def orient_one_round(g: OrientedGraph, seed: int, rounds: int = 16, restarts: int = 5) -> OrientedGraph:
    """Best in-pair orientation among hyperplane roundings and their global flips."""
    if rounds < 1:
        raise ValueError("rounds must be >= 1")
    base = replace(g, orientation=(0,) * len(g.edges))
    if not g.edges:
        return base
    ss = np.random.SeedSequence(seed)
    solve_seed, *round_seeds = (int(s.generate_state(1)[0]) for s in ss.spawn(rounds + 1))
    inst = solve_sdp(build_sdp(base), restarts=restarts, seed=solve_seed)
    best, best_value = None, -1
    for rs in round_seeds:
        cand = apply_flips(base, hyperplane_round(inst, rs))
        for c in (cand, cand.flipped()):
            v = count_in_pairs(c)
            if v > best_value:
                best, best_value = c, v
    return best


def brute_force_optimal_orientation(g: OrientedGraph) -> tuple[int, OrientedGraph]:
    """Exact maximum in-pair count over all ``2^|E|`` orientations."""
    m = len(g.edges)
    if m > MAX_BRUTE_FORCE_EDGES:
        raise ValueError(f"{m} edges exceeds brute-force limit {MAX_BRUTE_FORCE_EDGES}")
    if m == 0:
        return 0, g
    verts = g.vertices
    index = {v: i for i, v in enumerate(verts)}
    tails = np.array([index[u] for u, _ in g.edges])
    tops = np.array([index[v] for _, v in g.edges])
    best_value, best_code = -1, 0
    chunk = 1 << min(m, 16)
    for start in range(0, 1 << m, chunk):
        codes = np.arange(start, start + chunk, dtype=np.int64)
        bits = (codes[:, None] >> np.arange(m)) & 1
        heads = np.where(bits == 1, tops, tails)
        values = np.zeros(chunk, dtype=np.int64)
        for v in range(len(verts)):
            d = (heads == v).sum(axis=1)
            values += d * (d - 1) // 2
        i = int(np.argmax(values))
        if values[i] > best_value:
            best_value, best_code = int(values[i]), int(codes[i])
    witness = replace(g, orientation=tuple((best_code >> i) & 1 for i in range(m)))
    return best_value, witness
