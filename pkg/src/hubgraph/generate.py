"""Synthetic attributed directed graphs with controlled size, degree, and key cardinality."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import AttributedGraph


@dataclass
class GenConfig:
    """Knobs for the synthetic generator.

    cardinality is the target number of distinct (v_grp, e_grp) group-by
    keys across both dimensions, split sqrt-wise between them.
    cycle_fraction is the share of edges placed against the topological
    order (0 gives a DAG). Back edges span at most cycle_span positions so
    cycles stay local; long random back edges would collapse most of the
    graph into a single strongly connected component.
    skew is the Zipf exponent of endpoint popularity: 0 gives uniform
    endpoints, larger values concentrate edges on a few high-degree
    vertices the way social graphs do.
    """

    n: int
    degree: float = 4.0
    cardinality: int = 16
    cycle_fraction: float = 0.0
    cycle_span: int = 4
    skew: float = 1.2
    seed: int = 0

    def __post_init__(self):
        if self.n < 0 or self.degree < 0 or self.cardinality < 1:
            raise ValueError("n >= 0, degree >= 0, cardinality >= 1 required")
        if not 0.0 <= self.cycle_fraction <= 1.0:
            raise ValueError("cycle_fraction must be in [0, 1]")
        if self.skew < 0:
            raise ValueError("skew must be >= 0")


def generate(cfg: GenConfig) -> AttributedGraph:
    """Deterministic for a seed; ~n*degree edges respecting a random
    topological order, with cycle_fraction of them reversed."""
    rng = np.random.default_rng(cfg.seed)
    n = cfg.n
    c_v = max(1, math.isqrt(cfg.cardinality))
    c_e = max(1, -(-cfg.cardinality // c_v))  # ceil division

    v_grp = rng.integers(0, c_v, size=n)
    v_mr = rng.integers(1, 101, size=n)
    vertices = [(i, int(v_grp[i]), int(v_mr[i])) for i in range(n)]

    edges = []
    m = round(n * cfg.degree)
    if n >= 2 and m > 0:
        position = rng.permutation(n)        # vid -> topological position
        by_position = np.argsort(position)   # position -> vid
        # endpoints drawn as unordered pairs oriented forward, so degree
        # stays independent of topological position (drawing the target
        # from "later positions" would pile in-degree onto the last few);
        # popularity weights are Zipf over a random vertex ranking
        if cfg.skew > 0:
            weights = np.random.default_rng(cfg.seed + 1).permutation(
                np.arange(1, n + 1, dtype=np.float64) ** -cfg.skew)
            weights /= weights.sum()
            a = rng.choice(n, size=m, p=weights)
            b = rng.choice(n, size=m, p=weights)
            clash = a == b
            while clash.any():
                b[clash] = rng.choice(n, size=int(clash.sum()), p=weights)
                clash = a == b
        else:
            a = rng.integers(0, n, size=m)
            b = rng.integers(0, n - 1, size=m)
            b += b >= a  # distinct without rejection
        src_pos = np.minimum(a, b)
        tgt_pos = np.maximum(a, b)
        flip = rng.random(m) < cfg.cycle_fraction
        # flipped edges get a short span so they close local cycles only
        span = np.minimum(n - 1 - src_pos, max(1, cfg.cycle_span))
        near = src_pos + 1 + (rng.random(m) * span).astype(np.int64)
        tgt_pos = np.where(flip, near, tgt_pos)
        e_grp = rng.integers(0, c_e, size=m)
        e_mr = rng.integers(1, 101, size=m)
        for j in range(m):
            s = int(by_position[src_pos[j]])
            t = int(by_position[tgt_pos[j]])
            if flip[j]:
                s, t = t, s
            edges.append((s, t, int(e_grp[j]), int(e_mr[j])))
    return AttributedGraph(vertices, edges)
