"""Shared instance builders for the test suite."""

import itertools
import random

from stratdiff import DiffusionInstance, InfluenceNetwork


def connected_unit_graphs(max_n):
    """Every connected graph on node sets {0..n-1}, n <= max_n, unit weights."""
    for n in range(1, max_n + 1):
        pairs = list(itertools.combinations(range(n), 2))
        for emask in range(1 << len(pairs)):
            adj = [0] * n
            for i, (u, v) in enumerate(pairs):
                if emask >> i & 1:
                    adj[u] |= 1 << v
                    adj[v] |= 1 << u
            seen = 1
            stack = [0]
            while stack:
                x = stack.pop()
                m = adj[x] & ~seen
                seen |= m
                while m:
                    low = m & -m
                    stack.append(low.bit_length() - 1)
                    m ^= low
            if seen != (1 << n) - 1:
                continue
            edges = [(u, v, 1.0, 1.0)
                     for i, (u, v) in enumerate(pairs) if emask >> i & 1]
            yield InfluenceNetwork(n, edges)


def random_weighted_net(n, rng, edge_prob=0.4, lo=0.5, hi=2.0):
    """Connected random network, independent uniform weights per direction."""
    pairs = set()
    for v in range(1, n):
        pairs.add((rng.randrange(v), v))
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) not in pairs and rng.random() < edge_prob:
                pairs.add((u, v))
    edges = [(u, v, rng.uniform(lo, hi), rng.uniform(lo, hi))
             for u, v in sorted(pairs)]
    return InfluenceNetwork(n, edges)


def random_tree(n, rng, maxdeg=3, lo=0.5, hi=2.0, integer=False):
    """Random tree with bounded degree and per-direction weights."""
    deg = [0] * n
    edges = []
    for v in range(1, n):
        cands = [u for u in range(v) if deg[u] < maxdeg]
        u = rng.choice(cands)
        deg[u] += 1
        deg[v] += 1
        if integer:
            w1, w2 = float(rng.randint(int(lo), int(hi))), \
                float(rng.randint(int(lo), int(hi)))
        else:
            w1, w2 = rng.uniform(lo, hi), rng.uniform(lo, hi)
        edges.append((u, v, w1, w2))
    return InfluenceNetwork(n, edges)


def theta2_graph(n, rng, maxdeg=3):
    """Bounded-degree tree plus one or two chords (cyclomatic number <= 2)."""
    deg = [0] * n
    pairs = []
    for v in range(1, n):
        cands = [u for u in range(v) if deg[u] < maxdeg]
        u = rng.choice(cands)
        deg[u] += 1
        deg[v] += 1
        pairs.append((u, v))
    for _ in range(rng.randrange(1, 3)):
        u, v = rng.randrange(n), rng.randrange(n)
        if u == v:
            continue
        if u > v:
            u, v = v, u
        if (u, v) in pairs or deg[u] >= maxdeg or deg[v] >= maxdeg:
            continue
        pairs.append((u, v))
        deg[u] += 1
        deg[v] += 1
    edges = [(u, v, rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0))
             for u, v in sorted(pairs)]
    return InfluenceNetwork(n, edges)


def blocky_graph(rng, n):
    """Chain a few small random blocks through shared cut nodes."""
    edges = []
    cur = 0
    nodes = 1
    while nodes < n:
        size = min(rng.randrange(2, 4), n - nodes + 1)
        block = [cur] + list(range(nodes, nodes + size - 1))
        nodes += size - 1
        for i, u in enumerate(block):
            for v in block[i + 1:]:
                if len(block) == 2 or rng.random() < 0.8 or v == block[-1]:
                    edges.append((u, v, rng.uniform(0.5, 2.0),
                                  rng.uniform(0.5, 2.0)))
        cur = block[-1] if rng.random() < 0.7 else block[0]
    seen = {u for e in edges for u in (e[0], e[1])}
    return InfluenceNetwork(max(seen) + 1, edges) if seen else path_net(2)


def path_net(n, w=1.0):
    return InfluenceNetwork(n, [(i, i + 1, w, w) for i in range(n - 1)])


def star_net(leaves):
    """Seed-centered star: every leaf has probability 1 once 0 is active."""
    return InfluenceNetwork(leaves + 1, [(0, i, 1.0, 1.0)
                                         for i in range(1, leaves + 1)])


def full_instance(net, seed=0, **kw):
    return DiffusionInstance(network=net, seed=seed, z=net.node_count, **kw)
