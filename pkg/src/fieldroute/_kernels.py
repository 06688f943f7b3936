"""Numba-compiled inner loops.

The annealing chain and the pairwise-reversal improvement loop dominate
runtime; both are tight scalar loops over a distance matrix, which is exactly
the shape numba handles well. Everything here operates on plain ndarrays:
tours hold matrix indices and the depot is a matrix index (0 in practice).
"""
from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def tour_length(order, d):
    """Closed tour length depot -> order -> depot (depot = index 0)."""
    total = d[0, order[0]]
    for k in range(order.size - 1):
        total += d[order[k], order[k + 1]]
    total += d[order[-1], 0]
    return total


@njit(cache=True, inline="always")
def _neighbor_before(order, i):
    return order[i - 1] if i > 0 else 0


@njit(cache=True, inline="always")
def _neighbor_after(order, i):
    return order[i + 1] if i < order.size - 1 else 0


@njit(cache=True)
def move_delta(order, d, kind, x, z):
    """Length change of one move without applying it.

    kind 0: swap positions x,z; kind 1: reverse the inclusive span between
    x and z; kind 2: take the gene at x and reinsert it at slot z of the
    remaining sequence. x != z is assumed.
    """
    n = order.size
    if kind == 2:
        p, t = x, z
        g = order[p]
        before_p = _neighbor_before(order, p)
        after_p = _neighbor_after(order, p)
        delta = d[before_p, after_p] - d[before_p, g] - d[g, after_p]
        # neighbors of slot t in the sequence with position p removed
        if t == 0:
            left = 0
        else:
            left = order[t - 1] if t - 1 < p else order[t]
        if t == n - 1:
            right = 0
        else:
            right = order[t] if t < p else order[t + 1]
        return delta + d[left, g] + d[g, right] - d[left, right]

    i, j = (x, z) if x < z else (z, x)
    a, b = order[i], order[j]
    before_i = _neighbor_before(order, i)
    after_j = _neighbor_after(order, j)
    if kind == 1 or j == i + 1:
        return d[before_i, b] + d[a, after_j] - d[before_i, a] - d[b, after_j]
    after_i = order[i + 1]
    before_j = order[j - 1]
    return (d[before_i, b] + d[b, after_i] + d[before_j, a] + d[a, after_j]
            - d[before_i, a] - d[a, after_i] - d[before_j, b] - d[b, after_j])


@njit(cache=True)
def apply_move(order, kind, x, z):
    """Apply a move in place. Same parameterization as move_delta."""
    if kind == 0:
        order[x], order[z] = order[z], order[x]
        return
    if kind == 1:
        i, j = (x, z) if x < z else (z, x)
        while i < j:
            order[i], order[j] = order[j], order[i]
            i += 1
            j -= 1
        return
    p, t = x, z
    g = order[p]
    if t < p:
        for k in range(p, t, -1):
            order[k] = order[k - 1]
    else:
        for k in range(p, t):
            order[k] = order[k + 1]
    order[t] = g


@njit(cache=True)
def anneal_chain(order, d, t_initial, cooling, stages, chain_length,
                 kinds, xs, ys, log_us):
    """Run the full annealing schedule over pregenerated random draws.

    Acceptance uses the log form of the Metropolis rule: a worsening move is
    kept iff delta < -T * log(u), identical in distribution to comparing u
    against exp(-delta/T). Returns (best order, best-so-far length per stage).
    """
    n = order.size
    cur = order.copy()
    cur_len = tour_length(cur, d)
    best = cur.copy()
    best_len = cur_len
    trace = np.empty(stages, dtype=np.float64)
    temp = t_initial
    idx = 0
    for s in range(stages):
        for _ in range(chain_length):
            kind = kinds[idx]
            x = xs[idx]
            z = ys[idx]
            if z >= x:
                z += 1
            lu = log_us[idx]
            idx += 1
            delta = move_delta(cur, d, kind, x, z)
            if delta <= 0.0 or delta < -temp * lu:
                apply_move(cur, kind, x, z)
                cur_len += delta
                if cur_len < best_len:
                    best_len = cur_len
                    best[:] = cur
        trace[s] = best_len
        temp *= cooling
    return best, trace


@njit(cache=True)
def pmx_fill(dad_order, mom_order, cp1, cp2):
    """PMX segment-1 child: mom's inclusive window [cp1..cp2], outside genes
    from dad chased through the window mapping until unconflicted.

    Returns (child, ok); ok is False when a chase fails to terminate, which
    cannot happen for permutation parents.
    """
    n = dad_order.size
    child = np.empty(n, dtype=np.int64)
    window_pos = np.full(n + 1, -1, dtype=np.int64)
    for k in range(cp1, cp2 + 1):
        child[k] = mom_order[k]
        window_pos[mom_order[k]] = k
    for pos in range(n):
        if cp1 <= pos <= cp2:
            continue
        g = dad_order[pos]
        hops = 0
        while window_pos[g] >= 0:
            g = dad_order[window_pos[g]]
            hops += 1
            if hops > n:
                return child, False
        child[pos] = g
    return child, True


@njit(cache=True)
def circle_pass(route, d, depot):
    """Pairwise-reversal improvement to 2-opt local optimality, in place.

    Sweeps all position pairs (i, j), reversing the inclusive span whenever
    that strictly shortens the closed tour through the depot, and restarts
    the sweep until one full pass applies no move.
    """
    n = route.size
    improved = True
    while improved:
        improved = False
        for i in range(n - 1):
            for j in range(i + 1, n):
                before = route[i - 1] if i > 0 else depot
                after = route[j + 1] if j < n - 1 else depot
                delta = (d[before, route[j]] + d[route[i], after]
                         - d[before, route[i]] - d[route[j], after])
                if delta < -1e-10:
                    a, b = i, j
                    while a < b:
                        route[a], route[b] = route[b], route[a]
                        a += 1
                        b -= 1
                    improved = True
    return route
