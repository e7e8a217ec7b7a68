"""Dinic max-flow on int64 capacities, jitted; returns the min-cut side too.

Arcs come in pairs: arc a and a^1 are each other's reverses.  Capacities are
plain integers, so cut values are exact; callers scale rational capacities to
integers before building the network.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def dinic_min_cut(num_nodes, frm, to, cap, s, t):  # pragma: no cover - jitted
    num_arcs = len(frm)
    head = np.full(num_nodes, -1, np.int64)
    nxt = np.empty(num_arcs, np.int64)
    for a in range(num_arcs):
        nxt[a] = head[frm[a]]
        head[frm[a]] = a

    level = np.empty(num_nodes, np.int64)
    cur = np.empty(num_nodes, np.int64)
    queue = np.empty(num_nodes, np.int64)
    path_arcs = np.empty(num_nodes + 1, np.int64)
    path_nodes = np.empty(num_nodes + 2, np.int64)
    flow = np.int64(0)

    while True:
        for v in range(num_nodes):
            level[v] = -1
        level[s] = 0
        queue[0] = s
        qh, qt = 0, 1
        while qh < qt:
            v = queue[qh]
            qh += 1
            a = head[v]
            while a != -1:
                w = to[a]
                if cap[a] > 0 and level[w] == -1:
                    level[w] = level[v] + 1
                    queue[qt] = w
                    qt += 1
                a = nxt[a]
        if level[t] == -1:
            break
        for v in range(num_nodes):
            cur[v] = head[v]
        while True:
            plen = 0
            path_nodes[0] = s
            v = s
            found = False
            dead = False
            while True:
                if v == t:
                    found = True
                    break
                a = cur[v]
                w = -1
                while a != -1:
                    w = to[a]
                    if cap[a] > 0 and level[w] == level[v] + 1:
                        break
                    a = nxt[a]
                cur[v] = a
                if a != -1:
                    path_arcs[plen] = a
                    plen += 1
                    path_nodes[plen] = w
                    v = w
                else:
                    level[v] = -1
                    if plen == 0:
                        dead = True
                        break
                    plen -= 1
                    v = path_nodes[plen]
            if dead:
                break
            if not found:
                break
            bott = cap[path_arcs[0]]
            for i in range(1, plen):
                if cap[path_arcs[i]] < bott:
                    bott = cap[path_arcs[i]]
            for i in range(plen):
                a = path_arcs[i]
                cap[a] -= bott
                cap[a ^ 1] += bott
            flow += bott

    reach = np.zeros(num_nodes, np.bool_)
    reach[s] = True
    queue[0] = s
    qh, qt = 0, 1
    while qh < qt:
        v = queue[qh]
        qh += 1
        a = head[v]
        while a != -1:
            w = to[a]
            if cap[a] > 0 and not reach[w]:
                reach[w] = True
                queue[qt] = w
                qt += 1
            a = nxt[a]
    return flow, reach


def max_flow_min_cut(num_nodes: int, frm: np.ndarray, to: np.ndarray,
                     cap: np.ndarray, s: int, t: int) -> tuple[int, np.ndarray]:
    """(max flow value, boolean source-side mask) for a paired-arc network."""
    frm = np.ascontiguousarray(frm, dtype=np.int64)
    to = np.ascontiguousarray(to, dtype=np.int64)
    cap = np.ascontiguousarray(cap, dtype=np.int64).copy()
    flow, reach = dinic_min_cut(num_nodes, frm, to, cap, s, t)
    return int(flow), reach
