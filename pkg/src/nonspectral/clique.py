"""Exact maximum clique by branch and bound with a greedy-colouring bound."""
from __future__ import annotations

from typing import Sequence


def _colour_sort(P: list[int], adj: Sequence[set[int]]) -> tuple[list[int], list[int]]:
    # greedy colouring in the order of P; returns vertices by nondecreasing colour
    classes: list[list[int]] = []
    for v in P:
        for cls in classes:
            if not adj[v] & set(cls):
                cls.append(v)
                break
        else:
            classes.append([v])
    order, bounds = [], []
    for k, cls in enumerate(classes, start=1):
        order.extend(cls)
        bounds.extend([k] * len(cls))
    return order, bounds


def _search(adj: Sequence[set[int]], vertices: list[int]) -> list[int]:
    best: list[int] = []

    def expand(R: list[int], P: list[int]) -> None:
        nonlocal best
        order, bounds = _colour_sort(P, adj)
        remaining = set(P)
        while order:
            v = order.pop()
            bound = bounds.pop()
            if len(R) + bound <= len(best):
                return
            R2 = R + [v]
            P2 = [u for u in P if u in remaining and u in adj[v]]
            if P2:
                expand(R2, P2)
            elif len(R2) > len(best):
                best = R2
            remaining.discard(v)

    expand([], vertices)
    return best


def max_clique(adj: Sequence[set[int]]) -> list[int]:
    """The lexicographically smallest maximum clique of ``adj`` (list of neighbour sets).

    One search fixes the clique number; then vertices are taken greedily in
    index order whenever a maximum clique still extends the current choice.
    """
    n = len(adj)
    if n == 0:
        return []
    size = len(_search(adj, list(range(n))))
    chosen: list[int] = []
    pool = set(range(n))
    for v in range(n):
        if v not in pool:
            continue
        rest = sorted(pool & adj[v])
        need = size - len(chosen) - 1
        if need == 0 or (need > 0 and len(_search(adj, rest)) >= need):
            chosen.append(v)
            pool = set(rest)
            if len(chosen) == size:
                break
    return chosen
