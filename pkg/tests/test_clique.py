import itertools
import random

from nonspectral.clique import max_clique


def brute_force_size(adj):
    n = len(adj)
    for k in range(n, 0, -1):
        for combo in itertools.combinations(range(n), k):
            if all(b in adj[a] for a, b in itertools.combinations(combo, 2)):
                return k
    return 0


def lexicographic_first(adj, k):
    for combo in itertools.combinations(range(len(adj)), k):
        if all(b in adj[a] for a, b in itertools.combinations(combo, 2)):
            return list(combo)


def random_graph(rng, n, density):
    adj = [set() for _ in range(n)]
    for a, b in itertools.combinations(range(n), 2):
        if rng.random() < density:
            adj[a].add(b)
            adj[b].add(a)
    return adj


def test_trivial_graphs():
    assert max_clique([]) == []
    assert max_clique([set()]) == [0]
    assert len(max_clique([set(), set(), set()])) == 1
    complete = [set(range(5)) - {i} for i in range(5)]
    assert max_clique(complete) == [0, 1, 2, 3, 4]


def test_matches_brute_force():
    rng = random.Random(1)
    for _ in range(200):
        n = rng.randint(1, 12)
        adj = random_graph(rng, n, rng.choice([0.2, 0.5, 0.8]))
        clique = max_clique(adj)
        assert all(b in adj[a] for a, b in itertools.combinations(clique, 2))
        assert len(clique) == brute_force_size(adj)
        assert clique == lexicographic_first(adj, len(clique))


def test_deterministic():
    rng = random.Random(2)
    adj = random_graph(rng, 30, 0.5)
    assert max_clique(adj) == max_clique([set(s) for s in adj])
