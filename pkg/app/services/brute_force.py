import logging
from typing import Dict, List, Tuple

import networkx as nx

from app.core.config import settings
from app.core.exceptions import LimitExceededError, PreconditionError
from app.models.permutation import PermSet, Permutation
from app.services.permutations import all_permutations, compose, identity, single_cycles


def birkhoff_graph(n: int) -> nx.Graph:
    """Cayley graph of S_n generated by all single cycles."""
    graph = nx.Graph()
    vertices = all_permutations(n)
    graph.add_nodes_from(vertices)
    cycles = single_cycles(n)
    for sigma in vertices:
        for cycle in cycles:
            tau = compose(cycle, sigma)
            if sigma < tau:
                graph.add_edge(sigma, tau)
    return graph


def _greedy_color_order(candidates: int, adjacency: List[int]) -> List[Tuple[int, int]]:
    """(vertex, color bound) pairs sorted by color; colors are independent sets of the clique graph."""
    order = []
    color = 0
    uncolored = candidates
    while uncolored:
        color += 1
        available = uncolored
        while available:
            low = available & -available
            v = low.bit_length() - 1
            available &= ~adjacency[v] & ~low
            uncolored &= ~low
            order.append((v, color))
    return order


class _CliqueSearch:
    """Branch and bound for a maximum clique over int bitsets with greedy-coloring bounds."""

    def __init__(self, adjacency: List[int]):
        self.adjacency = adjacency
        self.best: List[int] = []
        self.nodes = 0

    def run(self, candidates: int, seed: List[int]) -> List[int]:
        self.best = list(seed)
        self._expand([], candidates)
        return self.best

    def _expand(self, clique: List[int], candidates: int) -> None:
        self.nodes += 1
        order = _greedy_color_order(candidates, self.adjacency)
        for v, bound in reversed(order):
            if len(clique) + bound <= len(self.best):
                return
            clique.append(v)
            remaining = candidates & self.adjacency[v]
            if remaining:
                self._expand(clique, remaining)
            elif len(clique) > len(self.best):
                self.best = list(clique)
            clique.pop()
            candidates &= ~(1 << v)


def _greedy_clique(candidates: int, adjacency: List[int]) -> List[int]:
    clique = []
    while candidates:
        v = max(
            (i for i in range(candidates.bit_length()) if candidates >> i & 1),
            key=lambda i: bin(candidates & adjacency[i]).count("1"),
        )
        clique.append(v)
        candidates &= adjacency[v]
    return clique


def brute_alpha(n: int) -> Tuple[int, PermSet]:
    """Exact independence number of B_n with a witness containing the identity."""
    if n < 1:
        raise PreconditionError(f"n must be positive, got {n}")
    if n > settings.BRUTE_ALPHA_LIMIT:
        raise LimitExceededError(f"brute_alpha for n={n} exceeds the limit {settings.BRUTE_ALPHA_LIMIT}")
    graph = birkhoff_graph(n)
    root = identity(n)
    # vertex-transitive, so some maximum independent set contains the identity
    candidates = [v for v in graph.nodes if v != root and not graph.has_edge(root, v)]
    position: Dict[Permutation, int] = {v: i for i, v in enumerate(candidates)}
    adjacency = [0] * len(candidates)
    complement = nx.complement(graph.subgraph(candidates))
    for u, v in complement.edges:
        adjacency[position[u]] |= 1 << position[v]
        adjacency[position[v]] |= 1 << position[u]
    everything = (1 << len(candidates)) - 1
    search = _CliqueSearch(adjacency)
    clique = search.run(everything, _greedy_clique(everything, adjacency))
    witness = PermSet(n=n, elements=[root] + sorted(candidates[i] for i in clique))
    logging.info(f"alpha(B_{n}) = {witness.size} after {search.nodes} branch nodes")
    return witness.size, witness
