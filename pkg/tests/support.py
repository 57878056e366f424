"""Shared drivers for exercising algorithms outside the replay engine."""

from reachbench.core import SsrAlgorithm, WorkCounters
from reachbench.graph import DiGraph


def build_graph(n: int, edges=()) -> DiGraph:
    g = DiGraph(n)
    for u, v in edges:
        g.add_edge(u, v)
    return g


def make_algorithm(factory, n: int, source: int, edges=()):
    """Build a graph, initialize one algorithm on it, return (g, alg, counters)."""
    g = build_graph(n, edges)
    c = WorkCounters()
    alg = factory(g, source, c)
    alg.initialize()
    return g, alg, c


def apply_add(g: DiGraph, alg: SsrAlgorithm, u: int, v: int) -> int:
    e = g.add_edge(u, v)
    alg.edge_inserted(u, v, e)
    return e


def apply_remove(g: DiGraph, alg: SsrAlgorithm, u: int, v: int) -> int:
    e = g.find_edge(u, v)
    assert e is not None, f"no live edge ({u}, {v})"
    g.remove_edge(e)
    alg.edge_deleted(u, v, e)
    return e


def sweep(alg: SsrAlgorithm, n: int) -> list[bool]:
    return [bool(alg.query(t)) for t in range(n)]


def delta(counters: WorkCounters, before: tuple[int, int, int, int]):
    """(vertices_visited, edges_scanned, queue_pops, recomputations) since before."""
    return tuple(a - b for a, b in zip(counters.snapshot(), before))
