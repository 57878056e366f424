"""Even-Shiloach reachability trees: exact BFS levels maintained under fully
dynamic updates, with two cheaper repair variants and optional work bounds."""

from __future__ import annotations

import math
from collections import deque
from itertools import chain
from typing import NamedTuple

from .core import SsrAlgorithm, WorkCounters
from .graph import DiGraph


class DeletionStats(NamedTuple):
    """Work profile of the most recent deletion's repair loop."""

    max_enqueues: int
    queue_pops: int


class _RebuildNeeded(Exception):
    """A repair loop hit its work bound; recompute from scratch."""


class _EsBase(SsrAlgorithm):
    """Shared frame: level array with the integer sentinel n meaning
    unreachable, so every comparison stays on ints.

    beta bounds how often one vertex may be enqueued during a single
    deletion repair; ratio * n bounds the repair loop's queue pops.  The
    pop or enqueue that would exceed a bound aborts the repair and rebuilds
    the tree from scratch instead (counted as a recomputation).  Both
    default to infinity, i.e. never abort.
    """

    def __init__(self, graph: DiGraph, source: int, counters: WorkCounters, *,
                 beta: float = math.inf, ratio: float = math.inf):
        super().__init__(graph, source, counters)
        if beta != math.inf:
            if beta != int(beta) or beta < 1:
                raise ValueError(f"beta must be an integer >= 1 or inf, got {beta}")
            beta = int(beta)
        if ratio < 0:
            raise ValueError(f"ratio must be >= 0 or inf, got {ratio}")
        self.beta = beta
        self.ratio = ratio
        self.last_deletion_stats = DeletionStats(0, 0)

    def initialize(self) -> None:
        self._rebuild()

    def query(self, t: int) -> bool:
        return self.level[t] < self._inf

    def levels(self) -> list[int]:
        """Copy of the level array; the value n marks unreachable vertices."""
        return list(self.level)


class _IndexedEs(_EsBase):
    """ES/MES common core: a private in-edge list per vertex, position map,
    and per-vertex tree-edge index into its own in-list."""

    def _rebuild(self) -> None:
        g = self.graph
        c = self.counters
        n = g.vertex_count
        self._inf = n
        level = self.level = [n] * n
        in_list = self.in_list = [[] for _ in range(n)]
        in_pos = self.in_pos = {}
        tei = self.tei = [0] * n
        s = self.source
        tei[s] = -1  # the source has no tree edge; no position may match
        level[s] = 0
        visits = 1
        scans = 0
        q = deque([s])
        out = g.out_edges
        while q:
            x = q.popleft()
            lx1 = level[x] + 1
            for e, w in out(x):
                scans += 1
                lst = in_list[w]
                pos = len(lst)
                in_pos[e] = pos
                lst.append((e, x))
                if level[w] == n:
                    level[w] = lx1
                    tei[w] = pos
                    visits += 1
                    q.append(w)
        # edges out of unreachable tails, in vertex order, after all others
        for x in range(n):
            if level[x] == n:
                for e, w in out(x):
                    scans += 1
                    lst = in_list[w]
                    in_pos[e] = len(lst)
                    lst.append((e, x))
        c.vertices_visited += visits
        c.edges_scanned += scans

    def edge_inserted(self, u: int, v: int, e: int) -> None:
        lst = self.in_list[v]
        pos = len(lst)
        self.in_pos[e] = pos
        lst.append((e, u))
        level = self.level
        lu1 = level[u] + 1
        if lu1 < level[v]:
            level[v] = lu1
            self.tei[v] = pos
            self.counters.vertices_visited += 1
            self._relax_from(v)

    def _relax_from(self, v: int) -> None:
        """Cascade an improved level forward.  At equal levels only the
        tree-edge index can improve (strictly smaller), without cascading."""
        level = self.level
        in_pos = self.in_pos
        tei = self.tei
        c = self.counters
        visits = 0
        scans = 0
        q = deque([v])
        out = self.graph.out_edges
        while q:
            x = q.popleft()
            lx1 = level[x] + 1
            for e, w in out(x):
                scans += 1
                lw = level[w]
                if lx1 < lw:
                    level[w] = lx1
                    tei[w] = in_pos[e]
                    visits += 1
                    q.append(w)
                elif lx1 == lw and in_pos[e] < tei[w]:
                    tei[w] = in_pos[e]
        c.vertices_visited += visits
        c.edges_scanned += scans

    def _detach(self, v: int, e: int) -> bool:
        """Drop e from v's in-list (swap-remove).  True if the repair loop
        must run: e was v's tree edge, or the swap displaced it."""
        in_pos = self.in_pos
        pos = in_pos.pop(e)
        lst = self.in_list[v]
        reachable = self.level[v] < self._inf
        was_tree = reachable and pos == self.tei[v]
        last = lst.pop()
        if last[0] != e:
            lst[pos] = last
            in_pos[last[0]] = pos
            if reachable:
                if self.tei[v] == len(lst):
                    self.tei[v] = pos
                    return True
                if pos < self.tei[v] and self.level[last[1]] == self.level[v] - 1:
                    # anchor moved into the already-scanned prefix, where the
                    # advancing scan would never see it again; adopt it now
                    self.tei[v] = pos
        return was_tree

    def edge_deleted(self, u: int, v: int, e: int) -> None:
        self.last_deletion_stats = DeletionStats(0, 0)
        if self._detach(v, e):
            self._run_repair(v)

    def _run_repair(self, v: int) -> None:
        try:
            self._repair(v)
        except _RebuildNeeded:
            self.counters.recomputations += 1
            self._rebuild()


class EvenShiloachTree(_IndexedEs):
    """Textbook repair: each queued vertex advances its tree-edge index
    until an in-edge with tail one level up appears; running off the end
    drops the vertex one level (or out of the tree), re-enqueues it with a
    reset index, and re-enqueues its tree children."""

    name = "es"

    def _repair(self, v: int) -> None:
        c = self.counters
        n = self._inf
        level = self.level
        in_list = self.in_list
        in_pos = self.in_pos
        tei = self.tei
        beta = self.beta
        cap = self.ratio * n
        out = self.graph.out_edges
        counts: dict[int, int] = {}
        maxcnt = 0
        pops = 0
        scans = 0
        q = deque([v])
        try:
            while q:
                w = q.popleft()
                pops += 1
                c.queue_pops += 1
                if pops > cap:
                    raise _RebuildNeeded
                lw = level[w]
                if lw == n:
                    continue
                lst = in_list[w]
                sz = len(lst)
                target = lw - 1
                i = tei[w]
                while i < sz:
                    scans += 1
                    if level[lst[i][1]] == target:
                        break
                    i += 1
                if i < sz:
                    tei[w] = i
                    continue
                if lw + 1 >= n:
                    # nothing can hang below the last finite level
                    level[w] = n
                    tei[w] = 0
                    c.vertices_visited += 1
                    continue
                level[w] = lw + 1
                tei[w] = 0
                c.vertices_visited += 1
                for e, h in out(w):
                    scans += 1
                    if h != w and level[h] < n and in_pos[e] == tei[h]:
                        cnt = counts.get(h, 0) + 1
                        if cnt > beta:
                            raise _RebuildNeeded
                        counts[h] = cnt
                        if cnt > maxcnt:
                            maxcnt = cnt
                        q.append(h)
                cnt = counts.get(w, 0) + 1
                if cnt > beta:
                    raise _RebuildNeeded
                counts[w] = cnt
                if cnt > maxcnt:
                    maxcnt = cnt
                q.append(w)
        finally:
            c.edges_scanned += scans
            self.last_deletion_stats = DeletionStats(maxcnt, pops)


class MultiLevelEsTree(_IndexedEs):
    """Repair that jumps levels: one cyclic scan of the in-list either finds
    a tail one level up (adopted on the spot) or yields the minimum tail
    level seen, and the vertex drops straight to that level plus one.  Only
    tree children are re-enqueued, never the vertex itself."""

    name = "mes"

    def _repair(self, v: int) -> None:
        c = self.counters
        n = self._inf
        level = self.level
        in_list = self.in_list
        in_pos = self.in_pos
        tei = self.tei
        beta = self.beta
        cap = self.ratio * n
        out = self.graph.out_edges
        counts: dict[int, int] = {}
        maxcnt = 0
        pops = 0
        scans = 0
        q = deque([v])
        try:
            while q:
                w = q.popleft()
                pops += 1
                c.queue_pops += 1
                if pops > cap:
                    raise _RebuildNeeded
                lw = level[w]
                if lw == n:
                    continue
                lst = in_list[w]
                sz = len(lst)
                target = lw - 1
                adopted = False
                lmin = n
                emin = 0
                start = tei[w]
                if start >= sz:
                    start = 0
                for i in chain(range(start, sz), range(start)):
                    scans += 1
                    e, x = lst[i]
                    if x == w:
                        continue  # a self-loop can never anchor its own level
                    lx = level[x]
                    if lx == target:
                        tei[w] = i
                        adopted = True
                        break
                    if lx < lmin:
                        lmin = lx
                        emin = i
                if adopted:
                    continue
                children = []
                for e, h in out(w):
                    scans += 1
                    if h != w and level[h] < n and in_pos[e] == tei[h]:
                        children.append(h)
                if lmin + 1 >= n:
                    level[w] = n
                    tei[w] = 0
                    c.vertices_visited += 1
                else:
                    level[w] = lmin + 1
                    tei[w] = emin
                    c.vertices_visited += 1
                for h in children:
                    cnt = counts.get(h, 0) + 1
                    if cnt > beta:
                        raise _RebuildNeeded
                    counts[h] = cnt
                    if cnt > maxcnt:
                        maxcnt = cnt
                    q.append(h)
        finally:
            c.edges_scanned += scans
            self.last_deletion_stats = DeletionStats(maxcnt, pops)


class SimplifiedEsTree(_EsBase):
    """Index-free variant: a tree-edge id per vertex and no private in-edge
    lists.  Repair rescans the graph's own in-edges and re-anchors at the
    minimum tail level (first such edge on ties), cascading to tree children
    only when the level actually changed."""

    name = "ses"

    def _rebuild(self) -> None:
        g = self.graph
        c = self.counters
        n = g.vertex_count
        self._inf = n
        level = self.level = [n] * n
        tree_edge = self.tree_edge = [None] * n
        s = self.source
        level[s] = 0
        visits = 1
        scans = 0
        q = deque([s])
        out = g.out_edges
        while q:
            x = q.popleft()
            lx1 = level[x] + 1
            for e, w in out(x):
                scans += 1
                if level[w] == n:
                    level[w] = lx1
                    tree_edge[w] = e
                    visits += 1
                    q.append(w)
        c.vertices_visited += visits
        c.edges_scanned += scans

    def edge_inserted(self, u: int, v: int, e: int) -> None:
        level = self.level
        lu1 = level[u] + 1
        if lu1 >= level[v]:
            return
        level[v] = lu1
        self.tree_edge[v] = e
        c = self.counters
        c.vertices_visited += 1
        visits = 0
        scans = 0
        q = deque([v])
        out = self.graph.out_edges
        tree_edge = self.tree_edge
        while q:
            x = q.popleft()
            lx1 = level[x] + 1
            for e2, w in out(x):
                scans += 1
                if lx1 < level[w]:
                    level[w] = lx1
                    tree_edge[w] = e2
                    visits += 1
                    q.append(w)
        c.vertices_visited += visits
        c.edges_scanned += scans

    def edge_deleted(self, u: int, v: int, e: int) -> None:
        self.last_deletion_stats = DeletionStats(0, 0)
        if self.tree_edge[v] != e:
            return
        try:
            self._repair(v)
        except _RebuildNeeded:
            self.counters.recomputations += 1
            self._rebuild()

    def _repair(self, v: int) -> None:
        g = self.graph
        c = self.counters
        n = self._inf
        level = self.level
        tree_edge = self.tree_edge
        beta = self.beta
        cap = self.ratio * n
        in_edges = g.in_edges
        out = g.out_edges
        counts: dict[int, int] = {}
        maxcnt = 0
        pops = 0
        scans = 0
        q = deque([v])
        try:
            while q:
                w = q.popleft()
                pops += 1
                c.queue_pops += 1
                if pops > cap:
                    raise _RebuildNeeded
                lw = level[w]
                if lw == n:
                    continue
                lmin = n
                best = None
                for e2, x in in_edges(w):
                    scans += 1
                    if x == w:
                        continue  # a self-loop can never anchor its own level
                    lx = level[x]
                    if lx < lmin:
                        lmin = lx
                        best = e2
                newl = lmin + 1
                if newl >= n:
                    children = []
                    for e2, h in out(w):
                        scans += 1
                        if h != w and level[h] < n and tree_edge[h] == e2:
                            children.append(h)
                    level[w] = n
                    tree_edge[w] = None
                    c.vertices_visited += 1
                elif newl == lw:
                    tree_edge[w] = best
                    continue
                else:
                    children = []
                    for e2, h in out(w):
                        scans += 1
                        if h != w and level[h] < n and tree_edge[h] == e2:
                            children.append(h)
                    level[w] = newl
                    tree_edge[w] = best
                    c.vertices_visited += 1
                for h in children:
                    cnt = counts.get(h, 0) + 1
                    if cnt > beta:
                        raise _RebuildNeeded
                    counts[h] = cnt
                    if cnt > maxcnt:
                        maxcnt = cnt
                    q.append(h)
        finally:
            c.edges_scanned += scans
            self.last_deletion_stats = DeletionStats(maxcnt, pops)
