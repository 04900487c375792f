#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
NAME:
    graphcore.py

DESCRIPTION:
    Graph representation and BFS machinery shared by every spanner
    construction in PairSpan.

    Nodes are dense integer ids 0..n-1. Edges are unordered and stored as
    (min, max) tuples. Distances are hop counts; a node that cannot be reached
    carries UNREACHABLE (None) rather than an overloaded number.
"""

import numbers
from collections import deque

LOGGER_NAME = "PairSpan"

UNREACHABLE = None


class PairSpanException(Exception):
    pass


class PairSpanInputException(PairSpanException):
    pass


class PairSpanParameterException(PairSpanException):
    pass


class PairSpanInvariantException(PairSpanException):
    pass


class PairSpanConfigException(PairSpanException):
    pass


class PairSpanVerificationException(PairSpanException):
    "Raised when a stretch or size audit fails - carries the witness text"

    def __init__(self, msg, witness=""):
        PairSpanException.__init__(self, msg)
        self.witness = witness


def edgeKey(u, v):
    if u < v:
        return (u, v)
    return (v, u)


class Graph(object):
    """Simple undirected unweighted graph in adjacency-list form"""

    def __init__(self, n, edges=()):
        if n < 0:
            raise PairSpanInputException("Node count must not be negative: %d" % n)
        self.n = n
        neighbours = [set() for _ in range(n)]
        for (u, v) in edges:
            self._checkNode(u)
            self._checkNode(v)
            u, v = int(u), int(v)
            if u == v:
                raise PairSpanInputException("Self-loop on node %d" % u)
            neighbours[u].add(v)
            neighbours[v].add(u)
        self.adjacency = [tuple(sorted(s)) for s in neighbours]
        self._neighbourSets = [frozenset(s) for s in neighbours]
        self.m = sum(len(a) for a in self.adjacency) // 2

    def _checkNode(self, v):
        if not isinstance(v, numbers.Integral) or isinstance(v, bool) or v < 0 or v >= self.n:
            raise PairSpanInputException("Node %s out of range 0..%d" % (v, self.n - 1))

    def checkNode(self, v):
        self._checkNode(v)

    def hasEdge(self, u, v):
        return 0 <= u < self.n and v in self._neighbourSets[u]

    def neighbours(self, v):
        return self.adjacency[v]

    def degree(self, v):
        return len(self.adjacency[v])

    def edges(self):
        "All edges, ascending lexicographic"
        for u in range(self.n):
            for v in self.adjacency[u]:
                if u < v:
                    yield (u, v)

    def edgeSet(self):
        return EdgeSet(self, self.edges())

    def __repr__(self):
        return "Graph(n=%d, m=%d)" % (self.n, self.m)


class EdgeSet(object):
    """Subset of the edges of a host Graph - houses H, G_C and G_i"""

    def __init__(self, g, edges=()):
        self.g = g
        self._edges = set()
        self._adj = [set() for _ in range(g.n)]
        for (u, v) in edges:
            self.add(u, v)

    def add(self, u, v):
        "Add edge, returns True if it was not already present"
        if not self.g.hasEdge(u, v):
            raise PairSpanInputException("Edge {%s,%s} is not in the host graph" % (u, v))
        key = edgeKey(u, v)
        if key in self._edges:
            return False
        self._edges.add(key)
        self._adj[u].add(v)
        self._adj[v].add(u)
        return True

    def addPath(self, p):
        "Add all edges of a path, returns count of edges that were new"
        added = 0
        for (u, v) in p.edges():
            if self.add(u, v):
                added += 1
        return added

    def update(self, other):
        added = 0
        for (u, v) in other:
            if self.add(u, v):
                added += 1
        return added

    def has(self, u, v):
        return edgeKey(u, v) in self._edges

    def __contains__(self, edge):
        return edgeKey(edge[0], edge[1]) in self._edges

    def neighbours(self, v):
        return self._adj[v]

    def __len__(self):
        return len(self._edges)

    @property
    def size(self):
        return len(self._edges)

    def __iter__(self):
        return iter(sorted(self._edges))

    def copy(self):
        result = EdgeSet(self.g)
        result._edges = set(self._edges)
        result._adj = [set(a) for a in self._adj]
        return result

    def issubset(self, other):
        return self._edges.issubset(other._edges)

    def __eq__(self, other):
        return isinstance(other, EdgeSet) and self._edges == other._edges

    def __repr__(self):
        return "EdgeSet(size=%d)" % len(self._edges)


class DistanceRow(object):
    """Hop distances from a single node or a node set"""

    def __init__(self, source, dist):
        self.source = source
        self.dist = dist

    def __getitem__(self, v):
        return self.dist[v]

    def reachable(self, v):
        return self.dist[v] is not UNREACHABLE

    def __len__(self):
        return len(self.dist)

    def __repr__(self):
        return "DistanceRow(source=%s)" % (self.source,)


class Path(object):
    """Node sequence v_0..v_l; length is the edge count"""

    def __init__(self, vertices):
        self.vertices = tuple(vertices)
        if not self.vertices:
            raise PairSpanInputException("A path needs at least one vertex")

    @property
    def length(self):
        return len(self.vertices) - 1

    @property
    def start(self):
        return self.vertices[0]

    @property
    def end(self):
        return self.vertices[-1]

    def edges(self):
        vs = self.vertices
        for i in range(len(vs) - 1):
            yield (vs[i], vs[i + 1])

    def index(self, v):
        return self.vertices.index(v)

    def isSimple(self):
        return len(set(self.vertices)) == len(self.vertices)

    def isValid(self, g):
        return all(g.hasEdge(u, v) for (u, v) in self.edges()) and self.isSimple()

    def reversed(self):
        return Path(reversed(self.vertices))

    def __len__(self):
        return len(self.vertices)

    def __eq__(self, other):
        return isinstance(other, Path) and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self):
        return "Path(%s)" % "-".join([str(v) for v in self.vertices])


def _neighbourFn(g, restrict):
    if restrict is None:
        return g.neighbours
    return restrict.neighbours


def _bfs(g, restrict, sources):
    dist = [UNREACHABLE] * g.n
    queue = deque()
    for s in sources:
        if dist[s] is UNREACHABLE:
            dist[s] = 0
            queue.append(s)
    nbrs = _neighbourFn(g, restrict)
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for w in nbrs(u):
            if dist[w] is UNREACHABLE:
                dist[w] = du
                queue.append(w)
    return dist


def bfs_distances(g, restrict, source):
    """Exact hop distances from source in the subgraph (V, restrict).
    restrict=None means the full edge set of g"""
    g.checkNode(source)
    return DistanceRow(source, _bfs(g, restrict, [source]))


def multi_source_bfs(g, restrict, sources):
    "dist(v) = min over sources of the single-source distance"
    sources = list(sources)
    if not sources:
        raise PairSpanInputException("multi_source_bfs needs a nonempty source set")
    for s in sources:
        g.checkNode(s)
    return DistanceRow(frozenset(sources), _bfs(g, restrict, sources))


def _hasEdge(g, restrict, u, v):
    if restrict is None:
        return g.hasEdge(u, v)
    return restrict.has(u, v)


def path_from_row(g, restrict, row, target):
    """Walk back from target to the row's source set, always stepping to the
    smallest-id neighbour one level closer. ABSENT (None) if unreachable"""
    if row.dist[target] is UNREACHABLE:
        return None
    dist = row.dist
    vertices = [target]
    v = target
    while dist[v] > 0:
        for w in g.neighbours(v):
            if dist[w] is not UNREACHABLE and dist[w] == dist[v] - 1 and _hasEdge(g, restrict, v, w):
                v = w
                break
        else:
            raise PairSpanInvariantException("BFS row inconsistent at node %d" % v)
        vertices.append(v)
    vertices.reverse()
    return Path(vertices)


def shortest_path(g, restrict, u, v):
    """Deterministic shortest u-v path in (V, restrict), or None when disconnected"""
    g.checkNode(u)
    g.checkNode(v)
    if u == v:
        return Path([u])
    row = DistanceRow(u, _bfs(g, restrict, [u]))
    return path_from_row(g, restrict, row, v)


def path_cost(p, have):
    "Number of consecutive-vertex edges of p not in have"
    return sum(1 for (u, v) in p.edges() if not have.has(u, v))


def splice_simple(walk, g=None):
    """Turn a walk into a simple path with the same endpoints by cutting out
    each cycle between a vertex's first and last occurrence"""
    walk = list(walk.vertices if isinstance(walk, Path) else walk)
    if not walk:
        raise PairSpanInputException("Cannot splice an empty walk")
    result = []
    position = {}
    for i, v in enumerate(walk):
        if g is not None and i > 0 and not g.hasEdge(walk[i - 1], v):
            raise PairSpanInputException("Walk vertices %s and %s are not adjacent" % (walk[i - 1], v))
        if g is None and i > 0 and walk[i - 1] == v:
            raise PairSpanInputException("Walk repeats vertex %s consecutively" % v)
        if v in position:
            cut = position[v]
            for w in result[cut + 1:]:
                del position[w]
            del result[cut + 1:]
        else:
            position[v] = len(result)
            result.append(v)
    return Path(result)


class DistanceCache(object):
    """Single-source rows over a growing edge set. The owner calls
    invalidate() whenever an edge is added, so rows are never stale"""

    def __init__(self, g, restrict):
        self.g = g
        self.restrict = restrict
        self._rows = {}

    def row(self, source):
        if source not in self._rows:
            self._rows[source] = bfs_distances(self.g, self.restrict, source)
        return self._rows[source]

    def setRow(self, key, sources):
        "Multi-source row cached under a caller-chosen key"
        key = ("set", key)
        if key not in self._rows:
            self._rows[key] = multi_source_bfs(self.g, self.restrict, sources)
        return self._rows[key]

    def invalidate(self):
        self._rows = {}


class Spanner(object):
    """Edge subset of G with per-phase provenance counters"""

    def __init__(self, g, edges, construction="", clustering_edges=0, bought_edges=0, phase3_edges=0):
        self.g = g
        self.edges = edges
        self.construction = construction
        self.clustering_edges = clustering_edges
        self.bought_edges = bought_edges
        self.phase3_edges = phase3_edges
        self.clustering = None
        self.cluster_graph = None

    @property
    def size(self):
        return len(self.edges)

    def __len__(self):
        return len(self.edges)

    def __repr__(self):
        return "Spanner(%s, edges=%d, clustering=%d, bought=%d, phase3=%d)" % (
            self.construction, len(self.edges), self.clustering_edges, self.bought_edges, self.phase3_edges)
