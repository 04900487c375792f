#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
NAME:
    clustering.py

DESCRIPTION:
    Clustering phase shared by all path-buying constructions.

    While some vertex v has at least ceil(n^beta) unclustered neighbours, the
    smallest-id such v (scan restarted after every cluster) donates its
    ceil(n^beta) smallest-id unclustered neighbours as a new cluster, and all
    edges inside C + {v} are kept. Finally every edge touching a node that is
    still unclustered is kept. The result has the missing-edge property
    (an edge left out joins two different clusters) and the cluster-diameter
    property (members of one cluster are 2 hops apart via the centre).
"""

import math
import logging

from graphcore import (LOGGER_NAME, EdgeSet, Path, PairSpanParameterException,
                       PairSpanInvariantException, path_cost, splice_simple)

logger = logging.getLogger(LOGGER_NAME + ".clustering")

INTEGRAL_TOLERANCE = 1e-9


def npow(n, x):
    "n^x with exact results at x=0 and x=1"
    if x == 0:
        return 1.0
    if x == 1:
        return float(n)
    return float(n) ** x


def ceilPow(n, x):
    "ceil(n^x), snapping values within rounding noise of an integer"
    val = npow(n, x)
    r = round(val)
    if abs(val - r) < INTEGRAL_TOLERANCE:
        return int(r)
    return int(math.ceil(val))


def floorPow(n, x):
    val = npow(n, x)
    r = round(val)
    if abs(val - r) < INTEGRAL_TOLERANCE:
        return int(r)
    return int(math.floor(val))


def checkBeta(beta):
    if beta is None or not (0 <= beta <= 1):
        raise PairSpanParameterException("beta must lie in [0,1], got %s" % (beta,))


def clampBeta(beta):
    if beta != beta:    # NaN
        return 0.0
    return min(1.0, max(0.0, beta))


class Cluster(object):
    def __init__(self, cid, center, members):
        self.cid = cid
        self.center = center
        self.members = frozenset(members)

    def __repr__(self):
        return "Cluster(%d, center=%d, members=%s)" % (self.cid, self.center, sorted(self.members))


class Clustering(object):
    """Partition of a node subset into centred clusters"""

    def __init__(self, n, beta, size_threshold, clusters=()):
        self.n = n
        self.beta = beta
        self.size_threshold = size_threshold
        self.clusters = []
        self.cluster_of = [None] * n
        for (center, members) in clusters:
            self.addCluster(center, members)

    def addCluster(self, center, members):
        cid = len(self.clusters)
        for v in members:
            if self.cluster_of[v] is not None:
                raise PairSpanInvariantException("Node %d is already in cluster %d" % (v, self.cluster_of[v]))
            self.cluster_of[v] = cid
        self.clusters.append(Cluster(cid, center, members))
        return cid

    def __len__(self):
        return len(self.clusters)

    def members(self, cid):
        return self.clusters[cid].members

    def center(self, cid):
        return self.clusters[cid].center

    def isClustered(self, v):
        return self.cluster_of[v] is not None

    def maxClusters(self):
        "n^(1-beta) as a real number"
        return npow(self.n, 1 - self.beta)

    def __repr__(self):
        return "Clustering(n=%d, beta=%s, threshold=%d, clusters=%d)" % (
            self.n, self.beta, self.size_threshold, len(self.clusters))


class ClusterGraph(object):
    """The retained edge set G_C"""

    def __init__(self, edges):
        self.edges = edges

    def __len__(self):
        return len(self.edges)

    def __repr__(self):
        return "ClusterGraph(edges=%d)" % len(self.edges)


def build_clustering(g, beta):
    """Returns (Clustering, ClusterGraph) for g"""
    checkBeta(beta)
    n = g.n
    if n < 1:
        raise PairSpanParameterException("Clustering needs at least one node")
    threshold = n if beta == 1 else ceilPow(n, beta)
    cl = Clustering(n, beta, threshold)
    edges = EdgeSet(g)
    unclustered = [True] * n
    freeCount = [g.degree(v) for v in range(n)]
    while True:
        center = None
        for v in range(n):
            if freeCount[v] >= threshold:
                center = v
                break
        if center is None:
            break
        members = []
        for w in g.neighbours(center):
            if unclustered[w]:
                members.append(w)
                if len(members) == threshold:
                    break
        cl.addCluster(center, members)
        for w in members:
            unclustered[w] = False
            for y in g.neighbours(w):
                freeCount[y] -= 1
        group = set(members)
        group.add(center)
        for a in group:
            for b in g.neighbours(a):
                if a < b and b in group:
                    edges.add(a, b)
    for u in range(n):
        if unclustered[u]:
            for w in g.neighbours(u):
                edges.add(u, w)
    logger.info("Clustering: beta %.4f threshold %d clusters %d retained edges %d of %d" % (
        beta, threshold, len(cl), len(edges), g.m))
    return cl, ClusterGraph(edges)


def cluster_positions(p, cl):
    "cluster id -> ascending positions on p of that cluster's vertices"
    positions = {}
    for i, v in enumerate(p.vertices):
        cid = cl.cluster_of[v]
        if cid is not None:
            positions.setdefault(cid, []).append(i)
    return positions


def touching_clusters(p, cl):
    return sorted(cluster_positions(p, cl).keys())


def repair_multiplicity(p, cl, cg, have=None, g=None):
    """Shortcut p until every cluster holds at most 3 of its vertices.

    The subpath between the first and last on-path member of an offending
    cluster (at least 3 edges) is replaced by member-centre-member (2 edges
    of G_C), then the walk is spliced back to a simple path."""
    vertices = list(p.vertices)
    startCost = path_cost(p, have) if have is not None else None
    while True:
        positions = cluster_positions(Path(vertices), cl)
        offenders = [cid for cid in sorted(positions) if len(positions[cid]) >= 4]
        if not offenders:
            break
        cid = offenders[0]
        first, last = positions[cid][0], positions[cid][-1]
        a, b = vertices[first], vertices[last]
        c = cl.center(cid)
        if not (cg.edges.has(a, c) and cg.edges.has(c, b)):
            raise PairSpanInvariantException("Cluster %d members %d/%d not joined to centre %d in G_C" % (cid, a, b, c))
        walk = vertices[:first + 1] + [c] + vertices[last:]
        newPath = splice_simple(walk, g)
        if newPath.length >= len(vertices) - 1:
            raise PairSpanInvariantException("Multiplicity repair did not shorten the path")
        logger.debug("Repaired cluster %d on path: length %d -> %d" % (cid, len(vertices) - 1, newPath.length))
        vertices = list(newPath.vertices)
    result = Path(vertices)
    if startCost is not None and path_cost(result, have) > startCost:
        raise PairSpanInvariantException("Multiplicity repair increased the path cost")
    return result
