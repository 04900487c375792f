#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
NAME:
    pairwisepure.py

DESCRIPTION:
    (1,4k) purely additive pairwise spanner.

    Ladder construction as in sourcewise, with the cluster-pair value of
    the near-additive spanner and the buy rule cost <= 6 * gamma * sqrt(value).
    A failed rung is refined by keeping its prefix up to one clustered
    vertex and its suffix from another, and bridging the two through a
    shortest cluster-to-cluster route already in the spanner. Each rung
    is at most 4 hops longer than the one before.
"""

import math
import logging

from graphcore import (LOGGER_NAME, Spanner, DistanceCache, PairSpanInputException,
                       PairSpanInvariantException, UNREACHABLE, bfs_distances,
                       multi_source_bfs, path_from_row, path_cost, splice_simple)
from clustering import build_clustering, repair_multiplicity, clampBeta, checkBeta, npow
from subsetwise import BuyLedger, set_distance
from sourcewise import (CandidatePath, ladder_gamma, checkRungs, rung_cost_cap,
                        check_ladder_invariants)
from pairwisenear import check_pairs, cluster_pair_table, cluster_pair_contributors

logger = logging.getLogger(LOGGER_NAME + ".pairwisepure")

CONSTRUCTION = "pairwise-pure"

BUY_FACTOR = 6


def default_beta(n, N, k):
    "beta with n^beta = (6 n^(1/k) sqrt((4k+5) N))^(k/(2k+1)), clamped to [0,1]"
    if n <= 1:
        return 1.0
    if N <= 0:
        return 0.0
    inner = 6 * math.sqrt((4 * k + 5) * N)
    return clampBeta((1.0 + k * math.log(inner) / math.log(n)) / (2 * k + 1))


class PureAdditiveParams(object):
    def __init__(self, pairs, k, beta=None):
        self.pairs = list(pairs)
        self.k = checkRungs(k)
        if beta is not None:
            checkBeta(beta)
        self.beta = beta

    @property
    def N(self):
        return len(self.pairs)

    def resolveBeta(self, n):
        if self.beta is not None:
            return self.beta
        return default_beta(n, self.N, self.k)

    def gamma(self, n, beta):
        return ladder_gamma(n, beta, self.k)

    def budget(self, n, beta):
        return (BUY_FACTOR * self.gamma(n, beta) * math.sqrt(4 * self.k + 5) *
                npow(n, 1 - beta) * math.sqrt(self.N))

    def __repr__(self):
        return "PureAdditiveParams(N=%d, k=%d, beta=%s)" % (self.N, self.k, self.beta)


class PureCandidatePath(CandidatePath):
    def __repr__(self):
        return "PureCandidatePath(rung=%d, cost=%d, %s)" % (self.rung, self.cost, self.path)


def clustered_indices(p, cl):
    return [i for i, v in enumerate(p.vertices) if cl.cluster_of[v] is not None]


def _maxSpan(p, cl, table, indices):
    w = len(indices) - 1
    for span in range(w, -1, -1):
        for a in range(0, w - span + 1):
            b = a + span
            c1 = cl.cluster_of[p.vertices[indices[a]]]
            c2 = cl.cluster_of[p.vertices[indices[b]]]
            if c1 == c2:
                return a, b
            dPath, dCurrent = table[(min(c1, c2), max(c1, c2))]
            if dCurrent is not UNREACHABLE and dPath >= dCurrent:
                return a, b
    raise PairSpanInvariantException("No qualifying index pair on %s" % (p,))


def find_max_span_pair(p, cl, current):
    """Indices a <= b into the clustered positions of p, maximising b - a,
    such that the clusters at positions a and b are no closer along p than
    they already are in current"""
    indices = clustered_indices(p, cl)
    if len(indices) < 2:
        raise PairSpanInputException("Path %s has fewer than two clustered vertices" % (p,))
    g = current.g
    table = cluster_pair_table(p, cl, lambda cid: multi_source_bfs(g, current, cl.members(cid)))
    return _maxSpan(p, cl, table, indices)


def _bridge(va, vb, c1, c2, cl, row, current, g):
    "Route va -> C1 -> C2 -> vb using edges of current and the cluster centres"
    if c1 == c2:
        if va == vb:
            return [va]
        return [va, cl.center(c1), vb]
    members2 = cl.members(c2)
    d = set_distance(row, members2)
    y2 = min(m for m in members2 if row[m] == d)
    mid = list(path_from_row(g, current, row, y2).vertices)
    # mid starts at the C1 member nearest to C2, which may be va itself
    if mid[0] == va:
        walk = mid
    else:
        walk = [va, cl.center(c1)] + mid
    if y2 != vb:
        walk += [cl.center(c2), vb]
    return walk


def _refine(cp, cl, cg, current, table, clusterRow, g):
    p = cp.path
    indices = clustered_indices(p, cl)
    if len(indices) < 2:
        raise PairSpanInvariantException("Refining %s with fewer than two clustered vertices" % (p,))
    a, b = _maxSpan(p, cl, table, indices)
    ia, ib = indices[a], indices[b]
    va, vb = p.vertices[ia], p.vertices[ib]
    c1, c2 = cl.cluster_of[va], cl.cluster_of[vb]
    row = clusterRow(c1) if c1 != c2 else None
    bridge = _bridge(va, vb, c1, c2, cl, row, current, g)
    walk = list(p.vertices[:ia]) + bridge + list(p.vertices[ib + 1:])
    q = repair_multiplicity(splice_simple(walk, g), cl, cg, have=current, g=g)
    logger.debug("Refined rung %d via clusters %d/%d spanning %d..%d: length %d -> %d" % (
        cp.rung, c1, c2, a, b, p.length, q.length))
    return PureCandidatePath(q, cp.rung + 1, path_cost(q, current))


def refine_pure(cp, endpoints, cl, cg, current):
    """Next rung: prefix to the first chosen clustered vertex, a bridge in
    current between the two chosen clusters, then the suffix from the second"""
    if (cp.path.start, cp.path.end) != tuple(endpoints):
        raise PairSpanInputException("Candidate %s does not join %s" % (cp.path, endpoints))
    g = current.g
    table = cluster_pair_table(cp.path, cl, lambda cid: multi_source_bfs(g, current, cl.members(cid)))
    return _refine(cp, cl, cg, current, table, lambda cid: multi_source_bfs(g, current, cl.members(cid)), g)


def build_pairwise_pure(g, params):
    """Returns (Spanner, BuyLedger)"""
    pairs = check_pairs(g, params.pairs)
    k = params.k
    beta = params.resolveBeta(g.n)
    gamma = params.gamma(g.n, beta)
    cl, cg = build_clustering(g, beta)
    current = cg.edges.copy()
    ledger = BuyLedger(CONSTRUCTION, g.n, beta, N=params.N, k=k, gamma=gamma)
    ledger.clustering_edges = len(cg.edges)
    ledger.cluster_count = len(cl)
    cache = DistanceCache(g, current)

    def clusterRow(cid):
        return cache.setRow(cid, cl.members(cid))

    rowsG = {}
    for (s, t) in pairs:
        if s not in rowsG:
            rowsG[s] = bfs_distances(g, None, s)
        p = path_from_row(g, None, rowsG[s], t)
        if p is None:
            ledger.skipped_pairs += 1
            continue
        distG = rowsG[s][t]
        cp = PureCandidatePath(p, 0, path_cost(p, current))
        while True:
            check_ladder_invariants(cp, distG, cl, rung_cost_cap(g.n, beta, gamma, cp.rung), 4)
            table = cluster_pair_table(cp.path, cl, clusterRow)
            contributors = cluster_pair_contributors(table, False)
            value = len(contributors)
            bought = cp.cost <= BUY_FACTOR * gamma * math.sqrt(value)
            ledger.record((s, t), cp.rung, cp.cost, value, bought, cp.path.length, contributors)
            if bought:
                break
            if cp.rung >= k:
                raise PairSpanInvariantException("Ladder for %d-%d exhausted at rung %d with cost %d" % (
                    s, t, cp.rung, cp.cost))
            cp = _refine(cp, cl, cg, current, table, clusterRow, g)
        if cp.cost > 0:
            ledger.bought_edges += current.addPath(cp.path)
            cache.invalidate()
            logger.debug("Bought %d-%d at rung %d: cost %d value %d" % (s, t, cp.rung, cp.cost, value))
    spanner = Spanner(g, current, CONSTRUCTION, clustering_edges=ledger.clustering_edges,
                      bought_edges=ledger.bought_edges)
    spanner.clustering = cl
    spanner.cluster_graph = cg
    logger.info("Pairwise pure-additive N=%d k=%d beta %.4f gamma %.4f: %d edges bought, %d total" % (
        params.N, k, beta, gamma, ledger.bought_edges, len(current)))
    return spanner, ledger
