#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
NAME:
    pairwisenear.py

DESCRIPTION:
    (1+eps, 4) pairwise spanner for an arbitrary pair list P.

    Three phases: clustering, a single pass over the shortest paths of the
    pairs buying a path when cost <= (12 log n / eps) * sqrt(value), and the
    union with a greedy multiplicative spanner of stretch 2 ceil(log n) - 1.
    value counts cluster pairs that the path would bring strictly closer
    together than they are in the spanner so far.
"""

import math
import logging
from fractions import Fraction

from graphcore import (LOGGER_NAME, Spanner, DistanceCache, PairSpanInputException,
                       PairSpanParameterException, UNREACHABLE, bfs_distances,
                       multi_source_bfs, path_from_row, path_cost)
from clustering import build_clustering, cluster_positions, clampBeta, checkBeta, npow
from multspanner import logn, log_stretch_spanner
from subsetwise import BuyLedger, set_distance

logger = logging.getLogger(LOGGER_NAME + ".pairwisenear")

CONSTRUCTION = "pairwise-near"

BUY_FACTOR = 12
CONTRIBUTION_CAP = 5


def parse_eps(eps):
    "eps as an exact Fraction; decimal strings are read exactly"
    if isinstance(eps, Fraction):
        result = eps
    else:
        try:
            result = Fraction(str(eps).strip())
        except (ValueError, ZeroDivisionError):
            raise PairSpanParameterException("eps must be a number, got %s" % (eps,))
    if result <= 0:
        raise PairSpanParameterException("eps must be positive, got %s" % (eps,))
    return result


def check_pairs(g, pairs):
    result = []
    for pair in pairs:
        if len(pair) != 2:
            raise PairSpanInputException("Pair %s must have two endpoints" % (pair,))
        s, t = pair
        g.checkNode(s)
        g.checkNode(t)
        result.append((int(s), int(t)))
    return result


def default_beta(n, N, eps):
    "beta with n^(2 beta) = sqrt(N) log n / eps, clamped to [0,1]"
    if n <= 1:
        return 1.0
    if N <= 0:
        return 0.0
    target = math.sqrt(N) * logn(n) / float(eps)
    if target <= 1:
        return 0.0
    return clampBeta(math.log(target) / (2 * math.log(n)))


class NearAdditiveParams(object):
    def __init__(self, pairs, eps, beta=None, ordered_pairs=False):
        self.pairs = list(pairs)
        self.eps = parse_eps(eps)
        if beta is not None:
            checkBeta(beta)
        self.beta = beta
        self.ordered_pairs = bool(ordered_pairs)

    @property
    def N(self):
        return len(self.pairs)

    def resolveBeta(self, n):
        if self.beta is not None:
            return self.beta
        return default_beta(n, self.N, self.eps)

    def buyThreshold(self, n):
        return BUY_FACTOR * logn(n) / float(self.eps)

    def budget(self, n, beta):
        return self.buyThreshold(n) * math.sqrt(CONTRIBUTION_CAP * self.N) * npow(n, 1 - beta)

    def __repr__(self):
        return "NearAdditiveParams(N=%d, eps=%s, beta=%s)" % (self.N, self.eps, self.beta)


def cluster_pair_table(p, cl, clusterRow):
    """(cid1, cid2) -> (along-path distance, distance in the spanner) for each
    unordered pair cid1 < cid2 of clusters touching p. The along-path
    distance is the minimum over on-path vertices of the two clusters.
    clusterRow(cid) returns a multi-source row from the members of cid"""
    positions = cluster_positions(p, cl)
    cids = sorted(positions)
    table = {}
    for a, c1 in enumerate(cids):
        row = None
        for c2 in cids[a + 1:]:
            if row is None:
                row = clusterRow(c1)
            dPath = min(abs(i - j) for i in positions[c1] for j in positions[c2])
            table[(c1, c2)] = (dPath, set_distance(row, cl.members(c2)))
    return table


def cluster_pair_contributors(table, ordered):
    "Cluster pairs brought strictly closer, both orientations when ordered"
    result = []
    for (c1, c2) in sorted(table):
        dPath, dCurrent = table[(c1, c2)]
        if dCurrent is UNREACHABLE or dPath < dCurrent:
            result.append((c1, c2))
            if ordered:
                result.append((c2, c1))
    return result


def value_cluster_pairs(p, cl, current, ordered=False):
    """Number of cluster pairs touching p whose along-path distance is
    strictly below their distance in current"""
    g = current.g
    table = cluster_pair_table(p, cl, lambda cid: multi_source_bfs(g, current, cl.members(cid)))
    return len(cluster_pair_contributors(table, ordered))


def _keepAll(g, params):
    edges = g.edgeSet()
    beta = params.beta if params.beta is not None else 1.0
    ledger = BuyLedger(CONSTRUCTION, g.n, beta, N=params.N, eps=float(params.eps),
                       ordered=params.ordered_pairs)
    ledger.clustering_edges = len(edges)
    logger.info("Pairwise near-additive: n=%d, keeping all %d edges" % (g.n, len(edges)))
    return Spanner(g, edges, CONSTRUCTION, clustering_edges=len(edges)), ledger


def build_pairwise_near(g, params):
    """Returns (Spanner, BuyLedger)"""
    pairs = check_pairs(g, params.pairs)
    if g.n <= 2:
        return _keepAll(g, params)
    beta = params.resolveBeta(g.n)
    threshold = params.buyThreshold(g.n)
    cl, cg = build_clustering(g, beta)
    current = cg.edges.copy()
    ledger = BuyLedger(CONSTRUCTION, g.n, beta, N=params.N, eps=float(params.eps),
                       ordered=params.ordered_pairs)
    ledger.clustering_edges = len(cg.edges)
    ledger.cluster_count = len(cl)
    cache = DistanceCache(g, current)
    rowsG = {}
    for (s, t) in pairs:
        if s not in rowsG:
            rowsG[s] = bfs_distances(g, None, s)
        p = path_from_row(g, None, rowsG[s], t)
        if p is None:
            ledger.skipped_pairs += 1
            continue
        cost = path_cost(p, current)
        table = cluster_pair_table(p, cl, lambda cid: cache.setRow(cid, cl.members(cid)))
        contributors = cluster_pair_contributors(table, params.ordered_pairs)
        value = len(contributors)
        bought = cost <= threshold * math.sqrt(value)
        ledger.record((s, t), 0, cost, value, bought, p.length, contributors)
        if bought and cost > 0:
            ledger.bought_edges += current.addPath(p)
            cache.invalidate()
            logger.debug("Bought %d-%d: cost %d value %d" % (s, t, cost, value))
    ledger.phase3_edges = current.update(log_stretch_spanner(g))
    spanner = Spanner(g, current, CONSTRUCTION, clustering_edges=ledger.clustering_edges,
                      bought_edges=ledger.bought_edges, phase3_edges=ledger.phase3_edges)
    spanner.clustering = cl
    spanner.cluster_graph = cg
    logger.info("Pairwise near-additive N=%d eps %s beta %.4f: %d edges bought, %d from phase 3, %d total" % (
        params.N, params.eps, beta, ledger.bought_edges, ledger.phase3_edges, len(current)))
    return spanner, ledger
