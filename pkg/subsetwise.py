#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
NAME:
    subsetwise.py

DESCRIPTION:
    (1,2) subsetwise spanner: every pair of nodes in S keeps its distance up
    to +2, with O(n sqrt|S|) edges.

    After the clustering phase the shortest path of every pair of S is
    considered once, in lexicographic pair order, and bought (all its edges
    added) when cost <= 2 * value. cost is the number of path edges not yet
    present; value counts (x, C) with x a pair endpoint and C a cluster on
    the path that the path would bring strictly closer to x.

    Also houses the BuyLedger shared by all path-buying constructions.
"""

import math
import logging
from collections import Counter

from graphcore import (LOGGER_NAME, Spanner, DistanceCache, PairSpanInputException,
                       PairSpanParameterException, UNREACHABLE, bfs_distances,
                       path_from_row, path_cost)
from clustering import build_clustering, cluster_positions, clampBeta, checkBeta, npow

logger = logging.getLogger(LOGGER_NAME + ".subsetwise")

CONSTRUCTION = "subsetwise"

# Buy when cost <= BUY_FACTOR * value
BUY_FACTOR = 2
# Most times a single (x, C) may count towards the value of bought paths
CONTRIBUTION_CAP = 3


class BuyRecord(object):
    """One evaluated candidate path"""

    def __init__(self, pair, rung, cost, value, bought, length):
        self.pair = pair
        self.rung = rung
        self.cost = cost
        self.value = value
        self.bought = bought
        self.length = length

    def __repr__(self):
        return "BuyRecord(%s, rung=%d, cost=%d, value=%d, bought=%s, length=%d)" % (
            self.pair, self.rung, self.cost, self.value, self.bought, self.length)


class BuyLedger(object):
    """Record of every path evaluated during a path-buying phase.

    contributions counts, per contributor key, how many bought paths that
    key was counted in. Keys are (x, cid) for subsetwise, (source, cid) for
    sourcewise and (cid1, cid2) for the pairwise constructions."""

    def __init__(self, construction, n, beta, **params):
        self.construction = construction
        self.n = n
        self.beta = beta
        self.params = dict(params)
        self.records = []
        self.contributions = Counter()
        self.clustering_edges = 0
        self.bought_edges = 0
        self.phase3_edges = 0
        self.skipped_pairs = 0
        self.cluster_count = 0

    def record(self, pair, rung, cost, value, bought, length, contributors=()):
        rec = BuyRecord(pair, rung, cost, value, bought, length)
        self.records.append(rec)
        if bought:
            self.contributions.update(contributors)
        return rec

    def boughtRecords(self):
        return [r for r in self.records if r.bought]

    def boughtCost(self):
        return sum(r.cost for r in self.records if r.bought)

    def boughtValue(self):
        return sum(r.value for r in self.records if r.bought)

    def maxContribution(self, group=None):
        """Largest contribution count over keys, or over group(key) buckets
        when a grouping function is given"""
        if group is None:
            counts = self.contributions
        else:
            counts = Counter()
            for key, c in self.contributions.items():
                counts[group(key)] += c
        if not counts:
            return 0
        return max(counts.values())

    def __repr__(self):
        return "BuyLedger(%s, records=%d, bought=%d, cost=%d)" % (
            self.construction, len(self.records), len(self.boughtRecords()), self.boughtCost())


def default_beta(n, s):
    "beta with n^beta = sqrt(|S|), clamped to [0,1]"
    if n <= 1:
        return 1.0
    if s <= 0:
        return 0.0
    return clampBeta(0.5 * math.log(s) / math.log(n))


class SubsetwiseParams(object):
    def __init__(self, S, beta=None):
        self.S = sorted(set(S))
        if not self.S:
            raise PairSpanParameterException("Source set S must not be empty")
        if beta is not None:
            checkBeta(beta)
        self.beta = beta

    def resolveBeta(self, n):
        if self.beta is not None:
            return self.beta
        return default_beta(n, len(self.S))

    def budget(self, n, beta):
        "Most edges the path-buying phase may add"
        return 6 * len(self.S) * npow(n, 1 - beta)

    def __repr__(self):
        return "SubsetwiseParams(|S|=%d, beta=%s)" % (len(self.S), self.beta)


def set_distance(row, members):
    "min over members of row, UNREACHABLE if none reachable"
    best = UNREACHABLE
    for m in members:
        d = row[m]
        if d is not UNREACHABLE and (best is UNREACHABLE or d < best):
            best = d
    return best


def _improves(dCurrent, dPath):
    return dCurrent is UNREACHABLE or dCurrent > dPath


def _contributors(p, endpoints, cl, rows):
    positions = cluster_positions(p, cl)
    result = []
    for x in endpoints:
        ix = p.index(x)
        row = rows[x]
        for cid in sorted(positions):
            dPath = min(abs(i - ix) for i in positions[cid])
            if _improves(set_distance(row, cl.members(cid)), dPath):
                result.append((x, cid))
    return result


def value_subsetwise(p, endpoints, cl, current):
    """Number of (x, C), x in endpoints, whose distance in current exceeds
    the along-path distance from x to C's nearest on-path vertex"""
    rows = dict((x, bfs_distances(current.g, current, x)) for x in endpoints)
    return len(_contributors(p, endpoints, cl, rows))


def build_subsetwise(g, params):
    """Returns (Spanner, BuyLedger)"""
    for s in params.S:
        if not (0 <= s < g.n):
            raise PairSpanInputException("Node %s of S out of range 0..%d" % (s, g.n - 1))
    beta = params.resolveBeta(g.n)
    cl, cg = build_clustering(g, beta)
    current = cg.edges.copy()
    ledger = BuyLedger(CONSTRUCTION, g.n, beta, S=len(params.S))
    ledger.clustering_edges = len(cg.edges)
    ledger.cluster_count = len(cl)
    cache = DistanceCache(g, current)
    for i, u in enumerate(params.S):
        rowG = bfs_distances(g, None, u)
        for v in params.S[i + 1:]:
            p = path_from_row(g, None, rowG, v)
            if p is None:
                ledger.skipped_pairs += 1
                continue
            cost = path_cost(p, current)
            contributors = _contributors(p, (u, v), cl, {u: cache.row(u), v: cache.row(v)})
            value = len(contributors)
            bought = cost <= BUY_FACTOR * value
            ledger.record((u, v), 0, cost, value, bought, p.length, contributors)
            if bought and cost > 0:
                ledger.bought_edges += current.addPath(p)
                cache.invalidate()
                logger.debug("Bought %d-%d: cost %d value %d" % (u, v, cost, value))
    spanner = Spanner(g, current, CONSTRUCTION, clustering_edges=ledger.clustering_edges,
                      bought_edges=ledger.bought_edges)
    spanner.clustering = cl
    spanner.cluster_graph = cg
    logger.info("Subsetwise |S|=%d beta %.4f: %d paths bought of %d, %d edges bought, %d total" % (
        len(params.S), beta, len(ledger.boughtRecords()), len(ledger.records), ledger.bought_edges, len(current)))
    return spanner, ledger
