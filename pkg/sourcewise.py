#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
NAME:
    sourcewise.py

DESCRIPTION:
    (1,2k) sourcewise spanner: every pair in S x V keeps its distance up to
    +2k.

    Each pair walks a ladder of candidate paths. Rung 0 is a shortest path;
    a rung is bought when cost <= 3 * gamma * value, otherwise it is refined
    into a cheaper rung at most 2 hops longer. By rung k the cost is forced
    to zero, so exactly one rung is bought per reachable pair.

    Ladder invariants, checked on every rung j:
        length <= dist_G(u, v) + 2j
        no cluster holds more than 3 path vertices
        cost <= 2 n^(1-beta) / gamma^j
"""

import math
import logging

from graphcore import (LOGGER_NAME, Spanner, DistanceCache, PairSpanInputException,
                       PairSpanParameterException, PairSpanInvariantException, UNREACHABLE,
                       bfs_distances, path_from_row, path_cost, splice_simple)
from clustering import (INTEGRAL_TOLERANCE, build_clustering, cluster_positions,
                        repair_multiplicity, clampBeta, checkBeta, npow)
from subsetwise import BuyLedger, set_distance

logger = logging.getLogger(LOGGER_NAME + ".sourcewise")

CONSTRUCTION = "sourcewise"

BUY_FACTOR = 3


def default_beta(n, s, k):
    "beta with n^beta = (n^(1/k) (2k+3) |S|)^(k/(2k+1)), clamped to [0,1]"
    if n <= 1:
        return 1.0
    if s <= 0:
        return 0.0
    return clampBeta((1.0 + k * math.log((2 * k + 3) * s) / math.log(n)) / (2 * k + 1))


def ladder_gamma(n, beta, k):
    "Per-rung cost shrink factor (3 n^(1-beta))^(1/k)"
    return (3 * npow(n, 1 - beta)) ** (1.0 / k)


def checkRungs(k):
    if k is None or isinstance(k, bool) or int(k) != k or k < 1:
        raise PairSpanParameterException("k must be a positive integer, got %s" % (k,))
    return int(k)


class SourcewiseParams(object):
    def __init__(self, S, k, beta=None):
        self.S = sorted(set(S))
        if not self.S:
            raise PairSpanParameterException("Source set S must not be empty")
        self.k = checkRungs(k)
        if beta is not None:
            checkBeta(beta)
        self.beta = beta

    def resolveBeta(self, n):
        if self.beta is not None:
            return self.beta
        return default_beta(n, len(self.S), self.k)

    def gamma(self, n, beta):
        return ladder_gamma(n, beta, self.k)

    def budget(self, n, beta):
        return BUY_FACTOR * self.gamma(n, beta) * (2 * self.k + 3) * len(self.S) * npow(n, 1 - beta)

    def __repr__(self):
        return "SourcewiseParams(|S|=%d, k=%d, beta=%s)" % (len(self.S), self.k, self.beta)


class CandidatePath(object):
    """Rung of a ladder: a path, its rung index and its cost against the
    spanner built so far"""

    def __init__(self, path, rung, cost):
        self.path = path
        self.rung = rung
        self.cost = cost

    def __repr__(self):
        return "CandidatePath(rung=%d, cost=%d, %s)" % (self.rung, self.cost, self.path)


def rung_cost_cap(n, beta, gamma, rung):
    return 2 * npow(n, 1 - beta) / gamma ** rung


def check_ladder_invariants(cp, distG, cl, costCap, stretchPerRung):
    "Raises PairSpanInvariantException when a rung breaks a ladder invariant"
    if cp.path.length > distG + stretchPerRung * cp.rung:
        raise PairSpanInvariantException("Rung %d too long: %d > %d + %d" % (
            cp.rung, cp.path.length, distG, stretchPerRung * cp.rung))
    for cid, positions in cluster_positions(cp.path, cl).items():
        if len(positions) > 3:
            raise PairSpanInvariantException("Rung %d holds %d vertices of cluster %d" % (
                cp.rung, len(positions), cid))
    if cp.cost > costCap * (1 + INTEGRAL_TOLERANCE) + INTEGRAL_TOLERANCE:
        raise PairSpanInvariantException("Rung %d cost %d exceeds %.6f" % (cp.rung, cp.cost, costCap))


def _contributors(p, source, cl, row):
    "Clusters on p brought strictly closer to source, as (source, cid) keys"
    positions = cluster_positions(p, cl)
    origin = p.index(source)
    result = []
    for cid in sorted(positions):
        dPath = min(abs(i - origin) for i in positions[cid])
        dCurrent = set_distance(row, cl.members(cid))
        if dCurrent is UNREACHABLE or dCurrent > dPath:
            result.append((source, cid))
    return result


def value_sourcewise(p, source, cl, current):
    """Number of clusters C touching p with dist_current(source, C) greater
    than the along-path distance from source to C"""
    row = bfs_distances(current.g, current, source)
    return len(_contributors(p, source, cl, row))


def _longestSuffixStart(p, current, absent):
    """Start index of the longest suffix of p holding exactly `absent` edges
    missing from current"""
    vs = p.vertices
    count = 0
    r = len(vs) - 1
    while r > 0:
        if not current.has(vs[r - 1], vs[r]):
            if count == absent:
                break
            count += 1
        r -= 1
    return r


def _refine(cp, source, cl, cg, current, row, gamma, g):
    p = cp.path
    if p.start != source:
        raise PairSpanInputException("Candidate path must start at source %d" % source)
    absent = int(math.floor(cp.cost / gamma))
    r = _longestSuffixStart(p, current, absent)
    witness = None
    for i in range(r, len(p.vertices)):
        x = p.vertices[i]
        cid = cl.cluster_of[x]
        if cid is None:
            continue
        d = set_distance(row, cl.members(cid))
        if d is not UNREACHABLE and d <= i:
            witness = (i, cid)
            break
    if witness is None:
        raise PairSpanInvariantException("No refinement witness on suffix from %d of %s" % (r, p))
    i, cid = witness
    x = p.vertices[i]
    members = cl.members(cid)
    d = set_distance(row, members)
    y = min(m for m in members if row[m] == d)
    head = path_from_row(g, current, row, y)
    walk = list(head.vertices)
    if y != x:
        walk += [cl.center(cid), x]
    walk += list(p.vertices[i + 1:])
    q = repair_multiplicity(splice_simple(walk, g), cl, cg, have=current, g=g)
    logger.debug("Refined rung %d via cluster %d at index %d: length %d -> %d" % (
        cp.rung, cid, i, p.length, q.length))
    return CandidatePath(q, cp.rung + 1, path_cost(q, current))


def refine_sourcewise(cp, source, cl, cg, current, k=1, gamma=None):
    """Next rung of the ladder: keep the longest suffix with floor(cost/gamma)
    missing edges, and replace everything before it with a route in current
    through a cluster that the suffix already reaches cheaply enough.

    gamma defaults to (3 n^(1-beta))^(1/k)"""
    if gamma is None:
        gamma = ladder_gamma(cl.n, cl.beta, checkRungs(k))
    row = bfs_distances(current.g, current, source)
    return _refine(cp, source, cl, cg, current, row, gamma, current.g)


def build_sourcewise(g, params):
    """Returns (Spanner, BuyLedger)"""
    for s in params.S:
        if not (0 <= s < g.n):
            raise PairSpanInputException("Node %s of S out of range 0..%d" % (s, g.n - 1))
    k = params.k
    beta = params.resolveBeta(g.n)
    gamma = params.gamma(g.n, beta)
    cl, cg = build_clustering(g, beta)
    current = cg.edges.copy()
    ledger = BuyLedger(CONSTRUCTION, g.n, beta, S=len(params.S), k=k, gamma=gamma)
    ledger.clustering_edges = len(cg.edges)
    ledger.cluster_count = len(cl)
    cache = DistanceCache(g, current)
    for u in params.S:
        rowG = bfs_distances(g, None, u)
        for v in range(g.n):
            if v == u:
                continue
            p = path_from_row(g, None, rowG, v)
            if p is None:
                ledger.skipped_pairs += 1
                continue
            cp = CandidatePath(p, 0, path_cost(p, current))
            while True:
                check_ladder_invariants(cp, rowG[v], cl, rung_cost_cap(g.n, beta, gamma, cp.rung), 2)
                row = cache.row(u)
                contributors = _contributors(cp.path, u, cl, row)
                value = len(contributors)
                bought = cp.cost <= BUY_FACTOR * gamma * value
                ledger.record((u, v), cp.rung, cp.cost, value, bought, cp.path.length, contributors)
                if bought:
                    break
                if cp.rung >= k:
                    raise PairSpanInvariantException("Ladder for %d-%d exhausted at rung %d with cost %d" % (
                        u, v, cp.rung, cp.cost))
                cp = _refine(cp, u, cl, cg, current, row, gamma, g)
            if cp.cost > 0:
                ledger.bought_edges += current.addPath(cp.path)
                cache.invalidate()
                logger.debug("Bought %d-%d at rung %d: cost %d value %d" % (u, v, cp.rung, cp.cost, value))
    spanner = Spanner(g, current, CONSTRUCTION, clustering_edges=ledger.clustering_edges,
                      bought_edges=ledger.bought_edges)
    spanner.clustering = cl
    spanner.cluster_graph = cg
    logger.info("Sourcewise |S|=%d k=%d beta %.4f gamma %.4f: %d edges bought, %d total" % (
        len(params.S), k, beta, gamma, ledger.bought_edges, len(current)))
    return spanner, ledger
