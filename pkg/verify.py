#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
NAME:
    verify.py

DESCRIPTION:
    Independent checks of spanner outputs.

    Distances here come from networkx, never from the BFS rows used while
    building, so a bug in one code path shows up as a disagreement.
    Stretch bounds are compared with exact rationals. Size audits evaluate
    the explicit edge budgets of each construction against its BuyLedger.
"""

import math
import logging
from fractions import Fraction
from collections import defaultdict

import numpy as np
import networkx as nx

from graphcore import LOGGER_NAME, Path, PairSpanInputException, path_cost
from clustering import INTEGRAL_TOLERANCE, npow, touching_clusters
from subsetwise import SubsetwiseParams, CONTRIBUTION_CAP as SUBSETWISE_CAP
from sourcewise import SourcewiseParams
from pairwisenear import NearAdditiveParams, CONTRIBUTION_CAP as NEAR_CAP, parse_eps
from pairwisepure import PureAdditiveParams

logger = logging.getLogger(LOGGER_NAME + ".verify")


class StretchSpec(object):
    """f(d) = alpha * d + add, held as exact rationals"""

    def __init__(self, alpha=1, add=0):
        self.alpha = Fraction(str(alpha)) if not isinstance(alpha, Fraction) else alpha
        self.add = Fraction(str(add)) if not isinstance(add, Fraction) else add
        if self.alpha < 1 or self.add < 0:
            raise PairSpanInputException("Stretch needs alpha >= 1 and add >= 0, got %s, %s" % (alpha, add))

    @classmethod
    def nearAdditive(cls, eps, add=4):
        return cls(1 + parse_eps(eps), add)

    def bound(self, d):
        return self.alpha * d + self.add

    def __repr__(self):
        return "StretchSpec(%s*d + %s)" % (self.alpha, self.add)


class StretchRow(object):
    def __init__(self, pair, dG, dH, bound, ok):
        self.pair = pair
        self.dG = dG
        self.dH = dH
        self.bound = bound
        self.ok = ok

    def __repr__(self):
        return "%s: d_G=%s d_H=%s bound=%s %s" % (self.pair, self.dG, self.dH, self.bound,
                                                  "ok" if self.ok else "FAIL")


class StretchReport(object):
    """Per-pair results. worst_excess is the largest d_H - bound over pairs
    reachable in G (None when there are none, infinite when some such pair
    is unreachable in H)"""

    def __init__(self, spec):
        self.spec = spec
        self.rows = []
        self.worst_excess = None

    def add(self, row):
        self.rows.append(row)
        if row.dG is None:
            return
        excess = math.inf if row.dH is None else row.dH - row.bound
        if self.worst_excess is None or excess > self.worst_excess:
            self.worst_excess = excess

    @property
    def passed(self):
        return self.worst_excess is None or self.worst_excess <= 0

    def failures(self):
        return [r for r in self.rows if not r.ok]

    def witness(self, limit=10):
        lines = ["Stretch %s: %d of %d pairs fail" % (self.spec, len(self.failures()), len(self.rows))]
        lines.extend(["  %s" % r for r in self.failures()[:limit]])
        return "\n".join(lines)


class SizeRow(object):
    def __init__(self, name, observed, allowed, ok=None):
        self.name = name
        self.observed = observed
        self.allowed = allowed
        if ok is None:
            ok = observed <= allowed * (1 + INTEGRAL_TOLERANCE) + INTEGRAL_TOLERANCE
        self.ok = ok

    def __repr__(self):
        return "%s: observed %s allowed %s %s" % (self.name, self.observed, self.allowed,
                                                  "ok" if self.ok else "FAIL")


class SizeReport(object):
    def __init__(self, construction, clustering_edges, bought_edges, phase3_edges):
        self.construction = construction
        self.clustering_edges = clustering_edges
        self.bought_edges = bought_edges
        self.phase3_edges = phase3_edges
        self.rows = []

    def add(self, name, observed, allowed, ok=None):
        self.rows.append(SizeRow(name, observed, allowed, ok))

    @property
    def passed(self):
        return all(r.ok for r in self.rows)

    def witness(self):
        lines = ["Size audit %s (clustering %d, bought %d, phase3 %d)" % (
            self.construction, self.clustering_edges, self.bought_edges, self.phase3_edges)]
        lines.extend(["  %s" % r for r in self.rows])
        return "\n".join(lines)


def to_networkx(n, edges):
    result = nx.Graph()
    result.add_nodes_from(range(n))
    result.add_edges_from(edges)
    return result


def verify_stretch(g, h, pairs, spec):
    """Exact check of d_H(s,t) <= spec.bound(d_G(s,t)) for every pair"""
    for (u, v) in h:
        if not g.hasEdge(u, v):
            raise PairSpanInputException("Spanner edge {%s,%s} is not in the graph" % (u, v))
    pairs = list(pairs)
    for (s, t) in pairs:
        g.checkNode(s)
        g.checkNode(t)
    nxG = to_networkx(g.n, g.edges())
    nxH = to_networkx(g.n, h)
    bySource = defaultdict(list)
    for i, (s, t) in enumerate(pairs):
        bySource[s].append(i)
    rows = [None] * len(pairs)
    for s in sorted(bySource):
        distG = nx.single_source_shortest_path_length(nxG, s)
        distH = nx.single_source_shortest_path_length(nxH, s)
        for i in bySource[s]:
            t = pairs[i][1]
            dG = distG.get(t)
            dH = distH.get(t)
            if dG is None:
                rows[i] = StretchRow(pairs[i], None, dH, None, True)
            else:
                bound = spec.bound(dG)
                rows[i] = StretchRow(pairs[i], dG, dH, bound, dH is not None and dH <= bound)
    report = StretchReport(spec)
    for row in rows:
        report.add(row)
    logger.info("Stretch %s over %d pairs: %s, worst excess %s" % (
        spec, len(pairs), "pass" if report.passed else "FAIL", report.worst_excess))
    return report


def _checkMatch(ledger, construction, params):
    if ledger.construction != construction:
        raise PairSpanInputException("Ledger from %s audited with %s parameters" % (ledger.construction, construction))
    if params.beta is not None and abs(params.beta - ledger.beta) > INTEGRAL_TOLERANCE:
        raise PairSpanInputException("Ledger beta %s does not match parameter beta %s" % (ledger.beta, params.beta))
    for key in ("S", "N", "k"):
        if key in ledger.params:
            expected = len(params.S) if key == "S" else getattr(params, key)
            if ledger.params[key] != expected:
                raise PairSpanInputException("Ledger %s=%s does not match parameters %s" % (
                    key, ledger.params[key], expected))


def audit_sizes(ledger, params):
    """SizeReport of every explicit-constant budget for the construction the
    ledger came from"""
    n, beta = ledger.n, ledger.beta
    clusters = npow(n, 1 - beta)
    report = SizeReport(ledger.construction, ledger.clustering_edges, ledger.bought_edges, ledger.phase3_edges)
    cost = ledger.boughtCost()
    report.add("ledger_edges", ledger.bought_edges, cost, ok=(ledger.bought_edges == cost))
    report.add("cluster_count", ledger.cluster_count, clusters)
    if isinstance(params, SubsetwiseParams):
        _checkMatch(ledger, "subsetwise", params)
        report.add("bought_edges", cost, params.budget(n, beta))
        report.add("cost_vs_value", cost, 2 * ledger.boughtValue())
        report.add("contributions_per_endpoint_cluster", ledger.maxContribution(), SUBSETWISE_CAP)
    elif isinstance(params, SourcewiseParams):
        _checkMatch(ledger, "sourcewise", params)
        k = params.k
        report.add("bought_edges", cost, params.budget(n, beta))
        report.add("contributions_per_source_cluster", ledger.maxContribution(), 2 * k + 3)
        report.add("contributions_per_cluster", ledger.maxContribution(lambda key: key[1]),
                   (2 * k + 3) * len(params.S))
    elif isinstance(params, NearAdditiveParams):
        _checkMatch(ledger, "pairwise-near", params)
        report.add("bought_edges", cost, params.budget(n, beta))
        report.add("contributions_per_cluster_pair", ledger.maxContribution(), NEAR_CAP)
        report.add("bought_value", ledger.boughtValue(), NEAR_CAP * clusters ** 2)
    elif isinstance(params, PureAdditiveParams):
        _checkMatch(ledger, "pairwise-pure", params)
        report.add("bought_edges", cost, params.budget(n, beta))
        report.add("contributions_per_cluster_pair", ledger.maxContribution(), 4 * params.k + 5)
    else:
        raise PairSpanInputException("No size audit for parameters %r" % (params,))
    if not report.passed:
        logger.warning(report.witness())
    return report


def audit_cluster_counting(g, cl, cg, trials, seed):
    """Sample shortest paths and check that a path missing t edges of the
    cluster graph touches at least ceil(t/2) clusters. Returns the list of
    counterexamples, empty on success"""
    if trials < 1:
        raise PairSpanInputException("trials must be at least 1")
    witnesses = []
    if g.n < 2:
        return witnesses
    rng = np.random.Generator(np.random.PCG64(seed))
    nxG = to_networkx(g.n, g.edges())
    ends = rng.integers(0, g.n, size=(trials, 2))
    for (u, v) in ends.tolist():
        if u == v or not nx.has_path(nxG, u, v):
            continue
        p = Path(nx.shortest_path(nxG, u, v))
        t = path_cost(p, cg.edges)
        touching = len(touching_clusters(p, cl))
        if touching < (t + 1) // 2:
            witnesses.append("%s misses %d edges but touches %d clusters" % (p, t, touching))
    if witnesses:
        logger.warning("Cluster counting audit: %d of %d paths fail" % (len(witnesses), trials))
    return witnesses


def audit_clustering(g, cl, cg):
    """Structural checks of a clustering and its retained edges: cluster
    sizes, disjointness, member-centre edges, members pairwise within 2
    hops in the cluster graph, the cluster count, that every dropped edge
    joins two clusters, and the edge bound. Returns violation strings,
    empty on success"""
    violations = []
    t = cl.size_threshold
    edges = cg.edges
    nxCG = to_networkx(g.n, edges)
    seen = {}
    for c in cl.clusters:
        if len(c.members) != t:
            violations.append("cluster %d has %d members, expected %d" % (c.cid, len(c.members), t))
        if c.center in c.members:
            violations.append("cluster %d contains its own centre %d" % (c.cid, c.center))
        for v in c.members:
            if v in seen:
                violations.append("node %d in clusters %d and %d" % (v, seen[v], c.cid))
            seen[v] = c.cid
            if cl.cluster_of[v] != c.cid:
                violations.append("node %d cluster_of is %s, expected %d" % (v, cl.cluster_of[v], c.cid))
            if not edges.has(v, c.center):
                violations.append("member %d of cluster %d not joined to centre %d" % (v, c.cid, c.center))
        for v in sorted(c.members):
            near = nx.single_source_shortest_path_length(nxCG, v, cutoff=2)
            for w in sorted(c.members):
                if w > v and w not in near:
                    violations.append("members %d and %d of cluster %d more than 2 hops apart" % (v, w, c.cid))
    if len(cl) > cl.maxClusters() * (1 + INTEGRAL_TOLERANCE):
        violations.append("%d clusters exceed n^(1-beta) = %.4f" % (len(cl), cl.maxClusters()))
    for (u, v) in g.edges():
        if edges.has(u, v):
            continue
        cu, cv = cl.cluster_of[u], cl.cluster_of[v]
        if cu is None or cv is None or cu == cv:
            violations.append("missing edge %d-%d does not join two clusters (%s, %s)" % (u, v, cu, cv))
    bound = len(cl) * (t + 1) ** 2 + g.n * t
    if len(edges) > bound:
        violations.append("cluster graph has %d edges, bound %d" % (len(edges), bound))
    for v in violations:
        logger.warning("Clustering audit: %s" % v)
    return violations


def girth_exceeds(n, h, bound):
    """True if every cycle of h is longer than bound"""
    nxH = to_networkx(n, h)
    for (u, v) in list(nxH.edges()):
        nxH.remove_edge(u, v)
        near = nx.single_source_shortest_path_length(nxH, u, cutoff=bound - 1)
        nxH.add_edge(u, v)
        if v in near:
            return False
    return True


def audit_mult_spanner(g, h, k):
    """Every edge of g stretched at most 2k-1 in h and girth of h above 2k.
    Returns violation strings"""
    violations = []
    limit = 2 * k - 1
    nxH = to_networkx(g.n, h)
    for u in range(g.n):
        near = None
        for v in g.neighbours(u):
            if u > v:
                continue
            if near is None:
                near = nx.single_source_shortest_path_length(nxH, u, cutoff=limit)
            if v not in near:
                violations.append("edge %d-%d stretched beyond %d" % (u, v, limit))
    if not girth_exceeds(g.n, h, 2 * k):
        violations.append("girth not above %d" % (2 * k))
    return violations


def pairs_for(construction, g, sources=(), pairs=()):
    """Pairs whose stretch a construction guarantees: S x S, S x V, or the
    given list"""
    if construction == "subsetwise":
        s = sorted(set(sources))
        return [(u, v) for i, u in enumerate(s) for v in s[i + 1:]]
    if construction == "sourcewise":
        return [(u, v) for u in sorted(set(sources)) for v in range(g.n) if v != u]
    return list(pairs)
