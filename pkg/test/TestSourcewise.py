# -*- encoding: UTF8 -*-
# Tests for the sourcewise.py module.

from __future__ import print_function

import sys
import os
import math
import unittest
from io import StringIO
from collections import Counter

# Bring in module to be tested
sys.path.append(os.path.join(os.path.dirname(os.path.abspath(__file__)), '..'))
import logutils         # noqa: E402
import graphcore        # noqa: E402
from graphcore import (Graph, EdgeSet, Path, PairSpanInputException,    # noqa: E402
                       PairSpanParameterException, PairSpanInvariantException)
from clustering import Clustering, ClusterGraph      # noqa: E402
from sourcewise import (SourcewiseParams, CandidatePath, build_sourcewise, refine_sourcewise,   # noqa: E402
                        value_sourcewise, check_ladder_invariants, ladder_gamma, default_beta,
                        rung_cost_cap)
from verify import StretchSpec, verify_stretch, audit_sizes, pairs_for      # noqa: E402
from harness import GenSpec, PairSpec, generate_graph, make_pairs, sources_of   # noqa: E402

saved_stdoutput = StringIO()
test_logger = None


def detour_instance():
    """Path 0-1-2-3 missing edge 0-1. Node 1 sits in cluster {1,4} centred
    on 5, and 0 reaches member 4 directly"""
    g = Graph(6, [(0, 1), (1, 2), (2, 3), (5, 1), (5, 4), (0, 4)])
    cl = Clustering(6, 0.5, 2, [(5, [1, 4])])
    current = EdgeSet(g, [e for e in g.edges() if e != (0, 1)])
    cg = ClusterGraph(current.copy())
    return g, cl, cg, current


SWEEP_GRAPHS = [GenSpec("gnp", n=80, p=0.08), GenSpec("grid", dims=(6, 8)),
                GenSpec("tree", n=60), GenSpec("cycle", n=30)]
SWEEP_BETAS = [None, 0, 0.25, 0.5, 0.75]


class TestSourcewise(unittest.TestCase):

    def __init__(self, methodName='runTest'):
        global saved_stdoutput, test_logger
        saved_stdoutput.truncate(0)
        if test_logger is None:
            test_logger = logutils.getLogger(graphcore.LOGGER_NAME, stream=saved_stdoutput)
        self.logger = test_logger
        super(TestSourcewise, self).__init__(methodName=methodName)

    def testGamma(self):
        self.assertAlmostEqual(30.0, ladder_gamma(100, 0.5, 1))
        self.assertAlmostEqual(math.sqrt(30.0), ladder_gamma(100, 0.5, 2))
        self.assertGreaterEqual(ladder_gamma(5, 1, 3), 1)
        # Rung k is forced to cost below 1
        gamma = ladder_gamma(200, 0.4, 3)
        self.assertLess(rung_cost_cap(200, 0.4, gamma, 3), 1)

    def testDefaultBeta(self):
        n, s, k = 1000, 10, 2
        expected = (1 + k * math.log((2 * k + 3) * s) / math.log(n)) / (2 * k + 1)
        self.assertAlmostEqual(expected, default_beta(n, s, k))
        self.assertEqual(1.0, default_beta(1, 3, 2))

    def testParams(self):
        params = SourcewiseParams([3, 1], 2)
        self.assertEqual([1, 3], params.S)
        for bad in (0, 1.5, True, None):
            with self.assertRaises(PairSpanParameterException):
                SourcewiseParams([1], bad)
        with self.assertRaises(PairSpanParameterException):
            SourcewiseParams([], 1)

    def testValue(self):
        g, cl, cg, current = detour_instance()
        p = Path([0, 1, 2, 3])
        # 0 reaches the cluster in one hop via 4, no closer than along p
        self.assertEqual(0, value_sourcewise(p, 0, cl, current))
        self.assertEqual(0, value_sourcewise(p, 0, cl, g.edgeSet()))
        far = EdgeSet(g, [(1, 2), (2, 3), (5, 1), (5, 4)])
        self.assertEqual(1, value_sourcewise(p, 0, cl, far))

    def testRefine(self):
        "The suffix after the missing edge is rerouted through the cluster"
        g, cl, cg, current = detour_instance()
        cp = CandidatePath(Path([0, 1, 2, 3]), 0, 1)
        nxt = refine_sourcewise(cp, 0, cl, cg, current, gamma=2.0)
        self.assertEqual(Path([0, 4, 5, 1, 2, 3]), nxt.path)
        self.assertEqual(1, nxt.rung)
        self.assertEqual(0, nxt.cost)
        check_ladder_invariants(nxt, 3, cl, 1.0, 2)

    def testRefineWrongSource(self):
        g, cl, cg, current = detour_instance()
        with self.assertRaises(PairSpanInputException):
            refine_sourcewise(CandidatePath(Path([3, 2, 1, 0]), 0, 1), 0, cl, cg, current, gamma=2.0)

    def testLadderInvariants(self):
        g, cl, cg, current = detour_instance()
        cp = CandidatePath(Path([0, 4, 5, 1, 2, 3]), 0, 0)
        with self.assertRaises(PairSpanInvariantException):
            check_ladder_invariants(cp, 3, cl, 10, 2)
        with self.assertRaises(PairSpanInvariantException):
            check_ladder_invariants(CandidatePath(Path([0, 1, 2, 3]), 1, 3), 3, cl, 2.5, 2)

    def testTree(self):
        "Paths in a tree are unique, so every distance is exact"
        g = generate_graph(GenSpec("tree", n=60, seed=9))
        params = SourcewiseParams([0, 17, 42], 2)
        spanner, ledger = build_sourcewise(g, params)
        pairs = pairs_for("sourcewise", g, params.S)
        self.assertTrue(verify_stretch(g, spanner.edges, pairs, StretchSpec(1, 0)).passed)

    def testCompleteGraph(self):
        g = Graph(5, [(u, v) for u in range(5) for v in range(u + 1, 5)])
        params = SourcewiseParams(range(5), 1)
        spanner, ledger = build_sourcewise(g, params)
        pairs = pairs_for("sourcewise", g, params.S)
        self.assertTrue(verify_stretch(g, spanner.edges, pairs, StretchSpec(1, 2)).passed)

    def testRandomGraph(self):
        "G(200, 0.05) with 5 sources and k=2 keeps S x V within +4"
        g = generate_graph(GenSpec("gnp", n=200, p=0.05, seed=7))
        S = sources_of("sourcewise", make_pairs(g, PairSpec("sourcewise-cross", 5, seed=7)))
        self.assertEqual(5, len(S))
        params = SourcewiseParams(S, 2)
        spanner, ledger = build_sourcewise(g, params)
        pairs = pairs_for("sourcewise", g, S)
        self.assertEqual(995, len(pairs))
        report = verify_stretch(g, spanner.edges, pairs, StretchSpec(1, 4))
        self.assertTrue(report.passed, report.witness())
        sizes = audit_sizes(ledger, params)
        self.assertTrue(sizes.passed, sizes.witness())
        bought = Counter(rec.pair for rec in ledger.records if rec.bought)
        self.assertEqual(995 - ledger.skipped_pairs, len(bought))
        self.assertEqual({1}, set(bought.values()))
        self.assertTrue(all(rec.rung <= 2 for rec in ledger.records))

    def testSweep(self):
        "Seeded models, beta overrides and k values all keep +2k"
        for spec in SWEEP_GRAPHS:
            for seed in (1, 2):
                g = generate_graph(spec.withSeed(seed))
                S = sources_of("sourcewise", make_pairs(g, PairSpec("sourcewise-cross", 2, seed=seed)))
                pairs = pairs_for("sourcewise", g, S)
                for beta in SWEEP_BETAS:
                    for k in (1, 2):
                        with self.subTest(graph=spec.model, seed=seed, beta=beta, k=k):
                            params = SourcewiseParams(S, k, beta)
                            spanner, ledger = build_sourcewise(g, params)
                            report = verify_stretch(g, spanner.edges, pairs, StretchSpec(1, 2 * k))
                            self.assertTrue(report.passed, report.witness())
                            sizes = audit_sizes(ledger, params)
                            self.assertTrue(sizes.passed, sizes.witness())
                            bought = Counter(rec.pair for rec in ledger.records if rec.bought)
                            self.assertEqual(len(pairs) - ledger.skipped_pairs, len(bought))
                            self.assertTrue(all(count == 1 for count in bought.values()))
                            self.assertTrue(all(rec.rung <= k for rec in ledger.records))
                            last = [rec for rec in ledger.records if rec.rung == k]
                            self.assertTrue(all(rec.bought and rec.cost == 0 for rec in last))

    def testSourceOutOfRange(self):
        g = Graph(3, [(0, 1)])
        with self.assertRaises(PairSpanInputException):
            build_sourcewise(g, SourcewiseParams([3], 1))


if __name__ == '__main__':
    unittest.main()
