# -*- encoding: UTF8 -*-
# Tests for the verify.py module.

from __future__ import print_function

import sys
import os
import math
import unittest
from io import StringIO
from fractions import Fraction

import numpy as np

# Bring in module to be tested
sys.path.append(os.path.join(os.path.dirname(os.path.abspath(__file__)), '..'))
import logutils         # noqa: E402
import graphcore        # noqa: E402
from graphcore import Graph, EdgeSet, PairSpanInputException   # noqa: E402
from clustering import build_clustering                         # noqa: E402
from multspanner import MultSpannerParams                       # noqa: E402
from subsetwise import SubsetwiseParams, build_subsetwise       # noqa: E402
from sourcewise import SourcewiseParams                         # noqa: E402
from verify import (StretchSpec, verify_stretch, audit_sizes, audit_cluster_counting,   # noqa: E402
                    pairs_for, to_networkx, SizeRow)
from harness import GenSpec, generate_graph                     # noqa: E402

saved_stdoutput = StringIO()
test_logger = None


def floyd_warshall(n, edges):
    d = np.full((n, n), np.inf)
    np.fill_diagonal(d, 0)
    for (u, v) in edges:
        d[u, v] = d[v, u] = 1
    for k in range(n):
        d = np.minimum(d, d[:, k, None] + d[None, k, :])
    return d


def detour_graph():
    """Path 0..10 plus a 15-edge detour 0-11-...-24-10"""
    edges = [(i, i + 1) for i in range(10)]
    detour = [0] + list(range(11, 25)) + [10]
    edges += [(detour[i], detour[i + 1]) for i in range(len(detour) - 1)]
    return Graph(25, edges)


class TestVerify(unittest.TestCase):

    def __init__(self, methodName='runTest'):
        global saved_stdoutput, test_logger
        saved_stdoutput.truncate(0)
        if test_logger is None:
            test_logger = logutils.getLogger(graphcore.LOGGER_NAME, stream=saved_stdoutput)
        self.logger = test_logger
        super(TestVerify, self).__init__(methodName=methodName)

    def testStretchSpec(self):
        spec = StretchSpec("1.1", 4)
        self.assertEqual(Fraction(11, 10), spec.alpha)
        self.assertEqual(Fraction(15), spec.bound(10))
        self.assertEqual(Fraction(11, 10), StretchSpec.nearAdditive("0.1").alpha)
        self.assertEqual(4, StretchSpec.nearAdditive("0.1").add)
        with self.assertRaises(PairSpanInputException):
            StretchSpec(0.5, 0)
        with self.assertRaises(PairSpanInputException):
            StretchSpec(1, -1)

    def testExactBoundary(self):
        "d_H = 1.1 * 10 + 4 exactly must pass"
        g = detour_graph()
        h = EdgeSet(g, [e for e in g.edges() if e != (4, 5)])
        report = verify_stretch(g, h, [(0, 10)], StretchSpec(1.1, 4))
        self.assertEqual(10, report.rows[0].dG)
        self.assertEqual(15, report.rows[0].dH)
        self.assertTrue(report.passed)
        self.assertEqual(0, report.worst_excess)
        report = verify_stretch(g, h, [(0, 10)], StretchSpec("1.09", 4))
        self.assertFalse(report.passed)

    def testUnreachable(self):
        g = Graph(4, [(0, 1)])
        report = verify_stretch(g, [], [(0, 3)], StretchSpec(1, 0))
        self.assertTrue(report.passed)
        self.assertIsNone(report.worst_excess)
        report = verify_stretch(g, [], [(0, 1)], StretchSpec(1, 0))
        self.assertFalse(report.passed)
        self.assertEqual(math.inf, report.worst_excess)
        self.assertEqual(1, len(report.failures()))
        self.assertIn("FAIL", report.witness())

    def testForeignEdge(self):
        g = Graph(3, [(0, 1)])
        with self.assertRaises(PairSpanInputException):
            verify_stretch(g, [(0, 2)], [(0, 1)], StretchSpec(1, 0))

    def testFloydWarshallAgreement(self):
        "Per-pair verdicts match an all-pairs oracle"
        rng = np.random.Generator(np.random.PCG64(21))
        for _ in range(40):
            n = int(rng.integers(2, 30))
            rows, cols = np.triu_indices(n, 1)
            keep = rng.random(len(rows)) < 0.2
            g = Graph(n, zip(rows[keep].tolist(), cols[keep].tolist()))
            edges = list(g.edges())
            h = [e for e, drop in zip(edges, rng.random(len(edges)) < 0.3) if not drop]
            dG = floyd_warshall(n, edges)
            dH = floyd_warshall(n, h)
            pairs = [(s, t) for s in range(n) for t in range(s + 1, n)]
            report = verify_stretch(g, h, pairs, StretchSpec(1, 1))
            for row in report.rows:
                s, t = row.pair
                expected = np.isinf(dG[s, t]) or dH[s, t] <= dG[s, t] + 1
                self.assertEqual(bool(expected), row.ok)

    def testSizeRow(self):
        self.assertTrue(SizeRow("x", 10, 10.0).ok)
        self.assertFalse(SizeRow("x", 11, 10.0).ok)
        self.assertFalse(SizeRow("x", 1, 10.0, ok=False).ok)

    def testAuditSizes(self):
        g = generate_graph(GenSpec("gnp", n=100, p=0.1, seed=2))
        params = SubsetwiseParams(range(0, 100, 10))
        spanner, ledger = build_subsetwise(g, params)
        report = audit_sizes(ledger, params)
        self.assertTrue(report.passed, report.witness())
        self.assertEqual(["ledger_edges", "cluster_count", "bought_edges", "cost_vs_value",
                          "contributions_per_endpoint_cluster"], [r.name for r in report.rows])

    def testAuditSizesCorrupted(self):
        "A bought record whose edges never reached the spanner is flagged"
        g = generate_graph(GenSpec("gnp", n=100, p=0.1, seed=2))
        params = SubsetwiseParams(range(0, 100, 10))
        spanner, ledger = build_subsetwise(g, params)
        ledger.record((0, 10), 0, 10 ** 6, 0, True, 5)
        report = audit_sizes(ledger, params)
        self.assertFalse(report.passed)
        self.assertIn("FAIL", report.witness())

    def testAuditSizesMismatch(self):
        g = generate_graph(GenSpec("gnp", n=50, p=0.1, seed=2))
        params = SubsetwiseParams([0, 10, 20])
        spanner, ledger = build_subsetwise(g, params)
        with self.assertRaises(PairSpanInputException):
            audit_sizes(ledger, SubsetwiseParams([1, 2]))
        with self.assertRaises(PairSpanInputException):
            audit_sizes(ledger, SourcewiseParams([0, 10, 20], 1))
        with self.assertRaises(PairSpanInputException):
            audit_sizes(ledger, MultSpannerParams(2))

    def testClusterCounting(self):
        g = generate_graph(GenSpec("gnp", n=150, p=0.08, seed=4))
        cl, cg = build_clustering(g, 0.5)
        self.assertEqual([], audit_cluster_counting(g, cl, cg, 300, 1))
        with self.assertRaises(PairSpanInputException):
            audit_cluster_counting(g, cl, cg, 0, 1)

    def testPairsFor(self):
        g = Graph(3, [(0, 1)])
        self.assertEqual([(0, 1), (0, 2), (1, 2)], pairs_for("subsetwise", g, [2, 0, 1, 0]))
        self.assertEqual([(1, 0), (1, 2)], pairs_for("sourcewise", g, [1]))
        self.assertEqual([(2, 0)], pairs_for("pairwise-near", g, pairs=[(2, 0)]))

    def testToNetworkx(self):
        nxg = to_networkx(5, [(0, 1), (3, 4)])
        self.assertEqual(5, nxg.number_of_nodes())
        self.assertEqual(2, nxg.number_of_edges())


if __name__ == '__main__':
    unittest.main()
