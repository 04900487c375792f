# -*- encoding: UTF8 -*-
# Tests for the clustering.py module.

from __future__ import print_function

import sys
import os
import unittest
from io import StringIO

import numpy as np

# Bring in module to be tested
sys.path.append(os.path.join(os.path.dirname(os.path.abspath(__file__)), '..'))
import logutils         # noqa: E402
import graphcore        # noqa: E402
from graphcore import Graph, EdgeSet, Path, PairSpanParameterException, PairSpanInvariantException   # noqa: E402
from clustering import (Clustering, ClusterGraph, build_clustering, repair_multiplicity,   # noqa: E402
                        cluster_positions, touching_clusters, ceilPow, floorPow, npow,
                        checkBeta, clampBeta)
from verify import audit_clustering, audit_cluster_counting     # noqa: E402

saved_stdoutput = StringIO()
test_logger = None


def complete_graph(n):
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def random_graph(rng, n, p):
    rows, cols = np.triu_indices(n, 1)
    keep = rng.random(len(rows)) < p
    return Graph(n, zip(rows[keep].tolist(), cols[keep].tolist()))


def wheel_instance():
    """Path 0-1-2-3-4-5 whose inner vertices 1..4 form one cluster centred
    on 6"""
    g = Graph(7, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (6, 1), (6, 2), (6, 3), (6, 4)])
    cl = Clustering(7, 0.5, 4, [(6, [1, 2, 3, 4])])
    cg = ClusterGraph(g.edgeSet())
    return g, cl, cg


class TestClustering(unittest.TestCase):

    def __init__(self, methodName='runTest'):
        global saved_stdoutput, test_logger
        saved_stdoutput.truncate(0)
        if test_logger is None:
            test_logger = logutils.getLogger(graphcore.LOGGER_NAME, stream=saved_stdoutput)
        self.logger = test_logger
        super(TestClustering, self).__init__(methodName=methodName)

    def testPowers(self):
        self.assertEqual(3, ceilPow(9, 0.5))
        self.assertEqual(4, ceilPow(10, 0.5))
        self.assertEqual(3, floorPow(10, 0.5))
        self.assertEqual(10, ceilPow(1000, 1.0 / 3))
        self.assertEqual(1.0, npow(50, 0))
        self.assertEqual(50.0, npow(50, 1))

    def testBeta(self):
        checkBeta(0)
        checkBeta(1)
        with self.assertRaises(PairSpanParameterException):
            checkBeta(1.5)
        with self.assertRaises(PairSpanParameterException):
            checkBeta(None)
        self.assertEqual(0.0, clampBeta(float('nan')))
        self.assertEqual(1.0, clampBeta(3.2))

    def testCompleteGraphGolden(self):
        "K_9 at beta 0.5 gives three clusters and 17 retained edges"
        g = complete_graph(9)
        cl, cg = build_clustering(g, 0.5)
        self.assertEqual(3, cl.size_threshold)
        self.assertEqual(3, len(cl))
        self.assertEqual([(0, {1, 2, 3}), (0, {4, 5, 6}), (1, {0, 7, 8})],
                         [(c.center, set(c.members)) for c in cl.clusters])
        self.assertEqual(17, len(cg))
        self.assertEqual([], audit_clustering(g, cl, cg))

    def testBetaOne(self):
        "No vertex reaches threshold n so every edge is kept"
        g = complete_graph(6)
        cl, cg = build_clustering(g, 1)
        self.assertEqual(0, len(cl))
        self.assertEqual(g.edgeSet(), cg.edges)

    def testBetaZero(self):
        g = Graph(4, [(0, 1), (1, 2), (2, 3)])
        cl, cg = build_clustering(g, 0)
        self.assertEqual(1, cl.size_threshold)
        self.assertTrue(all(cl.isClustered(v) for v in range(4)))
        self.assertEqual(3, len(cg))
        self.assertEqual([], audit_clustering(g, cl, cg))

    def testEmptyGraph(self):
        g = Graph(5)
        cl, cg = build_clustering(g, 0.5)
        self.assertEqual(0, len(cl))
        self.assertEqual(0, len(cg))

    def testClusterPositions(self):
        g, cl, cg = wheel_instance()
        p = Path([0, 1, 2, 3, 4, 5])
        self.assertEqual({0: [1, 2, 3, 4]}, cluster_positions(p, cl))
        self.assertEqual([0], touching_clusters(p, cl))
        self.assertEqual([], touching_clusters(Path([0]), cl))

    def testRepairMultiplicity(self):
        "Four members on a path collapse to member-centre-member"
        g, cl, cg = wheel_instance()
        p = Path([0, 1, 2, 3, 4, 5])
        repaired = repair_multiplicity(p, cl, cg, have=cg.edges, g=g)
        self.assertEqual(Path([0, 1, 6, 4, 5]), repaired)
        self.assertTrue(repaired.isValid(g))
        short = Path([0, 1, 2, 3])
        self.assertEqual(short, repair_multiplicity(short, cl, cg))

    def testRepairNeedsCentreEdges(self):
        g, cl, _ = wheel_instance()
        cg = ClusterGraph(EdgeSet(g, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]))
        with self.assertRaises(PairSpanInvariantException):
            repair_multiplicity(Path([0, 1, 2, 3, 4, 5]), cl, cg)

    def testClusteringAuditDetectsMissingCentreEdge(self):
        g = complete_graph(9)
        cl, cg = build_clustering(g, 0.5)
        broken = ClusterGraph(EdgeSet(g, [e for e in cg.edges if e != (0, 1)]))
        self.assertNotEqual([], audit_clustering(g, cl, broken))

    def testClusteringAuditDiameter(self):
        "Members that only meet through a dropped centre edge are flagged"
        g = Graph(5, [(4, 0), (4, 1)])
        cl = Clustering(5, 0.5, 2, [(4, [0, 1])])
        cg = ClusterGraph(EdgeSet(g, [(0, 4)]))
        violations = audit_clustering(g, cl, cg)
        self.assertTrue(any("2 hops" in v for v in violations), violations)
        self.assertFalse(any("2 hops" in v for v in audit_clustering(g, cl, ClusterGraph(g.edgeSet()))))

    def testRandomClusterings(self):
        "Structural properties and cluster counting on random graphs"
        rng = np.random.Generator(np.random.PCG64(5))
        for trial in range(60):
            n = int(rng.integers(2, 90))
            g = random_graph(rng, n, float(rng.random()) * 0.3)
            beta = float(rng.random())
            cl, cg = build_clustering(g, beta)
            self.assertEqual([], audit_clustering(g, cl, cg))
            self.assertEqual([], audit_cluster_counting(g, cl, cg, 40, trial))


if __name__ == '__main__':
    unittest.main()
