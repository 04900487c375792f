#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
NAME:
    multspanner.py

DESCRIPTION:
    Multiplicative (2k-1)-spanner, built greedily: edges are scanned in
    lexicographic order and an edge is kept only if its endpoints are more
    than 2k-1 hops apart in the spanner built so far. The result has girth
    greater than 2k and hence O(n^(1+1/k)) edges.

    Used as the third phase of the near-additive pairwise spanner with
    k = ceil(log n), and as a standalone construction.
"""

import math
import logging
from collections import deque

from graphcore import LOGGER_NAME, EdgeSet, PairSpanParameterException

logger = logging.getLogger(LOGGER_NAME + ".multspanner")

# Base of every "log n" in the constructions
LOG_BASE = 2


def logn(n):
    "log n in LOG_BASE"
    if n <= 1:
        return 0.0
    if LOG_BASE == 2:
        return math.log2(n)
    return math.log(n, LOG_BASE)


def ceilLogn(n):
    "ceil(log n) computed exactly for base 2"
    if n <= 1:
        return 0
    if LOG_BASE == 2:
        return (n - 1).bit_length()
    return int(math.ceil(math.log(n, LOG_BASE) - 1e-12))


class MultSpannerParams(object):
    def __init__(self, k):
        if k is None or int(k) != k or k < 1:
            raise PairSpanParameterException("k must be a positive integer, got %s" % (k,))
        self.k = int(k)

    @property
    def stretch(self):
        return 2 * self.k - 1

    def __repr__(self):
        return "MultSpannerParams(k=%d)" % self.k


def _withinDistance(h, u, v, limit):
    "True if v is at most limit hops from u using edges of h"
    if u == v:
        return True
    seen = {u: 0}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        dx = seen[x]
        if dx == limit:
            continue
        for y in h.neighbours(x):
            if y not in seen:
                if y == v:
                    return True
                seen[y] = dx + 1
                queue.append(y)
    return False


def greedy_mult_spanner(g, k):
    """Edge subset H with delta_H(u,v) <= 2k-1 for every edge {u,v} of g"""
    params = MultSpannerParams(k)
    limit = params.stretch
    h = EdgeSet(g)
    skipped = 0
    for (u, v) in g.edges():
        if _withinDistance(h, u, v, limit):
            skipped += 1
        else:
            h.add(u, v)
    logger.info("Greedy spanner k=%d: kept %d edges, skipped %d" % (params.k, len(h), skipped))
    return h


def log_stretch_spanner(g):
    """Greedy spanner with k = ceil(log n); stretch 2*ceil(log n)-1"""
    if g.n < 2:
        return EdgeSet(g)
    return greedy_mult_spanner(g, ceilLogn(g.n))
