#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
NAME:
    harness.py

DESCRIPTION:
    Instance generation, text file formats, the construction registry, the
    shortest-path-union preserver baseline and the benchmark driver.

    Random instances come from numpy's PCG64 bit generator, so a GenSpec or
    PairSpec with a given seed always yields the same graph or pair list.

    Graph file:
        n m
        u v        (m lines, 0 <= u < v < n, ascending)
    Pairs file:
        s t        (one pair per line)
    Blank lines and '#' comments are ignored in both.
"""

import os
import csv
import time
import logging
import multiprocessing

import numpy as np

from graphcore import (LOGGER_NAME, Graph, EdgeSet, Spanner, PairSpanInputException,
                       PairSpanParameterException, bfs_distances, path_from_row)
from clustering import build_clustering
from multspanner import greedy_mult_spanner, ceilLogn, MultSpannerParams
from subsetwise import SubsetwiseParams, BuyLedger, build_subsetwise
from sourcewise import SourcewiseParams, build_sourcewise, checkRungs
from pairwisenear import NearAdditiveParams, build_pairwise_near
from pairwisepure import PureAdditiveParams, build_pairwise_pure
from verify import StretchSpec, verify_stretch, audit_sizes, pairs_for

logger = logging.getLogger(LOGGER_NAME + ".harness")

MODELS = ("gnp", "grid", "tree", "cycle")
PAIR_MODES = ("random-pairs", "subset-cross", "sourcewise-cross")
CSV_COLUMNS = ["construction", "n", "m", "N_or_S", "k_or_eps", "beta", "edges_clustering",
               "edges_bought", "edges_phase3", "edges_total", "baseline_edges", "stretch_pass",
               "worst_excess", "wall_time_ms"]
THREADS_ENV = "PAIRSPAN_THREADS"


def make_rng(seed):
    return np.random.Generator(np.random.PCG64(seed))


class GenSpec(object):
    def __init__(self, model, n=None, p=None, dims=None, seed=0):
        if model not in MODELS:
            raise PairSpanParameterException("Unknown graph model '%s', expected one of %s" % (model, ", ".join(MODELS)))
        self.model = model
        self.p = p
        self.dims = tuple(dims) if dims else None
        self.seed = int(seed)
        if model == "grid":
            if not self.dims or len(self.dims) != 2 or min(self.dims) < 1:
                raise PairSpanParameterException("grid needs dims rows x cols, got %s" % (dims,))
            n = self.dims[0] * self.dims[1]
        if n is None or n < 0:
            raise PairSpanParameterException("Model %s needs a node count, got %s" % (model, n))
        self.n = int(n)
        if model == "gnp" and (p is None or not (0 <= p <= 1)):
            raise PairSpanParameterException("gnp needs 0 <= p <= 1, got %s" % (p,))
        if model == "cycle" and self.n < 3:
            raise PairSpanParameterException("cycle needs n >= 3, got %d" % self.n)

    def withSeed(self, seed):
        return GenSpec(self.model, self.n, self.p, self.dims, seed)

    def __repr__(self):
        return "GenSpec(%s, n=%d, p=%s, dims=%s, seed=%d)" % (self.model, self.n, self.p, self.dims, self.seed)


class PairSpec(object):
    def __init__(self, mode, count, seed=0):
        if mode not in PAIR_MODES:
            raise PairSpanParameterException("Unknown pair mode '%s', expected one of %s" % (mode, ", ".join(PAIR_MODES)))
        if count is None or count < 0:
            raise PairSpanParameterException("Pair count must not be negative, got %s" % (count,))
        self.mode = mode
        self.count = int(count)
        self.seed = int(seed)

    def withSeed(self, seed):
        return PairSpec(self.mode, self.count, seed)

    def __repr__(self):
        return "PairSpec(%s, count=%d, seed=%d)" % (self.mode, self.count, self.seed)


def generate_graph(spec):
    n = spec.n
    rng = make_rng(spec.seed)
    edges = []
    if spec.model == "gnp":
        rows, cols = np.triu_indices(n, 1)
        keep = rng.random(len(rows)) < spec.p
        edges = zip(rows[keep].tolist(), cols[keep].tolist())
    elif spec.model == "grid":
        nrows, ncols = spec.dims
        for r in range(nrows):
            for c in range(ncols):
                v = r * ncols + c
                if c + 1 < ncols:
                    edges.append((v, v + 1))
                if r + 1 < nrows:
                    edges.append((v, v + ncols))
    elif spec.model == "tree":
        for i in range(1, n):
            edges.append((int(rng.integers(0, i)), i))
    elif spec.model == "cycle":
        edges = [(i, (i + 1) % n) for i in range(n)]
    g = Graph(n, edges)
    logger.debug("Generated %s: %s" % (spec, g))
    return g


def make_pairs(g, spec):
    """Pair list for spec; pairs never join a node to itself"""
    n = g.n
    rng = make_rng(spec.seed)
    if spec.mode == "random-pairs":
        if spec.count == 0:
            return []
        if n < 2:
            raise PairSpanParameterException("random-pairs needs at least 2 nodes")
        first = rng.integers(0, n, size=spec.count).tolist()
        second = rng.integers(0, n - 1, size=spec.count).tolist()
        return [(s, t + 1 if t >= s else t) for s, t in zip(first, second)]
    if spec.count > n:
        raise PairSpanParameterException("Cannot choose %d sources from %d nodes" % (spec.count, n))
    sources = sorted(rng.choice(n, size=spec.count, replace=False).tolist())
    if spec.mode == "subset-cross":
        return [(u, v) for i, u in enumerate(sources) for v in sources[i + 1:]]
    return [(u, v) for u in sources for v in range(n) if v != u]


def _dataLines(lines, name):
    for lineno, line in enumerate(lines, 1):
        text = line.split("#", 1)[0].strip()
        if not text:
            continue
        fields = text.split()
        try:
            values = [int(f) for f in fields]
        except ValueError:
            raise PairSpanInputException("%s line %d: expected integers, got '%s'" % (name, lineno, text))
        if len(values) != 2:
            raise PairSpanInputException("%s line %d: expected two values, got '%s'" % (name, lineno, text))
        yield lineno, values


def parse_graph(lines, name="graph"):
    header = None
    edges = []
    for lineno, (u, v) in _dataLines(lines, name):
        if header is None:
            header = (u, v)
            continue
        if not (0 <= u < header[0] and 0 <= v < header[0]):
            raise PairSpanInputException("%s line %d: node out of range 0..%d" % (name, lineno, header[0] - 1))
        edges.append((u, v))
    if header is None:
        raise PairSpanInputException("%s: missing 'n m' header" % name)
    n, m = header
    g = Graph(n, edges)
    if g.m != m or len(edges) != m:
        raise PairSpanInputException("%s: header says %d edges, found %d distinct of %d" % (name, m, g.m, len(edges)))
    return g


def read_graph(path):
    try:
        with open(path) as f:
            return parse_graph(f, path)
    except IOError as e:
        raise PairSpanInputException("Could not read graph file %s: %s" % (path, str(e)))


def format_graph(n, edges):
    edges = sorted(edges)
    lines = ["%d %d" % (n, len(edges))]
    lines.extend(["%d %d" % (u, v) for (u, v) in edges])
    return "\n".join(lines) + "\n"


def write_graph(path, n, edges):
    with open(path, "w") as f:
        f.write(format_graph(n, edges))


def parse_pairs(lines, name="pairs"):
    return [(s, t) for _, (s, t) in _dataLines(lines, name)]


def read_pairs(path):
    try:
        with open(path) as f:
            return parse_pairs(f, path)
    except IOError as e:
        raise PairSpanInputException("Could not read pairs file %s: %s" % (path, str(e)))


def format_pairs(pairs):
    return "".join(["%d %d\n" % (s, t) for (s, t) in pairs])


def write_pairs(path, pairs):
    with open(path, "w") as f:
        f.write(format_pairs(pairs))


def preserver_baseline(g, pairs):
    """Union of one deterministic shortest path per reachable pair"""
    h = EdgeSet(g)
    rows = {}
    for (s, t) in pairs:
        if s not in rows:
            rows[s] = bfs_distances(g, None, s)
        p = path_from_row(g, None, rows[s], t)
        if p is not None:
            h.addPath(p)
    return h


class BuildOptions(object):
    """Parameters shared by every construction; k may be 'log'"""

    def __init__(self, k=2, eps="0.5", beta=None, ordered_pairs=False):
        self.k = k
        self.eps = eps
        self.beta = beta
        self.ordered_pairs = ordered_pairs

    def resolveK(self, n):
        if self.k == "log":
            return max(1, ceilLogn(n))
        return checkRungs(self.k)

    def __repr__(self):
        return "BuildOptions(k=%s, eps=%s, beta=%s, ordered_pairs=%s)" % (
            self.k, self.eps, self.beta, self.ordered_pairs)


class BuildResult(object):
    def __init__(self, construction, spanner, ledger, params, stretch, checked_pairs, size_label, param_label):
        self.construction = construction
        self.spanner = spanner
        self.ledger = ledger
        self.params = params
        self.stretch = stretch
        self.checked_pairs = checked_pairs
        self.size_label = size_label
        self.param_label = param_label


def sources_of(construction, pairs):
    "S for subsetwise is every endpoint; for sourcewise the first endpoints"
    if construction == "subsetwise":
        return sorted(set([s for (s, _) in pairs]) | set([t for (_, t) in pairs]))
    return sorted(set([s for (s, _) in pairs]))


def stretch_for(construction, g, pairs, options):
    "(StretchSpec, checked pairs) that a construction promises for pairs"
    if construction in ("subsetwise", "sourcewise"):
        checked = pairs_for(construction, g, sources_of(construction, pairs))
    else:
        checked = list(pairs)
    if construction == "subsetwise":
        return StretchSpec(1, 2), checked
    if construction == "sourcewise":
        return StretchSpec(1, 2 * options.resolveK(g.n)), checked
    if construction == "pairwise-near":
        return StretchSpec.nearAdditive(options.eps), checked
    if construction == "pairwise-pure":
        return StretchSpec(1, 4 * options.resolveK(g.n)), checked
    if construction == "mult":
        return StretchSpec(2 * options.resolveK(g.n) - 1, 0), checked
    return StretchSpec(1, 0), checked


def _clusteringOnly(g, construction, options):
    "The spanner of an empty source set: the clustering phase alone"
    beta = options.beta if options.beta is not None else 0.0
    cl, cg = build_clustering(g, beta)
    ledger = BuyLedger(construction, g.n, beta, S=0)
    ledger.clustering_edges = len(cg.edges)
    ledger.cluster_count = len(cl)
    spanner = Spanner(g, cg.edges.copy(), construction, clustering_edges=len(cg.edges))
    spanner.clustering = cl
    spanner.cluster_graph = cg
    return spanner, ledger


def _buildSubsetwise(g, pairs, options):
    sources = sources_of("subsetwise", pairs)
    if not sources:
        spanner, ledger = _clusteringOnly(g, "subsetwise", options)
        return spanner, ledger, None, 0, ""
    params = SubsetwiseParams(sources, options.beta)
    spanner, ledger = build_subsetwise(g, params)
    return spanner, ledger, params, len(sources), ""


def _buildSourcewise(g, pairs, options):
    sources = sources_of("sourcewise", pairs)
    k = options.resolveK(g.n)
    if not sources:
        spanner, ledger = _clusteringOnly(g, "sourcewise", options)
        return spanner, ledger, None, 0, k
    params = SourcewiseParams(sources, k, options.beta)
    spanner, ledger = build_sourcewise(g, params)
    return spanner, ledger, params, len(sources), k


def _buildNear(g, pairs, options):
    params = NearAdditiveParams(pairs, options.eps, options.beta, options.ordered_pairs)
    spanner, ledger = build_pairwise_near(g, params)
    return spanner, ledger, params, len(pairs), options.eps


def _buildPure(g, pairs, options):
    params = PureAdditiveParams(pairs, options.resolveK(g.n), options.beta)
    spanner, ledger = build_pairwise_pure(g, params)
    return spanner, ledger, params, len(pairs), params.k


def _buildMult(g, pairs, options):
    params = MultSpannerParams(options.resolveK(g.n))
    h = greedy_mult_spanner(g, params.k)
    return Spanner(g, h, "mult", phase3_edges=len(h)), None, params, len(pairs), params.k


def _buildPreserver(g, pairs, options):
    h = preserver_baseline(g, pairs)
    return Spanner(g, h, "preserver", bought_edges=len(h)), None, None, len(pairs), ""


CONSTRUCTIONS = {
    "subsetwise": _buildSubsetwise,
    "sourcewise": _buildSourcewise,
    "pairwise-near": _buildNear,
    "pairwise-pure": _buildPure,
    "mult": _buildMult,
    "preserver": _buildPreserver,
}


def build_spanner(construction, g, pairs, options):
    """BuildResult for one registered construction"""
    if construction not in CONSTRUCTIONS:
        raise PairSpanParameterException("Unknown construction '%s', expected one of %s" % (
            construction, ", ".join(sorted(CONSTRUCTIONS))))
    pairs = list(pairs)
    spanner, ledger, params, sizeLabel, paramLabel = CONSTRUCTIONS[construction](g, pairs, options)
    stretch, checked = stretch_for(construction, g, pairs, options)
    return BuildResult(construction, spanner, ledger, params, stretch, checked, sizeLabel, paramLabel)


def check_build(g, result):
    "(StretchReport, SizeReport or None) for a BuildResult"
    stretch = verify_stretch(g, result.spanner.edges, result.checked_pairs, result.stretch)
    size = None
    if result.ledger is not None and result.params is not None:
        size = audit_sizes(result.ledger, result.params)
    return stretch, size


def _formatExcess(excess):
    if excess is None:
        return ""
    if excess == float("inf"):
        return "inf"
    return "%g" % float(excess)


def _runCell(cell):
    "One (instance, construction) benchmark cell; returns (row, witness or None)"
    genSpec, pairSpec, construction, options = cell
    g = generate_graph(genSpec)
    pairs = make_pairs(g, pairSpec)
    start = time.time()
    result = build_spanner(construction, g, pairs, options)
    elapsed = (time.time() - start) * 1000.0
    stretch, size = check_build(g, result)
    baseline = preserver_baseline(g, result.checked_pairs)
    sp = result.spanner
    row = {
        "construction": construction,
        "n": g.n,
        "m": g.m,
        "N_or_S": result.size_label,
        "k_or_eps": result.param_label,
        "beta": "%.6f" % result.ledger.beta if result.ledger is not None else "",
        "edges_clustering": sp.clustering_edges,
        "edges_bought": sp.bought_edges,
        "edges_phase3": sp.phase3_edges,
        "edges_total": len(sp),
        "baseline_edges": len(baseline),
        "stretch_pass": "true" if stretch.passed else "false",
        "worst_excess": _formatExcess(stretch.worst_excess),
        "wall_time_ms": "%.1f" % elapsed,
    }
    witness = None
    if not stretch.passed or (size is not None and not size.passed):
        parts = ["%s on %s / %s" % (construction, genSpec, pairSpec)]
        if not stretch.passed:
            parts.append(stretch.witness())
        if size is not None and not size.passed:
            parts.append(size.witness())
        witness = "\n".join(parts)
    return row, witness


def resolve_workers(configured=None):
    "PAIRSPAN_THREADS, then the configured value, then the machine's cores"
    value = os.environ.get(THREADS_ENV)
    if value:
        try:
            return max(1, int(value))
        except ValueError:
            raise PairSpanParameterException("%s must be an integer, got '%s'" % (THREADS_ENV, value))
    if configured:
        return max(1, int(configured))
    return max(1, multiprocessing.cpu_count())


def run_benchmark(genSpec, pairSpec, constructions, sink, options=None, instances=1, workers=None):
    """Build and check every (instance, construction) cell and write one CSV
    row per cell to sink in cell order. Returns (rows, witnesses)"""
    if options is None:
        options = BuildOptions()
    for c in constructions:
        if c not in CONSTRUCTIONS:
            raise PairSpanParameterException("Unknown construction '%s'" % c)
    cells = []
    for i in range(instances):
        for c in constructions:
            cells.append((genSpec.withSeed(genSpec.seed + i), pairSpec.withSeed(pairSpec.seed + i), c, options))
    workers = resolve_workers(workers)
    logger.info("Benchmark: %d cells on %d workers" % (len(cells), workers))
    if workers == 1 or len(cells) <= 1:
        results = [_runCell(cell) for cell in cells]
    else:
        with multiprocessing.Pool(processes=min(workers, len(cells))) as pool:
            results = pool.map(_runCell, cells)
    writer = csv.DictWriter(sink, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    rows = []
    witnesses = []
    for row, witness in results:
        writer.writerow(row)
        rows.append(row)
        if row["construction"] not in ("preserver", "mult") and row["baseline_edges"] < row["edges_total"]:
            logger.warning("Preserver baseline (%d edges) is sparser than %s (%d edges) on n=%d" % (
                row["baseline_edges"], row["construction"], row["edges_total"], row["n"]))
        if witness:
            witnesses.append(witness)
    return rows, witnesses
