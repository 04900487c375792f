#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
NAME:
    PairSpan.py

DESCRIPTION:
    Builds and checks pairwise graph spanners: sparse subgraphs that keep
    the distances of a designated set of node pairs within a known stretch.

    Constructions:
        subsetwise      +2 on S x S
        sourcewise      +2k on S x V
        pairwise-near   (1+eps) d + 4 on a pair list
        pairwise-pure   +4k on a pair list
        mult            greedy (2k-1) multiplicative spanner
        preserver       union of shortest paths (exact, baseline)

    Usage:

        python3 PairSpan.py -h
        python3 PairSpan.py gen --model gnp --n 200 --p 0.05 --seed 7 --out g.txt
        python3 PairSpan.py pairs --in g.txt --mode subset-cross --count 12 --out p.txt
        python3 PairSpan.py build --in g.txt --pairs p.txt --construction subsetwise --out h.txt
        python3 PairSpan.py verify --in g.txt --spanner h.txt --pairs p.txt --construction subsetwise
        python3 PairSpan.py bench --model gnp --n 200 --p 0.05 --mode subset-cross --count 12 --csv out.csv

    Exit status is 0 when everything was built and verified, 2 when a
    stretch or size check failed and 1 for usage, file or config errors.

    An optional config file, by default pairspan.yaml, supplies defaults for
    any option not given on the command line. An initial example can be
    generated with:

        PairSpan.py --sample-config > pairspan.yaml
"""

from __future__ import print_function, division

import sys
import os
import argparse
import textwrap
import logging

import logutils
from graphcore import (LOGGER_NAME, PairSpanException, PairSpanInputException,
                       PairSpanConfigException, PairSpanVerificationException, EdgeSet)
from clustering import checkBeta
import harness
from harness import (GenSpec, PairSpec, BuildOptions, CONSTRUCTIONS, generate_graph, make_pairs,
                     read_graph, read_pairs, format_graph, format_pairs, build_spanner, check_build,
                     run_benchmark, stretch_for)
from verify import verify_stretch

# Import yaml which will roundtrip comments
from ruamel.yaml import YAML
yaml = YAML()

VERSION = """PairSpan 1.0"""

alreadyLogged = {}


# Log messages just once per run
def logOnce(logger, *args):
    global alreadyLogged
    msg = ", ".join([str(x) for x in args])
    if msg not in alreadyLogged:
        alreadyLogged[msg] = 1
        logger.debug(msg)


CONFIG_FILE = 'pairspan.yaml'
EXIT_OK = 0
EXIT_ERROR = 1
EXIT_VERIFY_FAILED = 2

# This is for writing to sample config file
DEFAULT_CONFIG = yaml.load(r"""
# threads: Worker processes for bench. The environment variable PAIRSPAN_THREADS overrides it.
#    Blank means one per CPU.
threads:

# log_file: Also log (at debug level) to this file. true means an auto-named
#    pairspan-<timestamp>.log in the current directory. Blank means stderr only.
log_file:

# k: Ladder rungs for sourcewise/pairwise-pure (additive stretch 2k/4k) and k for mult.
#    Use "log" for k = ceil(log2 n).
k: 2

# eps: Multiplicative slack for pairwise-near, as a decimal string so it is read exactly.
eps: "0.5"

# beta: Clustering exponent in [0,1], or auto for each construction's default.
beta: auto

# constructions: Constructions run by bench.
constructions:
- subsetwise
- sourcewise
- pairwise-near
- pairwise-pure

# instances: Seeded instances per construction for bench (seed, seed+1, ...).
instances: 1

# model: Graph model for gen/bench - one of gnp, grid, tree, cycle.
model: gnp

# n: Node count. Integer expressions in quotes are allowed, e.g. "2 * 100".
n: 200

# p: Edge probability for gnp.
p: 0.05

# dims: Rows and columns for grid, e.g. 10x20.
dims: 10x10

# pair_mode: How pairs are drawn - random-pairs, subset-cross or sourcewise-cross.
pair_mode: subset-cross

# count: Number of pairs (random-pairs) or size of S (subset-cross, sourcewise-cross).
count: 12

# seed: Seed for the PCG64 generator.
seed: 7

# near_ordered_pairs: Count cluster pairs in both orientations when valuing paths for pairwise-near.
near_ordered_pairs: false
""")


def printSampleConfig():
    "Print defaults from above dictionary for saving as a base file"
    print("")
    print("# Save this output to a file to e.g. pairspan.yaml and edit it for your configuration")
    print("")
    yaml.dump(DEFAULT_CONFIG, sys.stdout)
    sys.stdout.flush()


class PairSpanArgumentParser(argparse.ArgumentParser):
    "Usage errors raise instead of exiting with argparse's status 2"

    def error(self, message):
        self.print_usage(sys.stderr)
        raise PairSpanInputException("%s: error: %s" % (self.prog, message))


def k_type(value):
    if value == "log":
        return value
    try:
        k = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError("k must be a positive integer or 'log', got '%s'" % value)
    if k < 1:
        raise argparse.ArgumentTypeError("k must be at least 1, got %d" % k)
    return k


def beta_type(value):
    if value is None or str(value).strip().lower() == "auto":
        return None
    try:
        beta = float(value)
    except ValueError:
        raise argparse.ArgumentTypeError("beta must be 'auto' or a number in [0,1], got '%s'" % value)
    if not (0 <= beta <= 1):
        raise argparse.ArgumentTypeError("beta must lie in [0,1], got %s" % value)
    return beta


def dims_type(value):
    try:
        rows, cols = [int(x) for x in str(value).lower().split("x")]
    except ValueError:
        raise argparse.ArgumentTypeError("dims must look like ROWSxCOLS, got '%s'" % value)
    return (rows, cols)


class PairSpan(object):
    "Main command line class"

    def __init__(self, *args):
        desc = textwrap.dedent(__doc__)
        parser = PairSpanArgumentParser(
            description=desc,
            formatter_class=argparse.RawDescriptionHelpFormatter,
        )
        parser.add_argument('-c', '--config', default=None, help="Config file, default is " + CONFIG_FILE + " if present")
        parser.add_argument('--sample-config', action='store_true', help="Print an example config file and exit")
        sub = parser.add_subparsers(dest='command', metavar='command')

        gen = sub.add_parser('gen', help="Generate a seeded random graph")
        self.addGraphModelArgs(gen)
        gen.add_argument('--out', default=None, help="Graph file to write, default stdout")

        pairs = sub.add_parser('pairs', help="Draw a seeded pair list for a graph")
        pairs.add_argument('--in', dest='infile', required=True, help="Graph file")
        self.addPairModeArgs(pairs)
        pairs.add_argument('--out', default=None, help="Pairs file to write, default stdout")

        build = sub.add_parser('build', help="Build a spanner, verify it and write its edge list")
        build.add_argument('--in', dest='infile', required=True, help="Graph file")
        build.add_argument('--pairs', required=True, help="Pairs file")
        self.addConstructionArgs(build)
        build.add_argument('--out', default=None, help="Spanner edge list to write, default stdout")

        verify = sub.add_parser('verify', help="Check the stretch of a spanner edge list")
        verify.add_argument('--in', dest='infile', required=True, help="Graph file")
        verify.add_argument('--spanner', required=True, help="Spanner edge list in graph file format")
        verify.add_argument('--pairs', required=True, help="Pairs file")
        self.addConstructionArgs(verify)

        bench = sub.add_parser('bench', help="Benchmark constructions on seeded instances, writing CSV")
        self.addGraphModelArgs(bench)
        self.addPairModeArgs(bench, seed=False)
        bench.add_argument('--constructions', default=None,
                           help="Comma separated constructions, default from config")
        bench.add_argument('--k', type=k_type, default=None, help="Rung count / k, or 'log'")
        bench.add_argument('--eps', default=None, help="eps for pairwise-near")
        bench.add_argument('--beta', type=beta_type, default=None, help="auto or a real in [0,1]")
        bench.add_argument('--instances', type=int, default=None, help="Seeded instances per construction")
        bench.add_argument('--csv', default=None, help="CSV file to write, default stdout")

        self.options = parser.parse_args(list(args))
        self.parser = parser
        self.config = {}
        if self.options.sample_config:
            printSampleConfig()
            return
        if not self.options.command:
            raise PairSpanInputException("A command is required: gen, pairs, build, verify or bench")
        self.logger = logutils.getLogger(LOGGER_NAME)

    def addGraphModelArgs(self, parser):
        parser.add_argument('--model', default=None, choices=harness.MODELS, help="Graph model")
        parser.add_argument('--n', default=None, type=int, help="Node count")
        parser.add_argument('--p', default=None, type=float, help="Edge probability for gnp")
        parser.add_argument('--dims', default=None, type=dims_type, help="ROWSxCOLS for grid")
        parser.add_argument('--seed', default=None, type=int, help="Generator seed")

    def addPairModeArgs(self, parser, seed=True):
        parser.add_argument('--mode', default=None, choices=harness.PAIR_MODES, help="Pair mode")
        parser.add_argument('--count', default=None, type=int, help="Pair count or source set size")
        if seed:
            parser.add_argument('--seed', default=None, type=int, help="Generator seed")

    def addConstructionArgs(self, parser):
        parser.add_argument('--construction', required=True, choices=sorted(CONSTRUCTIONS), help="Construction")
        parser.add_argument('--k', type=k_type, default=None, help="Rung count / k, or 'log'")
        parser.add_argument('--eps', default=None, help="eps for pairwise-near")
        parser.add_argument('--beta', type=beta_type, default=None, help="auto or a real in [0,1]")

    def getOption(self, option_name, default=None):
        result = default
        try:
            val = self.config[option_name]
            if val is not None:
                result = val
        except Exception:
            pass
        return result

    def getIntOption(self, option_name, default=None):
        result = default
        val = self.getOption(option_name, default)
        if isinstance(val, int) and not isinstance(val, bool):
            return val
        if val:
            try:
                result = int(eval(str(val), {"__builtins__": {}}))
            except Exception:
                raise PairSpanConfigException("Option %s must be an integer, got '%s'" % (option_name, val))
        return result

    def readConfig(self):
        self.config = {}
        path = self.options.config
        if path is None:
            if not os.path.exists(CONFIG_FILE):
                return
            path = CONFIG_FILE
        try:
            with open(path) as f:
                self.config = yaml.load(f) or {}
        except Exception as e:
            raise PairSpanConfigException('Could not read config file %s: %s' % (path, str(e)))
        if not isinstance(self.config, dict):
            raise PairSpanConfigException('Config file %s must hold a mapping of options' % path)
        log_file = self.getOption("log_file")
        if log_file and not logutils.getCurrentLogFileName(LOGGER_NAME):
            logutils.addFileHandler(self.logger, None if log_file is True else str(log_file))

    def option(self, name, default=None):
        "Command line value if given, else config, else default"
        val = getattr(self.options, name, None)
        if val is not None:
            return val
        return self.getOption(name, default)

    def buildOptions(self):
        try:
            k = self.option("k", 2)
            k = k if k == "log" else k_type(str(k))
            beta = self.options.beta if self.options.beta is not None else beta_type(self.getOption("beta", "auto"))
        except argparse.ArgumentTypeError as e:
            raise PairSpanConfigException(str(e))
        if beta is not None:
            checkBeta(beta)
        return BuildOptions(k=k, eps=str(self.option("eps", "0.5")), beta=beta,
                            ordered_pairs=bool(self.getOption("near_ordered_pairs", False)))

    def genSpec(self):
        dims = self.option("dims")
        if dims is not None and not isinstance(dims, tuple):
            try:
                dims = dims_type(dims)
            except argparse.ArgumentTypeError as e:
                raise PairSpanConfigException(str(e))
        n = self.options.n if self.options.n is not None else self.getIntOption("n")
        seed = self.options.seed if self.options.seed is not None else self.getIntOption("seed", 0)
        p = self.option("p")
        return GenSpec(self.option("model", "gnp"), n=n, p=float(p) if p is not None else None,
                       dims=dims, seed=seed)

    def pairSpec(self):
        count = self.options.count if self.options.count is not None else self.getIntOption("count", 0)
        seed = getattr(self.options, "seed", None)
        if seed is None:
            seed = self.getIntOption("seed", 0)
        return PairSpec(self.option("mode") or self.getOption("pair_mode", "subset-cross"), count, seed)

    def writeOutput(self, text, path):
        if path:
            with open(path, "w") as f:
                f.write(text)
            self.logger.info("Wrote %s" % path)
        else:
            sys.stdout.write(text)
            sys.stdout.flush()

    def writeLogHeader(self):
        "Write header info to log"
        logOnce(self.logger, VERSION)
        logOnce(self.logger, "Python ver: 0x%08x, OS: %s" % (sys.hexversion, sys.platform))
        logOnce(self.logger, "Options: ", self.options)

    def doGen(self):
        g = generate_graph(self.genSpec())
        self.logger.info("Generated graph n=%d m=%d" % (g.n, g.m))
        self.writeOutput(format_graph(g.n, g.edges()), self.options.out)
        return EXIT_OK

    def doPairs(self):
        g = read_graph(self.options.infile)
        pairs = make_pairs(g, self.pairSpec())
        self.logger.info("Drew %d pairs" % len(pairs))
        self.writeOutput(format_pairs(pairs), self.options.out)
        return EXIT_OK

    def checkResult(self, g, result):
        stretch, size = check_build(g, result)
        witness = []
        if not stretch.passed:
            witness.append(stretch.witness())
        if size is not None:
            for row in size.rows:
                self.logger.info("  %s" % row)
            if not size.passed:
                witness.append(size.witness())
        if witness:
            raise PairSpanVerificationException("Verification of %s failed" % result.construction,
                                                "\n".join(witness))
        self.logger.info("Verified %s: %d pairs within %s" % (
            result.construction, len(result.checked_pairs), result.stretch))

    def doBuild(self):
        g = read_graph(self.options.infile)
        pairs = read_pairs(self.options.pairs)
        result = build_spanner(self.options.construction, g, pairs, self.buildOptions())
        self.logger.info("Built %r" % result.spanner)
        self.writeOutput(format_graph(g.n, result.spanner.edges), self.options.out)
        self.checkResult(g, result)
        return EXIT_OK

    def doVerify(self):
        g = read_graph(self.options.infile)
        h = read_graph(self.options.spanner)
        if h.n != g.n:
            raise PairSpanInputException("Spanner has %d nodes, graph has %d" % (h.n, g.n))
        for (u, v) in h.edges():
            if not g.hasEdge(u, v):
                raise PairSpanInputException("Spanner edge %d-%d is not in the graph" % (u, v))
        pairs = read_pairs(self.options.pairs)
        construction = self.options.construction
        options = self.buildOptions()
        spec, checked = stretch_for(construction, g, pairs, options)
        report = verify_stretch(g, EdgeSet(g, h.edges()), checked, spec)
        if not report.passed:
            raise PairSpanVerificationException("Stretch check failed", report.witness())
        return EXIT_OK

    def doBench(self):
        constructions = self.options.constructions
        if constructions:
            constructions = [c.strip() for c in constructions.split(",") if c.strip()]
        else:
            constructions = list(self.getOption("constructions", ["subsetwise"]))
        instances = self.options.instances if self.options.instances is not None else self.getIntOption("instances", 1)
        threads = self.getIntOption("threads")
        if self.options.csv:
            with open(self.options.csv, "w", newline="") as sink:
                rows, witnesses = run_benchmark(self.genSpec(), self.pairSpec(), constructions, sink,
                                                self.buildOptions(), instances, threads)
            self.logger.info("Wrote %d rows to %s" % (len(rows), self.options.csv))
        else:
            rows, witnesses = run_benchmark(self.genSpec(), self.pairSpec(), constructions, sys.stdout,
                                            self.buildOptions(), instances, threads)
        if witnesses:
            raise PairSpanVerificationException("%d of %d benchmark cells failed verification" % (
                len(witnesses), len(rows)), "\n\n".join(witnesses))
        return EXIT_OK

    def dumpWitness(self, e):
        "Witness text plus the log lines that led up to it"
        print(e.witness, file=sys.stderr)
        if isinstance(self.logger, logutils.ArgLogger):
            print("Recent log output:", file=sys.stderr)
            for line in self.logger.recentOutput():
                print("  " + line, file=sys.stderr)
            print("Recent debug output:", file=sys.stderr)
            for line in self.logger.recentOutput(include_log=True):
                print("  " + line, file=sys.stderr)
        sys.stderr.flush()

    def run(self):
        """Dispatch the chosen command and map errors to exit codes"""
        if self.options.sample_config:
            return EXIT_OK
        commands = {
            'gen': self.doGen,
            'pairs': self.doPairs,
            'build': self.doBuild,
            'verify': self.doVerify,
            'bench': self.doBench,
        }
        try:
            self.readConfig()
            self.writeLogHeader()
            return commands[self.options.command]()
        except PairSpanVerificationException as e:
            self.logger.error(str(e))
            self.dumpWitness(e)
            return EXIT_VERIFY_FAILED
        except PairSpanException as e:
            self.logger.error(str(e))
            return EXIT_ERROR
        except (IOError, OSError) as e:
            self.logger.error(str(e))
            return EXIT_ERROR
        except Exception as e:
            self.logger.exception(e)
            return EXIT_ERROR
        finally:
            for h in self.logger.handlers:
                h.flush()


if __name__ == '__main__':
    result = 0
    try:
        prog = PairSpan(*sys.argv[1:])
        result = prog.run()
    except Exception as e:
        print(str(e))
        result = 1
    logging.shutdown()
    sys.exit(result)
