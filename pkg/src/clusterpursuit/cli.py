"""Command-line front end (``clusterpursuit`` / ``python -m clusterpursuit``).

Exit codes: 0 success, 1 usage error, 2 data error, 3 algorithmic failure.
Failures print one ``error code=<n> type=<name> message="..."`` line on stderr.
"""

import argparse
import json
import math
import sys

import numpy as np

from . import io
from .bench import PRESETS, growth_ratios, run_synthetic, write_csv
from .diagnostics import assumption_report
from .diffusion import DiffusionConfig
from .errors import AlgorithmError, DataError
from .generate import gen_sbm, family_params
from .graph import Partition, conductance
from .knn import build_knn_graph
from .metrics import accuracy, metrics
from .pipeline import SemiSupervisedInput, cp_rwt, icp_rwt
from .pursuit import PursuitConfig, cluster_pursuit, cluster_pursuit_sweep

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_ALGO = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _int_list(text):
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _sparsity(text):
    if text.upper() == "AUTO":
        return None
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or AUTO, got {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError("s must be positive")
    return v


def _kv(out, key, value):
    if isinstance(value, float):
        value = f"{value:.6g}"
    print(f"{key}={value}", file=out)


def _truth_cluster(labels, anchor, target_label):
    """Ground-truth cluster: ``target_label`` if given, else the most common
    label among ``anchor`` vertices."""
    if target_label is None:
        vals, counts = np.unique(labels[anchor], return_counts=True)
        target_label = int(vals[np.argmax(counts)])
    return np.flatnonzero(labels == target_label)


def _report_cluster(args, g, found, anchor, out):
    _kv(out, "size", int(found.size))
    if 0 < found.size < g.n:
        _kv(out, "conductance", conductance(g, found))
    if args.labels:
        labels = io.read_labels(args.labels)
        if labels.size != g.n:
            raise DataError(f"label file has {labels.size} entries for {g.n} vertices")
        sc = metrics(found, _truth_cluster(labels, anchor, args.target_label))
        _kv(out, "jaccard", sc.jaccard)
        _kv(out, "precision", sc.precision)
        _kv(out, "recall", sc.recall)
    if args.out:
        io.write_vertex_set(args.out, found)
    else:
        print("cluster=" + " ".join(map(str, found)), file=out)


def cmd_generate(args, out):
    params = family_params(args.family, args.n1, seed=args.seed, p_in=args.p_in,
                          p_in_scale=args.p_in_scale)
    g, truth = gen_sbm(params)
    io.write_edge_list(f"{args.out}.edges", g,
                       header=f"SBM family={args.family} n1={args.n1} seed={args.seed}")
    io.write_labels(f"{args.out}.labels", truth.labels)
    _kv(out, "n", g.n)
    _kv(out, "edges", g.num_edges)
    _kv(out, "sizes", ",".join(map(str, params.sizes)))


def cmd_cluster(args, out):
    g = io.read_edge_list(args.graph)
    gamma = io.read_vertex_set(args.seeds)
    preset = PRESETS[args.preset] if args.preset else None
    epsilon = args.epsilon if args.epsilon is not None else (preset["epsilon"] if preset else 0.13)
    frac = preset["s_fraction"] if preset else 0.13
    s = args.s if args.s is not None else max(1, math.ceil(round(frac * args.nhat, 9)))
    found = cp_rwt(g, gamma, DiffusionConfig(args.nhat, epsilon, args.t),
                   PursuitConfig(s, args.R, args.max_sp_iters))
    _kv(out, "s", s)
    _report_cluster(args, g, found, gamma, out)


def cmd_improve(args, out):
    g = io.read_edge_list(args.graph)
    omega = io.read_vertex_set(args.omega)
    if args.sweep:
        found, best_s, scores = cluster_pursuit_sweep(g, omega, args.sweep, args.R,
                                                      args.max_sp_iters)
        _kv(out, "s", best_s)
        for s_val, phi in scores.items():
            _kv(out, f"sweep_conductance_s{s_val}", phi)
    else:
        if args.s is None:
            raise UsageError("improve: give --s or --sweep")
        found = cluster_pursuit(g, omega, PursuitConfig(args.s, args.R, args.max_sp_iters))
        _kv(out, "s", args.s)
    _report_cluster(args, g, found, omega, out)


def cmd_semisup(args, out):
    g = io.read_edge_list(args.graph)
    seeds = io.read_seed_sets(args.seedsets)
    if len(args.nhat) != len(seeds):
        raise UsageError(f"semisup: {len(seeds)} seed sets but {len(args.nhat)} size estimates")
    data = SemiSupervisedInput(seeds, args.nhat, epsilon=args.epsilon, t=args.t, R=args.R,
                               s_fraction=args.s_fraction, max_sp_iters=args.max_sp_iters)
    part = icp_rwt(g, data)
    for a in range(part.k):
        _kv(out, f"class{a}_size", int(part.cluster(a).size))
    if args.labels:
        truth = io.read_labels(args.labels)
        if truth.size != g.n:
            raise DataError(f"label file has {truth.size} entries for {g.n} vertices")
        _kv(out, "accuracy", accuracy(part, Partition(truth)))
    if args.out:
        io.write_labels(args.out, part.labels)


def cmd_knn(args, out):
    X = io.read_points(args.points)
    g = build_knn_graph(X, K=args.K, r=args.r)
    io.write_edge_list(args.out, g, header=f"knn K={args.K} r={args.r}")
    _kv(out, "n", g.n)
    _kv(out, "edges", g.num_edges)
    _kv(out, "connected", g.is_connected())


def cmd_bench(args, out):
    def progress(n1, trial):
        if args.verbose:
            print(f"n1={n1} trial={trial} done", file=sys.stderr)

    overrides = {}
    for key in ("epsilon", "t", "R"):
        if getattr(args, key) is not None:
            overrides[key] = getattr(args, key)
    if args.s_fraction is not None:
        overrides["s_fraction"] = args.s_fraction
    records = run_synthetic(args.family, args.n1_list, args.trials, args.seed, args.preset,
                            args.gamma_fraction, overrides, progress)
    if args.csv:
        write_csv(args.csv, records)
    else:
        write_csv(out, records)
    for n1 in args.n1_list:
        for method in ("rwthresh", "cp_rwt"):
            vals = [r.jaccard for r in records if r.params["n1"] == n1 and r.method == method]
            print(f"# n1={n1} method={method} median_jaccard={np.median(vals):.6g}",
                  file=sys.stderr if not args.csv else out)
    med, ratios = growth_ratios(records)
    sizes = sorted(med)
    for (a, b), ratio in zip(zip(sizes, sizes[1:]), ratios):
        print(f"# time_ratio {a}->{b} = {ratio:.3f}", file=sys.stderr if not args.csv else out)


def cmd_diagnose(args, out):
    g = io.read_edge_list(args.graph)
    labels = io.read_labels(args.labels)
    if labels.size != g.n:
        raise DataError(f"label file has {labels.size} entries for {g.n} vertices")
    rep = assumption_report(g, Partition(labels))
    d = rep.as_dict()
    for k, v in d.items():
        _kv(out, k, v)
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(",".join(d) + "\n")
            fh.write(",".join(f"{v:.6g}" if isinstance(v, float) else str(v)
                              for v in d.values()) + "\n")


def build_parser():
    p = _Parser(prog="clusterpursuit", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def pursuit_opts(q):
        q.add_argument("--R", type=float, default=0.5)
        q.add_argument("--max-sp-iters", type=int, default=None)

    def truth_opts(q):
        q.add_argument("--labels", help="ground-truth label file for scoring")
        q.add_argument("--target-label", type=int, default=None,
                       help="label of the target cluster (default: majority label of the input set)")
        q.add_argument("--out", help="write the found cluster here instead of stdout")

    q = sub.add_parser("generate", help="sample a benchmark SBM graph")
    q.add_argument("--family", type=int, choices=(1, 2), required=True)
    q.add_argument("--n1", type=int, required=True)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--out", required=True, help="output prefix; writes PREFIX.edges and PREFIX.labels")
    q.add_argument("--p-in", type=float, default=None, help="family 1 within-block probability")
    q.add_argument("--p-in-scale", choices=("block", "total"), default="block")
    q.set_defaults(func=cmd_generate)

    q = sub.add_parser("cluster", help="local clustering from seeds (CP+RWT)")
    q.add_argument("--graph", required=True)
    q.add_argument("--seeds", required=True)
    q.add_argument("--nhat", type=int, required=True)
    q.add_argument("--epsilon", type=float, default=None)
    q.add_argument("--t", type=int, default=3)
    q.add_argument("--s", type=_sparsity, default=None, help="sparsity or AUTO")
    q.add_argument("--preset", choices=sorted(PRESETS), default=None)
    pursuit_opts(q)
    truth_opts(q)
    q.set_defaults(func=cmd_cluster)

    q = sub.add_parser("improve", help="cut improvement (ClusterPursuit)")
    q.add_argument("--graph", required=True)
    q.add_argument("--omega", required=True)
    q.add_argument("--s", type=int, default=None)
    q.add_argument("--sweep", type=_int_list, default=None,
                   help="comma-separated s values; keep the lowest-conductance result")
    pursuit_opts(q)
    truth_opts(q)
    q.set_defaults(func=cmd_improve)

    q = sub.add_parser("semisup", help="semi-supervised partition (ICP+RWT)")
    q.add_argument("--graph", required=True)
    q.add_argument("--seedsets", required=True)
    q.add_argument("--nhat", type=_int_list, required=True)
    q.add_argument("--epsilon", type=float, default=0.13)
    q.add_argument("--t", type=int, default=3)
    q.add_argument("--s-fraction", type=float, default=0.26)
    q.add_argument("--labels")
    q.add_argument("--out", help="write predicted labels here")
    pursuit_opts(q)
    q.set_defaults(func=cmd_semisup)

    q = sub.add_parser("knn", help="build a k-NN similarity graph from points")
    q.add_argument("--points", required=True)
    q.add_argument("--K", type=int, default=15)
    q.add_argument("--r", type=int, default=10)
    q.add_argument("--out", required=True)
    q.set_defaults(func=cmd_knn)

    q = sub.add_parser("bench", help="benchmark suites")
    bsub = q.add_subparsers(dest="suite", parser_class=_Parser)
    bsub.required = True
    b = bsub.add_parser("synthetic", help="SBM local-clustering sweep")
    b.add_argument("--family", type=int, choices=(1, 2), required=True)
    b.add_argument("--n1-list", type=_int_list, required=True)
    b.add_argument("--trials", type=int, default=20)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--preset", choices=sorted(PRESETS), default="local")
    b.add_argument("--gamma-fraction", type=float, default=0.01)
    b.add_argument("--epsilon", type=float, default=None)
    b.add_argument("--s-fraction", type=float, default=None)
    b.add_argument("--t", type=int, default=None)
    b.add_argument("--R", type=float, default=None)
    b.add_argument("--csv")
    b.add_argument("--verbose", action="store_true")
    b.set_defaults(func=cmd_bench)

    q = sub.add_parser("diagnose", help="cluster regularity report")
    q.add_argument("--graph", required=True)
    q.add_argument("--labels", required=True)
    q.add_argument("--csv")
    q.set_defaults(func=cmd_diagnose)
    return p


def _fail(code, exc, err):
    msg = json.dumps(str(exc))
    print(f"error code={code} type={type(exc).__name__} message={msg}", file=err)
    return code


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        args.func(args, out)
    except UsageError as exc:
        return _fail(EXIT_USAGE, exc, err)
    except (DataError, OSError, StopIteration) as exc:
        return _fail(EXIT_DATA, exc, err)
    except AlgorithmError as exc:
        return _fail(EXIT_ALGO, exc, err)
    return EXIT_OK


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
