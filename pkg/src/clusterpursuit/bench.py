"""Seeded synthetic benchmark: SBM samples, RWThresh and CP+RWT, one CSV row
per (size, trial, method)."""

import csv
import gc
import math
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from .diffusion import DiffusionConfig, rw_thresh
from .generate import gen_sbm, family_params
from .graph import conductance
from .metrics import metrics
from .pursuit import PursuitConfig, cluster_pursuit

__all__ = ["PRESETS", "RunRecord", "trial_seeds", "run_trial", "run_synthetic", "write_csv",
           "read_csv", "replay", "growth_ratios"]

# Fractions of n1; "local" is the local-clustering setting, the family presets
# are the cut-improvement settings for each SBM family and "ml" is the one for
# the digit benchmarks.
PRESETS = {
    "local": dict(epsilon=0.065, s_fraction=0.13, t=3, R=0.5),
    "family1": dict(epsilon=0.13, s_fraction=0.26, t=3, R=0.5),
    "family2": dict(epsilon=0.13, s_fraction=0.16, t=3, R=0.5),
    "ml": dict(epsilon=0.13, s_fraction=0.26, t=3, R=0.5),
}

CSV_FIELDS = [
    "run_id", "subcommand", "method", "family", "n1", "n", "trial", "master_seed",
    "graph_seed", "seed_seed", "epsilon", "s", "t", "R", "n_seeds",
    "jaccard", "precision", "recall", "accuracy", "conductance", "wall_ms",
]


@dataclass
class RunRecord:
    run_id: str
    subcommand: str
    method: str
    params: dict = field(default_factory=dict)
    jaccard: float = math.nan
    precision: float = math.nan
    recall: float = math.nan
    accuracy: float = math.nan
    conductance: float = math.nan
    wall_ms: float = math.nan

    def row(self):
        d = asdict(self)
        params = d.pop("params")
        d.update(params)
        return {k: d.get(k, "") for k in CSV_FIELDS}


def trial_seeds(master_seed, n1, trial):
    """Independent graph and seed-set seeds for one trial."""
    ss = np.random.SeedSequence([int(master_seed), int(n1), int(trial)])
    g_seed, s_seed = ss.generate_state(2, dtype=np.uint32)
    return int(g_seed), int(s_seed)


def run_trial(family, n1, graph_seed, seed_seed, epsilon, s, t, R, gamma_fraction):
    """One benchmark trial.  Returns ``{method: (cluster, wall_ms)}`` plus the
    graph and ground-truth target cluster."""
    g, truth = gen_sbm(family_params(family, n1, seed=graph_seed))
    C1 = truth.cluster(0)
    rng = np.random.default_rng(seed_seed)
    n_seeds = max(1, int(round(gamma_fraction * n1)))
    gamma = np.sort(rng.choice(C1, size=n_seeds, replace=False))

    # collector pauses would otherwise land in arbitrary trials
    gc.collect()
    was_enabled = gc.isenabled()
    gc.disable()
    try:
        t0 = time.perf_counter()
        omega = rw_thresh(g, gamma, DiffusionConfig(n1, epsilon, t))
        t1 = time.perf_counter()
        found = cluster_pursuit(g, omega, PursuitConfig(s, R))
        t2 = time.perf_counter()
    finally:
        if was_enabled:
            gc.enable()
    out = {
        "rwthresh": (omega, 1e3 * (t1 - t0)),
        "cp_rwt": (found, 1e3 * (t2 - t0)),
    }
    return g, C1, gamma, out


def run_synthetic(family, n1_list, trials=20, master_seed=0, preset="local",
                  gamma_fraction=0.01, overrides=None, progress=None):
    """Run the synthetic benchmark and return a list of :class:`RunRecord`."""
    cfg = dict(PRESETS[preset])
    cfg.update(overrides or {})
    records = []
    for n1 in n1_list:
        s = max(1, math.ceil(round(cfg["s_fraction"] * n1, 9)))
        for trial in range(trials):
            g_seed, s_seed = trial_seeds(master_seed, n1, trial)
            g, C1, gamma, out = run_trial(family, n1, g_seed, s_seed, cfg["epsilon"], s,
                                          cfg["t"], cfg["R"], gamma_fraction)
            for method, (cluster, ms) in out.items():
                sc = metrics(cluster, C1)
                phi = conductance(g, cluster) if 0 < cluster.size < g.n else math.nan
                params = dict(family=family, n1=n1, n=g.n, trial=trial, master_seed=master_seed,
                              graph_seed=g_seed, seed_seed=s_seed, epsilon=cfg["epsilon"], s=s,
                              t=cfg["t"], R=cfg["R"], n_seeds=gamma.size)
                records.append(RunRecord(
                    run_id=f"f{family}-n{n1}-t{trial}-{method}", subcommand="bench synthetic",
                    method=method, params=params, jaccard=sc.jaccard, precision=sc.precision,
                    recall=sc.recall, conductance=phi, wall_ms=ms,
                ))
            if progress:
                progress(n1, trial)
    return records


def _fmt(v):
    if isinstance(v, float):
        return "nan" if math.isnan(v) else f"{v:.6g}"
    return v


def write_csv(path_or_file, records):
    own = isinstance(path_or_file, str)
    fh = open(path_or_file, "w", newline="") if own else path_or_file
    try:
        w = csv.DictWriter(fh, fieldnames=CSV_FIELDS)
        w.writeheader()
        for r in records:
            w.writerow({k: _fmt(v) for k, v in r.row().items()})
    finally:
        if own:
            fh.close()


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def replay(row):
    """Re-run the trial behind one CSV row and return its freshly computed
    scores formatted exactly as in the CSV."""
    family, n1 = int(row["family"]), int(row["n1"])
    _, C1, _, out = run_trial(family, n1, int(row["graph_seed"]), int(row["seed_seed"]),
                              float(row["epsilon"]), int(row["s"]), int(row["t"]),
                              float(row["R"]), int(row["n_seeds"]) / n1)
    cluster, _ = out[row["method"]]
    sc = metrics(cluster, C1)
    return {k: _fmt(float(getattr(sc, k))) for k in ("jaccard", "precision", "recall")}


def growth_ratios(records, method="cp_rwt"):
    """Median wall time per ``n1`` and the ratio between consecutive sizes."""
    sizes = sorted({r.params["n1"] for r in records})
    med = {n1: float(np.median([r.wall_ms for r in records
                                if r.params["n1"] == n1 and r.method == method]))
           for n1 in sizes}
    ratios = [med[b] / med[a] for a, b in zip(sizes, sizes[1:])]
    return med, ratios
