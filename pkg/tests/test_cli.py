import io as _io
import subprocess
import sys

import numpy as np
import pytest

from clusterpursuit import io
from clusterpursuit.bench import read_csv, replay
from clusterpursuit.cli import main

from conftest import disjoint_cliques


def run(*argv):
    out, err = _io.StringIO(), _io.StringIO()
    code = main([str(a) for a in argv], out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def parse_kv(text):
    return dict(line.split("=", 1) for line in text.splitlines() if "=" in line and not line.startswith("#"))


@pytest.fixture
def cliques(tmp_path):
    g, clusters = disjoint_cliques(10, 12, 14)
    labels = np.repeat([0, 1, 2], [10, 12, 14])
    io.write_edge_list(str(tmp_path / "g.edges"), g)
    io.write_labels(str(tmp_path / "g.labels"), labels)
    io.write_vertex_set(str(tmp_path / "seeds"), [0])
    io.write_seed_sets(str(tmp_path / "seedsets"), [[1], [11], [30]])
    return tmp_path


def test_generate_writes_files(tmp_path):
    code, out, _ = run("generate", "--family", 2, "--n1", 30, "--seed", 5, "--out", tmp_path / "s")
    assert code == 0
    kv = parse_kv(out)
    assert kv["sizes"] == "30,300" and kv["n"] == "330"
    g = io.read_edge_list(str(tmp_path / "s.edges"))
    assert g.n == 330 and g.num_edges == int(kv["edges"])
    assert io.read_labels(str(tmp_path / "s.labels")).size == 330


def test_cluster_recovers_clique(cliques):
    code, out, _ = run("cluster", "--graph", cliques / "g.edges", "--seeds", cliques / "seeds",
                       "--nhat", 10, "--labels", cliques / "g.labels", "--s", "AUTO")
    kv = parse_kv(out)
    assert code == 0 and kv["s"] == "2" and kv["jaccard"] == "1"
    assert kv["cluster"].split() == [str(i) for i in range(10)]


def test_cluster_preset_and_outfile(cliques):
    dest = cliques / "found"
    code, out, _ = run("cluster", "--graph", cliques / "g.edges", "--seeds", cliques / "seeds",
                       "--nhat", 10, "--preset", "family1", "--out", dest)
    assert code == 0 and parse_kv(out)["s"] == "3"
    assert list(io.read_vertex_set(str(dest))) == list(range(10))


def test_improve_and_sweep(cliques):
    io.write_vertex_set(str(cliques / "omega"), [0, 1, 2, 3, 4, 5, 6, 7, 8, 10])
    code, out, _ = run("improve", "--graph", cliques / "g.edges", "--omega", cliques / "omega", "--s", 2)
    assert code == 0 and parse_kv(out)["cluster"].split() == [str(i) for i in range(10)]
    code, out, _ = run("improve", "--graph", cliques / "g.edges", "--omega", cliques / "omega",
                       "--sweep", "1,2,3", "--labels", cliques / "g.labels")
    kv = parse_kv(out)
    assert code == 0 and "sweep_conductance_s1" in kv and kv["jaccard"] == "1"


def test_semisup_accuracy(cliques):
    code, out, _ = run("semisup", "--graph", cliques / "g.edges", "--seedsets", cliques / "seedsets",
                       "--nhat", "10,12,14", "--labels", cliques / "g.labels", "--out", cliques / "pred")
    assert code == 0 and parse_kv(out)["accuracy"] == "1"
    np.testing.assert_array_equal(io.read_labels(str(cliques / "pred")), np.repeat([0, 1, 2], [10, 12, 14]))


def test_knn(tmp_path):
    X = np.random.default_rng(0).standard_normal((40, 3))
    np.savetxt(tmp_path / "pts.csv", X, delimiter=",")
    code, out, _ = run("knn", "--points", tmp_path / "pts.csv", "--K", 6, "--r", 3, "--out", tmp_path / "k.edges")
    assert code == 0
    assert io.read_edge_list(str(tmp_path / "k.edges")).num_edges == int(parse_kv(out)["edges"])


def test_diagnose(cliques):
    code, out, _ = run("diagnose", "--graph", cliques / "g.edges", "--labels", cliques / "g.labels",
                       "--csv", cliques / "d.csv")
    kv = parse_kv(out)
    assert code == 0 and kv["max_ratio_r"] == "0" and kv["cluster2_size"] == "14"
    assert (cliques / "d.csv").read_text().startswith("max_ratio_r,")


def test_bench_csv_replays(tmp_path):
    csv_path = tmp_path / "b.csv"
    code, out, _ = run("bench", "synthetic", "--family", 2, "--n1-list", "40,80", "--trials", 2,
                       "--csv", csv_path)
    assert code == 0 and "time_ratio 40->80" in out
    rows = read_csv(str(csv_path))
    assert len(rows) == 8 and {r["method"] for r in rows} == {"rwthresh", "cp_rwt"}
    for row in rows:
        assert replay(row) == {k: row[k] for k in ("jaccard", "precision", "recall")}
    # same master seed, same scores
    run("bench", "synthetic", "--family", 2, "--n1-list", "40,80", "--trials", 2, "--csv", tmp_path / "c.csv")
    strip = lambda rs: [{k: v for k, v in r.items() if k != "wall_ms"} for r in rs]
    assert strip(read_csv(str(tmp_path / "c.csv"))) == strip(rows)


@pytest.mark.parametrize(
    "argv, code, kind",
    [
        ((), 1, "UsageError"),
        (("cluster", "--graph", "x"), 1, "UsageError"),
        (("improve", "--graph", "G", "--omega", "O"), 1, "UsageError"),
        (("bench", "synthetic", "--family", 3, "--n1-list", "10"), 1, "UsageError"),
        (("diagnose", "--graph", "missing.edges", "--labels", "missing"), 2, "FileNotFoundError"),
        (("improve", "--graph", "G", "--omega", "O", "--s", 500), 2, "BadSparsityError"),
        (("cluster", "--graph", "G", "--seeds", "S", "--nhat", 36), 3, "ThresholdTooLargeError"),
    ],
)
def test_exit_codes(cliques, argv, code, kind):
    g_path, s_path = cliques / "g.edges", cliques / "seeds"
    io.write_vertex_set(str(cliques / "O"), [0, 1])
    subst = {"G": g_path, "S": s_path, "O": cliques / "O"}
    got, _, err = run(*[subst.get(a, a) if isinstance(a, str) else a for a in argv])
    assert got == code
    assert err.startswith(f"error code={code} type={kind} message=")


def test_full_cut_is_algorithmic_failure(cliques):
    io.write_vertex_set(str(cliques / "all"), range(36))
    code, _, err = run("improve", "--graph", cliques / "g.edges", "--omega", cliques / "all", "--s", 2)
    assert code == 3 and "FullCutError" in err


def test_duplicate_edge_is_data_error(tmp_path):
    (tmp_path / "d.edges").write_text("0 1\n1 0\n")
    (tmp_path / "l").write_text("0\n0\n")
    code, _, err = run("diagnose", "--graph", tmp_path / "d.edges", "--labels", tmp_path / "l")
    assert code == 2 and "DuplicateEdgeError" in err


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "clusterpursuit", "generate", "--family", "1",
                           "--n1", "8", "--out", str(tmp_path / "m")], capture_output=True, text=True)
    assert proc.returncode == 0 and "sizes=8,12,20,40" in proc.stdout
    proc = subprocess.run([sys.executable, "-m", "clusterpursuit", "nope"], capture_output=True, text=True)
    assert proc.returncode == 1 and proc.stderr.startswith("error code=1")
