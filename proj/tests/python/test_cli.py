"""End-to-end checks of the specnet command line: outputs, exit codes and files."""

import json
import os
import re
import subprocess
import sys
import tempfile
import unittest

CLI = os.environ.get("SPECNET_CLI", "specnet")


def run(*args, check_code=None):
    proc = subprocess.run([CLI, *map(str, args)], capture_output=True, text=True, timeout=600)
    if check_code is not None and proc.returncode != check_code:
        raise AssertionError(
            f"specnet {' '.join(map(str, args))} exited {proc.returncode}, "
            f"expected {check_code}\nstdout:\n{proc.stdout}\nstderr:\n{proc.stderr}"
        )
    return proc


def kv(stdout):
    out = {}
    for line in stdout.splitlines():
        if "=" in line and " " not in line.split("=", 1)[0]:
            key, value = line.split("=", 1)
            out[key] = value
    return out


def write_graph(path, rows):
    n = len(rows)
    flat = [x for row in rows for x in row]
    with open(path, "w") as f:
        json.dump({"n": n, "weights": flat, "metadata": {}}, f)


def read_weights(path):
    with open(path) as f:
        doc = json.load(f)
    if "graph" in doc:
        doc = doc["graph"]
    return doc["weights"]


def blocks(count, size, inter=0.0):
    """Equal cliques with uniform inter-block weight and zero diagonal."""
    n = count * size
    intra = (1.0 - inter * (n - size)) / (size - 1)
    return [
        [0.0 if i == j else (intra if i // size == j // size else inter) for j in range(n)]
        for i in range(n)
    ]


def hierarchy():
    """Four K4 teams with fans 0->{1,2,3}, 1->{2,3}, 2->{3}."""
    w = [[(0.1 if i == j else 0.3) if i // 4 == j // 4 else 0.0 for j in range(16)] for i in range(16)]
    for liaison, target in [(0, 1), (1, 2), (2, 3), (4, 2), (5, 3), (8, 3)]:
        for j in range(4 * target, 4 * target + 4):
            w[liaison][j] += 0.015
            w[j][liaison] += 0.015
            w[liaison][liaison] -= 0.015
            w[j][j] -= 0.015
    return w


class ErrorFormat:
    def assert_error(self, proc, code):
        self.assertEqual(proc.returncode, code, proc.stderr)
        lines = proc.stderr.strip().splitlines()
        self.assertEqual(len(lines), 1, proc.stderr)
        self.assertRegex(lines[0], rf"^ERROR:{code}:[a-z_]+: \S")


class BoundTest(unittest.TestCase, ErrorFormat):
    def test_examples(self):
        self.assertEqual(kv(run("bound", "--n", 16, "--ell", 4, "--m", 0.25, check_code=0).stdout)["bound"],
                         "1.0208333")
        out = kv(run("bound", "--n", 16, "--ell", 4, "--m", 0, check_code=0).stdout)
        self.assertEqual(out["bound"], "1.3333333")
        ideal = [float(x) for x in out["ideal"].split(",")]
        self.assertEqual(len(ideal), 16)
        self.assertAlmostEqual(sum(ideal), 16, places=5)

    def test_invalid(self):
        self.assert_error(run("bound", "--n", 16, "--ell", 16, "--m", 0), 2)
        self.assert_error(run("bound", "--n", 16, "--ell", 4), 2)
        self.assert_error(run("bound", "--n", 16, "--ell", 4, "--m", -1), 2)

    def test_version(self):
        proc = run("--version", check_code=0)
        self.assertIn("0.1.0", proc.stdout)


class DesignTest(unittest.TestCase, ErrorFormat):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = self.tmp.name

    def tearDown(self):
        self.tmp.cleanup()

    def path(self, name):
        return os.path.join(self.dir, name)

    def design(self, out, *extra, code=0):
        return run("design", "--n", 8, "--ell", 2, "--m", 0.1, "--starts", 3, "--seed", 11,
                   "--out", self.path(out), *extra, check_code=code)

    def test_summary_and_result_document(self):
        proc = self.design("r.json", "--trace", self.path("t.csv"))
        out = kv(proc.stdout)
        for key in ("objective", "bound", "ratio", "lambda2", "best_seed"):
            self.assertIn(key, out)
        self.assertGreaterEqual(float(out["lambda2"]), 0.1 - 1e-6)
        with open(self.path("r.json")) as f:
            doc = json.load(f)
        self.assertEqual(doc["problem"], {"n": 8, "ell": 2, "m": 0.1})
        self.assertEqual(doc["version"], "0.1.0")
        self.assertEqual(doc["seeds"]["base"], 11)
        self.assertEqual(len(doc["seeds"]["values"]), 3)
        self.assertEqual(len(doc["starts"]), 3)
        self.assertIn("inner_max_iter", doc["config"])
        self.assertEqual(len(doc["graph"]["weights"]), 64)
        with open(self.path("t.csv")) as f:
            lines = f.read().splitlines()
        self.assertEqual(lines[0], "seed,iteration,objective")
        self.assertGreater(len(lines), 3)

    def test_determinism_across_runs_and_parallelism(self):
        self.design("a.json", "--parallelism", 1)
        self.design("b.json", "--parallelism", 3)
        docs = []
        for name in ("a.json", "b.json"):
            with open(self.path(name)) as f:
                text = f.read()
            docs.append(re.sub(r'"wall_time_seconds":\s*[0-9.eE+-]+', "", text))
        self.assertEqual(docs[0], docs[1])

    def test_explicit_seeds(self):
        self.design("a.json")
        with open(self.path("a.json")) as f:
            values = json.load(f)["seeds"]["values"]
        run("design", "--n", 8, "--ell", 2, "--m", 0.1, "--seeds", *values,
            "--out", self.path("b.json"), check_code=0)
        with open(self.path("b.json")) as f:
            doc = json.load(f)
        with open(self.path("a.json")) as f:
            ref = json.load(f)
        self.assertEqual(doc["objective"], ref["objective"])
        self.assertEqual(doc["seeds"]["derivation"], "explicit")
        self.assert_error(run("design", "--n", 8, "--ell", 2, "--m", 0.1, "--seeds", 1, 1), 2)

    def test_config_file_and_flag_precedence(self):
        cfg = self.path("run.cfg")
        with open(cfg, "w") as f:
            f.write("# design settings\nn = 8\nell = 2\nm = 0.1\nstarts = 2\nseed = 5\nouter_max_iter = 7\n")
        run("design", "--config", cfg, "--out", self.path("c.json"), check_code=0)
        with open(self.path("c.json")) as f:
            doc = json.load(f)
        self.assertEqual(doc["seeds"]["base"], 5)
        self.assertEqual(len(doc["starts"]), 2)
        self.assertEqual(doc["config"]["outer_max_iter"], 7)
        run("design", "--config", cfg, "--seed", 6, "--starts", 1, "--out", self.path("d.json"),
            check_code=0)
        with open(self.path("d.json")) as f:
            doc = json.load(f)
        self.assertEqual(doc["seeds"]["base"], 6)
        self.assertEqual(len(doc["starts"]), 1)

    def test_exit_codes(self):
        self.assert_error(run("design", "--n", 16, "--ell", 4, "--m", 2.0), 3)
        self.assert_error(run("design", "--n", 16, "--ell", 16, "--m", 0.1), 2)
        self.assert_error(run("design", "--n", 1, "--ell", 1, "--m", 0), 2)
        self.assert_error(run("design", "--n", 8, "--m", 0.1), 2)
        self.assert_error(run("design", "--n", 8, "--ell", 2, "--m", 0.1, "--starts", 0), 2)
        self.assert_error(run("design", "--n", 8, "--ell", 2, "--m", 0.1, "--init-density", 0), 2)
        # No start can meet a 1e-300 feasibility tolerance.
        self.assert_error(run("design", "--n", 8, "--ell", 2, "--m", 0.1, "--starts", 2,
                              "--feasibility-tol", "1e-300"), 4)


class AnalyzeTest(unittest.TestCase, ErrorFormat):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = self.tmp.name

    def tearDown(self):
        self.tmp.cleanup()

    def path(self, name):
        return os.path.join(self.dir, name)

    def test_truncate_threshold_zero_is_identity(self):
        run("design", "--n", 8, "--ell", 2, "--m", 0.1, "--starts", 2, "--out", self.path("r.json"),
            check_code=0)
        out = kv(run("analyze", "truncate", "--in", self.path("r.json"), "--threshold", 0,
                     "--out", self.path("t.json"), check_code=0).stdout)
        self.assertEqual(float(out["threshold"]), 0.0)
        a, b = read_weights(self.path("r.json")), read_weights(self.path("t.json"))
        self.assertLessEqual(max(abs(x - y) for x, y in zip(a, b)), 1e-10)

    def test_truncate_disconnection_and_bad_values(self):
        write_graph(self.path("g.json"), blocks(2, 4, 0.01))
        self.assert_error(run("analyze", "truncate", "--in", self.path("g.json"), "--threshold", 0.02), 5)
        self.assert_error(run("analyze", "truncate", "--in", self.path("g.json"), "--threshold", "x"), 2)
        self.assert_error(run("analyze", "truncate", "--in", self.path("g.json"),
                              "--threshold", 0.1, "--keep-top", 2), 2)
        self.assert_error(run("analyze", "truncate", "--in", self.path("missing.json")), 2)
        with open(self.path("bad.json"), "w") as f:
            f.write("{not json")
        self.assert_error(run("analyze", "truncate", "--in", self.path("bad.json")), 2)

    def test_cluster_fans_condense_on_hierarchy(self):
        write_graph(self.path("h.json"), hierarchy())
        out = kv(run("analyze", "cluster", "--in", self.path("h.json"), "--ell", 4,
                     "--out", self.path("c.json"), "--dot", self.path("h.dot"), check_code=0).stdout)
        self.assertEqual(out["clusters"], "4")
        labels = [int(x) for x in out["assignment"].split(",")]
        for i in range(16):
            for j in range(16):
                self.assertEqual(labels[i] == labels[j], i // 4 == j // 4)
        with open(self.path("h.dot")) as f:
            self.assertIn("subgraph cluster_3", f.read())

        fans = run("analyze", "fans", "--in", self.path("h.json"), "--clusters", self.path("c.json"),
                   "--fan-tol", 0.01, check_code=0).stdout
        self.assertEqual(kv(fans)["fans"], "6")

        cond = run("analyze", "condense", "--in", self.path("h.json"), "--clusters", self.path("c.json"),
                   "--fan-tol", 0.01, "--out", self.path("d.json"), "--dot", self.path("d.dot"),
                   check_code=0).stdout
        out = kv(cond)
        self.assertEqual(out["is_dag"], "true")
        self.assertEqual(out["out_degrees_sorted"], "3,2,1,0")
        with open(self.path("d.dot")) as f:
            self.assertTrue(f.read().startswith("digraph"))
        with open(self.path("d.json")) as f:
            self.assertEqual(len(json.load(f)["edges"]), 6)

        for variant in ("weak", "strong"):
            run("analyze", "brokerize", "--in", self.path("h.json"), "--clusters", self.path("c.json"),
                "--fan-tol", 0.01, "--variant", variant, "--out", self.path(f"{variant}.json"),
                check_code=0)
            with open(self.path(f"{variant}.json")) as f:
                self.assertEqual(json.load(f)["metadata"]["broker_variant"], variant)
        self.assert_error(run("analyze", "brokerize", "--in", self.path("h.json"), "--ell", 4,
                              "--variant", "medium"), 2)

    def test_brokerize_without_fans_exits_6(self):
        write_graph(self.path("blocks.json"), blocks(4, 4))
        self.assert_error(run("analyze", "brokerize", "--in", self.path("blocks.json"), "--ell", 4), 6)
        out = kv(run("analyze", "condense", "--in", self.path("blocks.json"), "--ell", 4,
                     check_code=0).stdout)
        self.assertEqual(out["is_dag"], "true")
        self.assertEqual(out["out_degrees"], "0,0,0,0")

    def test_csv_input(self):
        with open(self.path("g.csv"), "w") as f:
            for row in blocks(2, 3, 0.05):
                f.write(",".join(repr(x) for x in row) + "\n")
        out = kv(run("analyze", "cluster", "--in", self.path("g.csv"), "--ell", 2, check_code=0).stdout)
        self.assertEqual(out["clusters"], "2")


class CompareTest(unittest.TestCase, ErrorFormat):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = self.tmp.name

    def tearDown(self):
        self.tmp.cleanup()

    def path(self, name):
        return os.path.join(self.dir, name)

    def test_single_graph_at_the_bound(self):
        write_graph(self.path("cliques.json"), blocks(4, 4, 0.25 / 16))
        proc = run("compare", "--in", self.path("cliques.json"), "--ell", 4, "--m", 0.25,
                   "--out", self.path("cmp.csv"), check_code=0)
        out = kv(proc.stdout)
        self.assertEqual(out["closest_mixing"], "cliques")
        self.assertEqual(out["closest_modularity"], "cliques")
        row = [line for line in proc.stdout.splitlines() if line.startswith("cliques:")][0]
        dev = float(re.search(r"modularity_deviation=(\S+)", row).group(1))
        self.assertLess(dev, 1e-9)
        with open(self.path("cmp.csv")) as f:
            lines = f.read().splitlines()
        self.assertTrue(lines[0].startswith("name,lambda_1,"))
        self.assertEqual(len(lines), 3)
        self.assertTrue(lines[2].startswith("ideal,"))

    def test_mismatched_sizes_exit_2(self):
        write_graph(self.path("a.json"), blocks(2, 4, 0.01))
        write_graph(self.path("b.json"), blocks(2, 3, 0.01))
        self.assert_error(run("compare", "--in", self.path("a.json"), self.path("b.json"),
                              "--ell", 2, "--m", 0), 2)
        self.assert_error(run("compare", "--in", self.path("a.json"), "--n", 6, "--ell", 2,
                              "--m", 0), 2)
        self.assert_error(run("compare", "--in", self.path("a.json"), "--names", "x", "y",
                              "--ell", 2, "--m", 0), 2)


if __name__ == "__main__":
    if len(sys.argv) > 1 and not sys.argv[1].startswith("-"):
        CLI = sys.argv.pop(1)
    unittest.main(verbosity=2)
