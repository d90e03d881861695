"""End-to-end checks for the gmtk command line tool.

Usage: test_cli.py <path-to-binary> <path-to-test-data>
"""
import json
import os
import subprocess
import sys
import tempfile

BIN = sys.argv[1]
DATA = sys.argv[2]


def run(*args, expect=0):
    proc = subprocess.run([BIN, *args], capture_output=True, text=True)
    assert proc.returncode == expect, (
        args, proc.returncode, expect, proc.stderr)
    return proc


def main():
    t1 = os.path.join(DATA, "t1.dd")
    with tempfile.TemporaryDirectory() as tmp:
        # solve: finds the optimum of the tiny instance and emits JSON
        out = run("solve", "--solver", "fm", "--seed", "0", t1)
        doc = json.loads(out.stdout)
        assert doc["solver"] == "fm"
        assert doc["instance"] == "t1"
        assert doc["energy"] == -7.0
        assert doc["labeling"] == [0, 1]

        # fm+dual certifies the same instance
        doc = json.loads(run("solve", "--solver", "fm+dual", t1).stdout)
        assert doc["energy"] == -7.0
        assert abs(doc["bound"] - (-7.0)) <= 1e-3 * 7.0

        # usage errors exit with 1
        run("solve", "--solver", "nope", t1, expect=1)
        run(expect=1)

        # data errors exit with 2 and carry a line diagnostic
        bad = os.path.join(tmp, "bad.dd")
        with open(bad, "w") as f:
            f.write("p 1 1 1 0\na 0 0 9 1\n")
        proc = run("convert", "--validate", bad, expect=2)
        assert "line 2" in proc.stderr, proc.stderr

        # convert emits the canonical form and is idempotent
        once = run("convert", t1).stdout
        canon = os.path.join(tmp, "canon.dd")
        with open(canon, "w") as f:
            f.write(once)
        assert run("convert", canon).stdout == once

        # transform to the non-positive form: no positive costs remain
        text = run("transform", "--to", "nonpositive", t1).stdout
        for line in text.splitlines():
            tok = line.split()
            if tok and tok[0] in ("a", "e"):
                assert float(tok[-1]) <= 0.0, line

        # generate writes one file per instance
        gen_dir = os.path.join(tmp, "gen")
        run("generate", "house:n=6,count=2,seed=1", "--out", gen_dir)
        files = sorted(os.listdir(gen_dir))
        assert files == ["house_n6_s1.dd", "house_n6_s2.dd"], files

        # bench produces run records and both CSV reports
        bench_dir = os.path.join(tmp, "bench")
        run("bench", "--generate", "house:n=6,count=2,seed=1",
            "--solvers", "fm,fw", "--budgets", "0.2", "--trials", "1",
            "--workers", "1", "--out", bench_dir)
        runs = sorted(os.listdir(os.path.join(bench_dir, "runs")))
        assert len(runs) == 4, runs
        assert os.path.exists(os.path.join(bench_dir, "fixed_time.csv"))
        assert os.path.exists(os.path.join(bench_dir, "profile.csv"))
        with open(os.path.join(bench_dir, "fixed_time.csv")) as f:
            header = f.readline().strip().split(",")
        assert header[0] == "solver" and "mean_energy" in header

        # profile recomputes a monotone profile from the stored runs
        prof = run("profile", os.path.join(bench_dir, "runs")).stdout
        rows = [r.split(",") for r in prof.strip().splitlines()]
        assert rows[0][0] == "tau"
        for col in range(1, len(rows[0])):
            values = [float(r[col]) for r in rows[1:]]
            assert all(0.0 <= v <= 1.0 for v in values)
            assert values == sorted(values), (rows[0][col], values)

    print("cli ok")


if __name__ == "__main__":
    main()
