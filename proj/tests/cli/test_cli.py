#!/usr/bin/env python3
"""Integration checks for the command-line harness: exit codes, CSV schema,
determinism, and the reference toy-channel operating points."""

import csv
import json
import math
import os
import subprocess
import sys
import tempfile
from pathlib import Path

BIN = Path(sys.argv[1]) if len(sys.argv) > 1 else None
FAILURES = []


def run(*args, expect=0, env_extra=None):
    env = dict(os.environ)
    if env_extra:
        env.update(env_extra)
    proc = subprocess.run([str(BIN), *args], capture_output=True, text=True, env=env)
    if proc.returncode != expect:
        raise AssertionError(
            f"{' '.join(args)}: exit {proc.returncode}, want {expect}\n"
            f"stdout: {proc.stdout}\nstderr: {proc.stderr}"
        )
    return proc


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def check(name, fn):
    try:
        fn()
        print(f"[ok] {name}")
    except Exception as exc:  # noqa: BLE001
        FAILURES.append(name)
        print(f"[FAIL] {name}: {exc}")


def test_gen_channel(tmp):
    toy = tmp / "toy.json"
    run("gen-channel", "--toy", "--output", str(toy))
    data = json.loads(toy.read_text())
    assert data["m_tx"] == 8 and data["m_ue"] == 3
    assert data["h_real"][0][0] == -0.4 and data["h_real"][7][2] == -0.8
    assert all(abs(w - 1.0) < 1e-15 for w in data["omega"])

    a, b = tmp / "a.json", tmp / "b.json"
    run("gen-channel", "--gaussian", "24", "8", "--seed", "7", "--chi", "0.1",
        "--output", str(a))
    run("gen-channel", "--gaussian", "24", "8", "--seed", "7", "--chi", "0.1",
        "--output", str(b))
    assert a.read_text() == b.read_text(), "same seed must give identical files"

    ga = json.loads(a.read_text())
    fro = math.sqrt(sum(x * x + y * y
                        for rr, ri in zip(ga["h_real"], ga["h_imag"])
                        for x, y in zip(rr, ri)))
    assert all(abs(w - 0.1 * fro / 8) < 1e-12 for w in ga["omega"])

    run("gen-channel", "--toy", "--gaussian", "8", "3", "--output", str(tmp / "x.json"),
        expect=1)  # two sources
    run("gen-channel", "--output", str(tmp / "y.json"), expect=1)  # no source


def test_baseline(tmp):
    toy = tmp / "toy.json"
    run("gen-channel", "--toy", "--output", str(toy))

    out = tmp / "zf.csv"
    run("baseline", "--channel", str(toy), "--method", "zf",
        "--alloc", "kappa=0.3481,0.2184,0.4335", "--output", str(out))
    rows = read_csv(out)
    assert len(rows) == 1
    assert abs(float(rows[0]["mean_db"]) - 5.5647) <= 1e-3
    for i in range(1, 9):
        assert float(rows[0][f"rowpower_{i}"]) <= 1.0 + 1e-9

    out2 = tmp / "slnr.csv"
    run("baseline", "--channel", str(toy), "--method", "slnr",
        "--alloc", "kappa=0.2787,0.3172,0.4042", "--output", str(out2))
    assert abs(float(read_csv(out2)[0]["mean_db"]) - 6.0375) <= 1e-3

    run("baseline", "--channel", str(toy), "--method", "nope", expect=1)
    run("baseline", "--channel", str(tmp / "missing.json"), expect=1)

    # near rank-deficient channel: numerical failure propagates as exit 2
    bad = tmp / "bad.json"
    h = [[1.0, 1.0], [2.0, 2.0], [3.0, 3.0]]
    bad.write_text(json.dumps({
        "m_tx": 3, "m_ue": 2,
        "h_real": h, "h_imag": [[0.0, 0.0]] * 3,
        "omega": [1.0, 1.0], "beta": [1.0, 1.0, 1.0],
    }))
    run("baseline", "--channel", str(bad), "--method", "zf", expect=2)


def test_pareto(tmp):
    toy = tmp / "toy.json"
    run("gen-channel", "--toy", "--output", str(toy))

    out = tmp / "p0.csv"
    run("pareto", "--channel", str(toy), "--lambda", "0.3123,0.2616,0.4261",
        "--iters", "0", "--output", str(out))
    row = read_csv(out)[0]
    want0 = [2.9065, 2.5335, 3.6363]
    for k in range(3):
        assert abs(float(row[f"sinr_{k + 1}"]) - want0[k]) <= 1e-3

    out1 = tmp / "p1.csv"
    run("pareto", "--channel", str(toy), "--lambda", "0.2693,0.2495,0.4812",
        "--iters", "1", "--output", str(out1))
    row = read_csv(out1)[0]
    want1 = [3.6413, 3.2667, 5.9677]
    for k in range(3):
        assert abs(float(row[f"sinr_{k + 1}"]) / want1[k] - 1) <= 0.01
    assert row["iters"] == "1"

    outc = tmp / "pc.csv"
    run("pareto", "--channel", str(toy), "--lambda", "0.3307,0.3326,0.3368",
        "--iters", "converge", "--delta", "0.01", "--output", str(outc))
    row = read_csv(outc)[0]
    wantc = [4.1696, 4.1328, 4.6920]
    for k in range(3):
        assert abs(float(row[f"sinr_{k + 1}"]) / wantc[k] - 1) <= 0.01
    assert abs(float(row["mean_db"]) / 7.2636 - 1) <= 0.01
    assert row["converged"] == "1" and row["status"] == "ok"

    # uniform default and determinism of the random mode
    run("pareto", "--channel", str(toy))
    ra, rb = tmp / "ra.csv", tmp / "rb.csv"
    run("pareto", "--channel", str(toy), "--lambda", "random5", "--seed", "3",
        "--output", str(ra))
    run("pareto", "--channel", str(toy), "--lambda", "random5", "--seed", "3",
        "--output", str(rb))
    assert ra.read_text() == rb.read_text()

    run("pareto", "--channel", str(toy), "--lambda", "0.5,0.5", expect=1)
    run("pareto", "--channel", str(toy), "--iters", "-1", expect=1)
    run("pareto", "--channel", str(toy), "--lambda", "random-5", expect=1)


def test_svd_decay_channel(tmp):
    out = tmp / "decay.json"
    run("gen-channel", "--svd-decay", "inverse-square", "12", "4", "--seed", "2",
        "--chi", "0.1", "--beta-mode", "total", "--output", str(out))
    data = json.loads(out.read_text())
    assert data["m_tx"] == 12 and data["m_ue"] == 4
    assert all(abs(b - 1 / 12) < 1e-15 for b in data["beta"])


def test_json_format(tmp):
    toy = tmp / "toy.json"
    run("gen-channel", "--toy", "--output", str(toy))
    out = tmp / "pc.json"
    run("pareto", "--channel", str(toy), "--lambda", "uniform", "--delta", "0.01",
        "--format", "json", "--output", str(out))
    doc = json.loads(out.read_text())
    row = doc["rows"][0]
    assert row["converged"] is True
    assert len(row["alpha_history"]) >= 1
    assert len(row["final_mu"]) == 8
    assert abs(sum(row["final_mu"]) - 1.0) < 1e-12


def test_thread_cap_determinism(tmp):
    toy = tmp / "toy.json"
    run("gen-channel", "--toy", "--output", str(toy))
    outs = []
    for i, threads in enumerate(("1", "5")):
        out = tmp / f"thr{i}.csv"
        run("surface", "--channel", str(toy), "--points", "64", "--seed", "2",
            "--output", str(out), env_extra={"PARETO_THREADS": threads})
        outs.append(out.read_text())
    assert outs[0] == outs[1], "surface output must not depend on the thread count"


def test_surface(tmp):
    toy = tmp / "toy.json"
    run("gen-channel", "--toy", "--output", str(toy))
    out = tmp / "surf.csv"
    run("surface", "--channel", str(toy), "--points", "32", "--delta", "0.01",
        "--seed", "11", "--output", str(out))
    rows = read_csv(out)
    assert len(rows) == 32
    header = list(rows[0].keys())
    assert header == (
        [f"lambda_{k}" for k in (1, 2, 3)] + [f"sinr_{k}" for k in (1, 2, 3)]
        + [f"db_{k}" for k in (1, 2, 3)] + ["mean_db", "iters", "converged", "status"]
    )
    assert all(r["status"] == "ok" for r in rows)

    out2 = tmp / "surf2.csv"
    run("surface", "--channel", str(toy), "--points", "32", "--delta", "0.01",
        "--seed", "11", "--output", str(out2))
    assert out.read_text() == out2.read_text()


def test_iteration_stats(tmp):
    out = tmp / "iters.csv"
    run("iteration-stats", "--sizes", "8x2", "--deltas", "1e-2", "--trials", "200",
        "--seed", "1", "--output", str(out))
    row = read_csv(out)[0]
    assert float(row["mean_iters"]) > 0.5
    assert row["trials"] == "200"


def test_sweep(tmp):
    out = tmp / "sweep.csv"
    run("sweep", "--sizes", "12x4", "--chi-list", "0.1,1", "--law", "inverse-square",
        "--seeds", "2", "--seed", "5", "--output", str(out))
    rows = read_csv(out)
    assert len(rows) == 4
    for r in rows:
        assert r["status"] == "ok"
        assert float(r["gain_min_slnr"]) > 0.0


def test_verify(tmp):
    toy = tmp / "toy.json"
    run("gen-channel", "--toy", "--output", str(toy))

    # refined precoder: no joint improvement at the default factor
    outc = tmp / "conv.json"
    run("pareto", "--channel", str(toy), "--lambda", "uniform", "--delta", "1e-4",
        "--format", "json", "--output", str(outc))
    # rebuild the refined precoder through the python-side json (the CLI emits
    # metrics; the precoder itself comes from a fresh library call in-process)

    # use the reference example precoder at omega 0.04 instead, end to end
    low = tmp / "low.json"
    run("gen-channel", "--toy", "--omega", "0.04", "--output", str(low))
    prec = tmp / "pexample.json"
    p = [
        [-0.131822459705, -0.116783110219, 0.984370125389],
        [-0.179275984384, -0.026748610369, 0.983435118900],
        [0.103075169577, 0.169535064180, -0.980119059316],
        [0.228024544866, -0.069956868783, -0.971138941162],
        [0.215688858238, -0.045050174929, -0.975422368191],
        [-0.098145309120, -0.178451934724, 0.979041574716],
        [0.059226063982, 0.247555764804, -0.967061743834],
        [-0.572228658427, -0.192375199215, -0.257327740732],
    ]
    prec.write_text(json.dumps({
        "m_tx": 8, "m_ue": 3,
        "p_real": p, "p_imag": [[0.0] * 3 for _ in range(8)],
    }))
    out = tmp / "verify.csv"
    run("verify", "--channel", str(low), "--precoder", str(prec), "--output", str(out))
    kv = {r["key"]: r["value"] for r in read_csv(out)}
    assert kv["fullpower_flag"] == "1"
    assert float(kv["unit_eig_min_distance"]) <= 1e-3
    assert abs(float(kv["rowpower_8"]) - 0.4307) <= 1e-3

    run("verify", "--channel", str(low), "--precoder", str(toy), expect=1)  # wrong schema


def main():
    if BIN is None or not BIN.exists():
        print("usage: test_cli.py <path-to-binary>")
        return 2
    with tempfile.TemporaryDirectory() as tmpdir:
        tmp = Path(tmpdir)
        check("gen-channel", lambda: test_gen_channel(tmp))
        check("svd-decay-channel", lambda: test_svd_decay_channel(tmp))
        check("json-format", lambda: test_json_format(tmp))
        check("thread-cap", lambda: test_thread_cap_determinism(tmp))
        check("baseline", lambda: test_baseline(tmp))
        check("pareto", lambda: test_pareto(tmp))
        check("surface", lambda: test_surface(tmp))
        check("iteration-stats", lambda: test_iteration_stats(tmp))
        check("sweep", lambda: test_sweep(tmp))
        check("verify", lambda: test_verify(tmp))
    if FAILURES:
        print("failed:", ", ".join(FAILURES))
        return 1
    print("all cli checks passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
