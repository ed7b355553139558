import json
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import complete_graph, random_graph
from mwclique.cli import main
from mwclique.config import SPACE, Configuration, preset, sample_configuration
from mwclique.graph import to_dimacs
from mwclique.harness import (
    new_sq,
    par10,
    parse_csv_records,
    records_to_csv,
    records_to_json,
    run_batch,
    summarize,
    write_records,
)
from mwclique.oracle import exact_oracle
from mwclique.search import RunResult
from mwclique.tuning import evaluate, random_search_configure

TRIANGLE = complete_graph(3, weights=[2, 3, 4])


def result(weight=1, t=0.5, success=None, instance="x", seed=1):
    return RunResult(weight, [], t, max(t, 1.0), 10, 0, seed=seed, instance=instance, success=success)


# -- statistics ----------------------------------------------------------------

def test_new_sq_values():
    assert math.isclose(new_sq(2995, 0.202), -2994.999798, rel_tol=0, abs_tol=1e-9)
    assert new_sq(0, 0) == 0
    assert new_sq(9, 1000) == -8


def test_par10():
    assert par10(result(success=False, t=12.0), 3600) == 36000
    assert par10(result(success=True, t=12.0), 3600) == 12.0
    assert par10(result(success=None, t=12.0), 3600) == 12.0


@settings(max_examples=100, deadline=None)
@given(
    st.lists(
        st.tuples(st.sampled_from("abcd"), st.integers(1, 50), st.floats(0, 100), st.booleans()),
        min_size=1,
        max_size=30,
        unique_by=lambda x: (x[0], x[1]),
    )
)
def test_avg_par10_identities(runs):
    cutoff = 10.0
    records = [result(1, t, ok, name, seed) for name, seed, t, ok in runs]
    stats = summarize(records, cutoff)
    pars = {(r.instance, r.seed): (r.time_to_best if r.success else 10 * cutoff) for r in records}
    by_inst = {}
    for (name, _), p in pars.items():
        by_inst.setdefault(name, []).append(p)
    per_inst_means = [sum(v) / len(v) for v in by_inst.values()]
    assert math.isclose(stats.avg_par10_instance, sum(per_inst_means) / len(per_inst_means), rel_tol=1e-12, abs_tol=1e-12)
    assert math.isclose(stats.avg_par10_run, sum(pars.values()) / len(pars), rel_tol=1e-12, abs_tol=1e-12)
    assert 0 <= stats.success_rate <= 1
    shuffled = list(records)
    random.Random(0).shuffle(shuffled)
    assert summarize(shuffled, cutoff) == stats


# -- batches -------------------------------------------------------------------

def test_triangle_batch():
    batch = run_batch({"tri": TRIANGLE}, Configuration(), range(1, 11), 1.0, {"tri": 9})
    s = batch.stats
    assert (s.n_success, s.success_rate, s.runs) == (10, 1.0, 10)
    assert batch.ok
    for r in batch.records:
        assert r.time_to_best <= r.elapsed and r.best_weight >= 0


def test_batch_with_files_and_bad_unit(tmp_path):
    good = tmp_path / "g.clq"
    good.write_text(to_dimacs(random_graph(20, 0.5, 1)))
    bad = tmp_path / "bad.clq"
    bad.write_text("p edge 2 1\ne 1 3\n")
    batch = run_batch([good, bad, tmp_path / "missing.clq"], Configuration(), [1, 2], 200, clock="steps")
    assert len(batch.records) == 2 and len(batch.errors) == 2
    assert any("line 2" in e for e in batch.errors)


def test_parallel_matches_serial(tmp_path):
    path = tmp_path / "g.clq"
    path.write_text(to_dimacs(random_graph(30, 0.5, 2)))
    kw = dict(clock="steps")
    serial = run_batch([path], preset("bhoslib"), range(1, 5), 500, **kw)
    parallel = run_batch([path], preset("bhoslib"), range(1, 5), 500, jobs=2, **kw)
    assert records_to_csv(serial.records) == records_to_csv(parallel.records)


def test_csv_json_consistency(tmp_path):
    graphs = {f"g{i}": random_graph(25, 0.5, i) for i in range(3)}
    targets = {name: exact_oracle(g)[0] for name, g in graphs.items()}
    batch = run_batch(graphs, Configuration(), range(1, 4), 0.5, targets)
    paths = write_records(tmp_path / "res.csv", batch.records, batch.stats)
    assert sorted(p[-4:] for p in paths) == [".csv", "json"]
    csv_rows = parse_csv_records((tmp_path / "res.csv").read_text())
    json_rows = json.loads((tmp_path / "res.json").read_text())["records"]
    assert csv_rows == json_rows
    doc = json.loads(records_to_json(batch.records, batch.stats))
    assert doc["records"] == json_rows and doc["stats"]["runs"] == 9
    assert len(csv_rows) == 9
    assert (tmp_path / "res.csv").read_text().splitlines()[0] == (
        "instance,seed,best_weight,time_to_best,elapsed,steps,restarts,success"
    )


def test_solver_never_beats_oracle():
    for seed in range(10):
        g = random_graph(20, 0.3 + 0.05 * seed, seed)
        opt, _ = exact_oracle(g)
        batch = run_batch({"g": g}, preset("default"), [seed], 300, clock="steps")
        r = batch.records[0]
        assert r.best_weight <= opt
        assert g.is_clique(r.best_clique) and g.clique_weight(r.best_clique) == r.best_weight


# -- random search ---------------------------------------------------------------

def test_configure_budget_one_returns_first_sample():
    cfg = random_search_configure(SPACE, [TRIANGLE], 1, 50, seed=7, clock="steps")
    assert cfg == sample_configuration(random.Random(7))


def test_configure_ties_to_first():
    history = []
    cfg = random_search_configure(SPACE, [complete_graph(1)], 6, 20, seed=3, clock="steps", history=history)
    scores = [s for _, s in history]
    assert len(set(scores)) == 1
    assert cfg is history[0][0]


def test_configure_rejects_empty_training():
    with pytest.raises(ValueError):
        random_search_configure(SPACE, [], 5, 1.0)


def test_random_search_beats_default():
    # NewSQ under the step clock charges 1/1000 per move, so evaluations are deterministic
    wins = 0
    for rep in range(20):
        training = [random_graph(16, 0.5, 1000 * rep + i) for i in range(5)]
        best = random_search_configure(SPACE, training, 50, 60, seed=rep, clock="steps")
        if evaluate(best, training, 60, clock="steps") <= evaluate(Configuration(), training, 60, clock="steps"):
            wins += 1
    assert wins >= 16


# -- command line --------------------------------------------------------------

def test_cli_solve_and_oracle(tmp_path, capsys):
    path = tmp_path / "k.clq"
    path.write_text("p edge 4 5\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\nv 1 1\nv 2 1\nv 3 5\nv 4 9\n")
    assert main(["solve", str(path), "--preset", "default", "--cutoff", "0.2", "--target", "11"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["best_weight"] == 11 and out["best_clique"] == [1, 2, 4] and out["success"] is True
    assert main(["oracle", str(path)]) == 0
    assert json.loads(capsys.readouterr().out)["optimum"] == 11
    assert main(["solve", str(path), "--weights", "default", "--cutoff", "100", "--clock", "steps"]) == 0
    assert json.loads(capsys.readouterr().out)["best_weight"] == 2 + 3 + 5


def test_cli_exit_codes(tmp_path, capsys):
    assert main(["solve", str(tmp_path / "nope.clq")]) == 2
    bad = tmp_path / "bad.clq"
    bad.write_text("p edge 2 1\ne 1 3\n")
    assert main(["solve", str(bad)]) == 2
    assert "line 2" in capsys.readouterr().err
    with pytest.raises(SystemExit) as exc:
        main(["solve"])
    assert exc.value.code == 1
    assert main(["solve", str(bad), "--preset", "nope"]) == 1
    ok = tmp_path / "ok.clq"
    ok.write_text("p edge 2 1\ne 1 2\n")
    assert main(["solve", str(ok), "--bms_num", "0"]) == 2
    assert main(["configure"]) == 1


def test_cli_bench(tmp_path, capsys):
    (tmp_path / "a.clq").write_text(to_dimacs(TRIANGLE))
    (tmp_path / "list.txt").write_text("a.clq 9\n# comment\nmissing.clq\n")
    out = tmp_path / "res.csv"
    code = main(["bench", str(tmp_path / "list.txt"), "--seeds", "1..3", "--cutoff", "100",
                 "--clock", "steps", "--out", str(out)])
    assert code == 3
    summary = json.loads(capsys.readouterr().out)
    assert summary["n_success"] == 3 and len(summary["errors"]) == 1
    assert "avgPAR10_run" in summary and "avgPAR10_instance" in summary
    assert len(parse_csv_records(out.read_text())) == 3
    (tmp_path / "list.txt").write_text("a.clq 9\n")
    assert main(["bench", str(tmp_path / "list.txt"), "--seeds", "1..2", "--cutoff", "100", "--clock", "steps"]) == 0


def test_cli_configure(tmp_path, capsys):
    space = tmp_path / "space.pcs"
    assert main(["configure", "--space-out", str(space)]) == 0
    assert "tabu_tenure [1,100] [7]i" in space.read_text()
    (tmp_path / "a.clq").write_text(to_dimacs(TRIANGLE))
    (tmp_path / "train.txt").write_text("a.clq\n")
    capsys.readouterr()
    assert main(["configure", "--train", str(tmp_path / "train.txt"), "--budget", "2",
                 "--cutoff", "50", "--clock", "steps"]) == 0
    Configuration.from_json(capsys.readouterr().out)
