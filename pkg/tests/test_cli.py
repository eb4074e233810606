import json

import pytest

from ecpaths import corpus
from ecpaths.cli import main
from ecpaths.graph import Mode, parse_instance, serialize_instance
from ecpaths.reductions import (
    parse_threshold_set,
    serialize_cubic_graph,
    serialize_threshold_set,
)


@pytest.fixture
def trap_file(tmp_path):
    path = tmp_path / "trap.ecg"
    path.write_text(serialize_instance(corpus.two_route_trap()))
    return str(path)


@pytest.fixture
def gadget_file(tmp_path):
    path = tmp_path / "gadget.ecg"
    path.write_text(serialize_instance(corpus.gadget_demo()))
    return str(path)


def _solve(capsys, *argv):
    code = main(["solve", *argv])
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


def test_solve_oracle_cddp(capsys, trap_file):
    code, record = _solve(capsys, "--algo", "oracle", "--mode", "cddp", trap_file)
    assert code == 0
    assert record["value"] == 2
    assert record["format"] == "ecpaths-run/1"
    assert len(record["paths"]) == 2


def test_solve_vc_approx_certificate(capsys, trap_file):
    code, record = _solve(capsys, "--algo", "vc-approx", "--mode", "cddp", trap_file)
    assert code == 0
    assert record["value"] == 1
    assert record["stats"]["greedy_prefix"] == 1
    assert "guarantee" in record["stats"]


def test_solve_tree_on_non_tree_exits_2(capsys, gadget_file):
    assert main(["solve", "--algo", "tree", "--mode", "cddp", gadget_file]) == 2


def test_solve_mode_gate(capsys, trap_file):
    assert main(["solve", "--algo", "disjoint-paths", "--mode", "cddp", trap_file]) == 2
    assert main(["solve", "--algo", "vc-fpt", "--mode", "cddp", trap_file]) == 2
    assert main(["solve", "--algo", "vc-approx", "--mode", "cdp", trap_file]) == 2


def test_solve_flow_needs_color(capsys, trap_file):
    assert main(["solve", "--algo", "flow", trap_file]) == 2
    code, record = _solve(capsys, "--algo", "flow", "--color", "red", trap_file)
    assert code == 0 and record["value"] == 2


def test_solve_overflow_exit_code(capsys, tmp_path):
    lines = ["n 8", "colors c", "s 0", "t 7"]
    for u in range(8):
        for v in range(u + 1, 8):
            lines.append(f"e {u} {v} c")
    dense = tmp_path / "dense.ecg"
    dense.write_text("\n".join(lines) + "\n")
    assert main(["solve", "--algo", "oracle", "--path-cap", "10", str(dense)]) == 3


def test_solve_color_coding_decision(capsys, trap_file):
    code, record = _solve(
        capsys,
        "--algo", "color-coding", "--mode", "cddp",
        "--target", "2", "--max-len", "2", "--strategy", "random",
        "--trials", "300", "--seed", "3",
        trap_file,
    )
    assert code == 0
    assert record["stats"]["accepted"] is True
    assert record["value"] == 2


def test_solve_records_deterministic(capsys, trap_file):
    code1, rec1 = _solve(capsys, "--algo", "oracle", "--mode", "cddp", trap_file)
    code2, rec2 = _solve(capsys, "--algo", "oracle", "--mode", "cddp", trap_file)
    rec1.pop("elapsed_ms")
    rec2.pop("elapsed_ms")
    assert rec1 == rec2


def test_solve_bad_file_exits_1(tmp_path):
    bad = tmp_path / "bad.ecg"
    bad.write_text("nonsense\n")
    assert main(["solve", "--algo", "oracle", str(bad)]) == 1


def test_verify_round_trip(capsys, tmp_path, trap_file):
    code = main(["solve", "--algo", "oracle", "--mode", "cddp", trap_file])
    record = capsys.readouterr().out
    solfile = tmp_path / "sol.json"
    solfile.write_text(record)
    assert main(["verify", trap_file, str(solfile)]) == 0
    capsys.readouterr()

    doc = json.loads(record)
    doc["paths"][0]["vertices"][1] = doc["paths"][1]["vertices"][1]  # corrupt
    solfile.write_text(json.dumps(doc))
    assert main(["verify", trap_file, str(solfile)]) == 1


def test_verify_value_mismatch(capsys, tmp_path, trap_file):
    doc = {"mode": "cddp", "value": 5, "paths": [{"color": "red", "vertices": [0, 2, 3]}]}
    solfile = tmp_path / "sol.json"
    solfile.write_text(json.dumps(doc))
    assert main(["verify", trap_file, str(solfile)]) == 1
    assert "declared value" in capsys.readouterr().out


def test_reduce_isc_cli(capsys, tmp_path, k4):
    src = tmp_path / "k4.cubic"
    src.write_text(serialize_cubic_graph(k4))
    out = tmp_path / "out.ecg"
    cert = tmp_path / "cert.json"
    code = main(
        ["reduce", str(src), "--from", "isc", "--out", str(out), "--certificate", str(cert)]
    )
    assert code == 0
    inst = parse_instance(out.read_text())
    assert inst.graph.vertex_count == 18
    roles = json.loads(cert.read_text())
    assert roles["color_roles"]["v0"] == ["vertex", 0]


def test_reduce_ts_cli_with_coverage(capsys, tmp_path):
    src = tmp_path / "ts.txt"
    src.write_text("elements 1 2 3\nset 1 2\n")
    assert main(["reduce", str(src), "--from", "thresholdset"]) == 1
    code = main(["reduce", str(src), "--from", "thresholdset", "--ensure-coverage"])
    assert code == 0


def test_reduce_then_solve_then_project(capsys, tmp_path, ts_demo):
    src = tmp_path / "demo.ts"
    src.write_text(serialize_threshold_set(ts_demo))
    out = tmp_path / "demo.ecg"
    assert main(["reduce", str(src), "--from", "thresholdset", "--out", str(out)]) == 0
    code = main(["solve", "--algo", "oracle", "--mode", "cdp", str(out)])
    record = json.loads(capsys.readouterr().out)
    assert code == 0 and record["value"] == 2
    from ecpaths.graph import UniColorPath, solution
    from ecpaths.reductions import project_paths_to_ts

    paths = [UniColorPath(tuple(p["vertices"]), p["color"]) for p in record["paths"]]
    chosen = project_paths_to_ts(ts_demo, solution(paths, Mode.CDP))
    assert len(chosen) == 2


def test_gen_kinds_produce_parseable_output(capsys, tmp_path):
    for kind in ("random", "tree", "disjoint-paths", "near-disjoint-paths"):
        out = tmp_path / f"{kind}.ecg"
        assert main(["gen", "--kind", kind, "--n", "8", "--seed", "1", "--out", str(out)]) == 0
        parse_instance(out.read_text())
    out = tmp_path / "g.cubic"
    assert main(["gen", "--kind", "cubic", "--n", "6", "--seed", "1", "--out", str(out)]) == 0
    out = tmp_path / "g.ts"
    assert main(["gen", "--kind", "ts", "--n", "5", "--seed", "1", "--out", str(out)]) == 0
    parse_threshold_set(out.read_text())


def test_distance_reporter(capsys, trap_file):
    assert main(["distance", trap_file]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc == {
        "count_st": False,
        "deletion_set": [],
        "distance": 0,
        "found": True,
    }
    assert main(["distance", trap_file, "--count-st"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["distance"] == 2


def test_distance_not_found_exits_2(capsys, tmp_path):
    lines = ["n 7", "colors c", "s 0", "t 6"]
    for u in range(1, 6):
        for v in range(u + 1, 6):
            lines.append(f"e {u} {v} c")
    f = tmp_path / "clique.ecg"
    f.write_text("\n".join(lines) + "\n")
    assert main(["distance", str(f), "--distance-max", "1"]) == 2


def test_bench_small_corpus_clean(capsys, tmp_path):
    out = tmp_path / "bench.json"
    assert main(["bench", "--seeds", "3", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["flagged"] == 0
    assert doc["format"] == "ecpaths-bench/1"
    statuses = {row["status"] for row in doc["rows"]}
    assert statuses <= {"ok", "skipped"}


def test_bench_parallel_matches_serial(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["bench", "--seeds", "2", "--out", str(a)]) == 0
    assert main(["bench", "--seeds", "2", "--jobs", "3", "--out", str(b)]) == 0
    assert json.loads(a.read_text())["rows"] == json.loads(b.read_text())["rows"]
