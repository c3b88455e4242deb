import json
import subprocess
import sys
from pathlib import Path

import pytest

from tensec.cli import main
from tensec.fixtures import (DESARGUES_NEG, DESARGUES_POS, PASCAL_POS,
                             WHEEL5_GRAPH)
from tensec.framework import framework_to_json

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture()
def files(tmp_path):
    out = {}
    for name, fw in [("dpos", DESARGUES_POS), ("dneg", DESARGUES_NEG),
                     ("ppos", PASCAL_POS)]:
        p = tmp_path / f"{name}.json"
        p.write_text(json.dumps(framework_to_json(fw)))
        out[name] = str(p)
    wheel = tmp_path / "wheel.json"
    wheel.write_text(json.dumps({
        "vertices": list(WHEEL5_GRAPH.vertices),
        "edges": [list(e) for e in WHEEL5_GRAPH.edges],
    }))
    out["wheel"] = str(wheel)
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    out["bad"] = str(bad)
    lowdeg = tmp_path / "lowdeg.json"
    lowdeg.write_text(json.dumps({
        "vertices": ["a", "b", "c"],
        "edges": [["a", "b"], ["b", "c"], ["a", "c"]],
    }))
    out["lowdeg"] = str(lowdeg)
    return out


def run_cli(args):
    proc = subprocess.run([sys.executable, "-m", "tensec.cli", *args],
                          capture_output=True, text=True)
    return proc


def test_check_verdicts(files, capsys):
    assert main(["check", files["dpos"], "--seed", "3"]) == 0
    out = capsys.readouterr().out
    assert "tensegrity: YES" in out
    assert "self-stress dimension: 1" in out
    assert "verdict sources agree: YES" in out

    assert main(["check", files["dneg"], "--seed", "3"]) == 0
    out = capsys.readouterr().out
    assert "tensegrity: NO" in out
    assert "verdict sources agree: YES" in out

    assert main(["check", files["ppos"], "--seed", "3"]) == 0
    out = capsys.readouterr().out
    assert "tensegrity: YES" in out


def test_check_exit_codes(files, tmp_path, capsys):
    assert main(["check", files["bad"]]) == 2
    assert main(["check", files["lowdeg"]]) == 2
    capsys.readouterr()
    # general-position failure: collinear triple on a cycle
    from tensec.fixtures import DESARGUES_GRAPH
    from tensec.projective import ProjPoint
    from tensec.framework import Framework

    placement = dict(DESARGUES_POS.placement)
    placement["p5"] = ProjPoint((1, 1, 1))
    placement["p6"] = ProjPoint((2, 2, 1))
    bad_fw = Framework(DESARGUES_GRAPH, placement)
    p = tmp_path / "badgp.json"
    p.write_text(json.dumps(framework_to_json(bad_fw)))
    assert main(["check", str(p)]) == 3
    out = capsys.readouterr().out
    assert "general position: NO" in out


def test_check_json_format(files, capsys):
    assert main(["check", files["dpos"], "--format", "json", "--seed", "1"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["verdict"] == "YES"
    assert payload["stress_dim"] == 1
    assert payload["general_position"] is True
    assert payload["quantization_consistent"] is True
    assert payload["conditions_fulfilled"] is True
    assert payload["verdict_sources_agree"] is True


def test_check_verdict_sources_agree_on_all_fixtures(files, tmp_path, capsys):
    from tensec.fixtures import PASCAL_NEG

    pneg = tmp_path / "pneg.json"
    pneg.write_text(json.dumps(framework_to_json(PASCAL_NEG)))
    for path, verdict in ((files["dpos"], "YES"), (files["dneg"], "NO"),
                          (files["ppos"], "YES"), (str(pneg), "NO")):
        assert main(["check", path, "--format", "json", "--seed", "2"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["verdict"] == verdict
        assert payload["verdict_sources_agree"] is True
        assert payload["quantization_consistent"] is (verdict == "YES")
        assert payload["conditions_fulfilled"] is (verdict == "YES")


def test_check_generators_mode(files, capsys):
    assert main(["check", files["dpos"], "--cycles", "generators"]) == 0
    assert "tensegrity: YES" in capsys.readouterr().out


def test_conditions_golden_files(files, capsys):
    for name, fixture in (("desargues", "dpos"), ("pascal", "ppos")):
        assert main(["conditions", files[fixture]]) == 0
        out = capsys.readouterr().out
        body = [l for l in out.splitlines() if l.startswith("[")]
        golden = (GOLDEN / f"{name}_conditions.sexpr").read_text().splitlines()
        assert body == golden


def test_conditions_json_contains_ast(files, capsys):
    assert main(["conditions", files["wheel"], "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["xi"]["slots"] == [["p1", 1]]
    assert all({"cycle", "ast", "sexpr"} <= set(c) for c in payload["conditions"])


def test_conditions_rejects_degree2(files):
    assert main(["conditions", files["lowdeg"]]) == 2


def test_verify_zero_mismatches(files, capsys):
    assert main(["verify", files["dpos"], "--samples", "16", "--seed", "5"]) == 0
    out = capsys.readouterr().out
    assert "mismatches: 0" in out
    assert "oracle positive: 8" in out

    assert main(["verify", files["wheel"], "--samples", "8", "--seed", "5",
                 "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["mismatch_count"] == 0
    assert payload["xi_dimension"] == 1
    for entry in payload["results"]:
        assert "seed" in entry


def test_cross_process_byte_determinism(files):
    a = run_cli(["check", files["dpos"], "--seed", "11", "--format", "json"])
    b = run_cli(["check", files["dpos"], "--seed", "11", "--format", "json"])
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout
    c = run_cli(["conditions", files["ppos"], "--format", "json"])
    d = run_cli(["conditions", files["ppos"], "--format", "json"])
    assert c.stdout == d.stdout
    e = run_cli(["verify", files["dpos"], "--samples", "6", "--format", "json"])
    f = run_cli(["verify", files["dpos"], "--samples", "6", "--format", "json"])
    assert e.stdout == f.stdout


def test_env_seed_fallback(files):
    import os

    env = dict(os.environ)
    env["TENSEC_SEED"] = "11"
    a = subprocess.run([sys.executable, "-m", "tensec.cli", "check",
                        files["dpos"], "--format", "json"],
                       capture_output=True, text=True, env=env)
    b = run_cli(["check", files["dpos"], "--seed", "11", "--format", "json"])
    assert a.stdout == b.stdout


def test_timings_go_to_stderr_only(files):
    a = run_cli(["check", files["dpos"], "--seed", "2", "--format", "json"])
    b = run_cli(["check", files["dpos"], "--seed", "2", "--format", "json",
                 "--timings"])
    assert a.stdout == b.stdout
    assert "[timing]" in b.stderr and "[timing]" not in a.stderr


def test_render_framework(files, tmp_path, capsys):
    out = tmp_path / "fig.svg"
    assert main(["render", files["dpos"], "-o", str(out)]) == 0
    svg = out.read_text()
    assert svg.count("<circle") == 6
    assert svg.count('stroke="#1f3b73"') == 9
    for v in DESARGUES_POS.graph.vertices:
        assert f">{v}</text>" in svg
    out2 = tmp_path / "fig2.svg"
    assert main(["render", files["dpos"], "-o", str(out2)]) == 0
    assert out.read_bytes() == out2.read_bytes()


def test_render_framed_cycle(tmp_path):
    from tensec.cycles import framed_cycle_to_json
    from tensec.sampling import random_framed_cycle

    c = random_framed_cycle(4, 3, equilibrium=True)
    p = tmp_path / "cycle.json"
    p.write_text(json.dumps(framed_cycle_to_json(c)))
    out = tmp_path / "cycle.svg"
    assert main(["render", str(p), "-o", str(out)]) == 0
    svg = out.read_text()
    assert svg.count("<circle") == 4
    assert "stroke-dasharray" in svg


def test_render_rejects_points_at_infinity(tmp_path):
    obj = {
        "vertices": [{"id": "a", "coords": ["1", "0", "0"]},
                     {"id": "b", "coords": ["0", "1", "1"]},
                     {"id": "c", "coords": ["1", "1", "1"]}],
        "edges": [["a", "b"], ["b", "c"], ["a", "c"]],
    }
    p = tmp_path / "inf.json"
    p.write_text(json.dumps(obj))
    assert main(["render", str(p), "-o", str(tmp_path / "x.svg")]) == 3


def test_custom_chart_flag(tmp_path, capsys):
    # same framework, chart moved so no fixture point is at infinity
    obj = framework_to_json(DESARGUES_POS)
    p = tmp_path / "d.json"
    p.write_text(json.dumps(obj))
    assert main(["check", str(p), "--chart", "1,1,17"]) == 0
    out = capsys.readouterr().out
    assert "tensegrity: YES" in out
