import json
import os
import subprocess

import pytest

import adjointkit as ak

F0_RAYS = [[1, 0], [0, 1], [-1, 0], [0, -1]]
F0_K = ["-1", "-1", "1", "-1"]


def f0_instance():
    return {
        "rays": F0_RAYS,
        "k": F0_K,
        "boundaries": [["1", "1", "1", "1"]],
    }


def test_common_point_square():
    square = {"vertices": [["0", "0"], ["0", "1"], ["1", "0"], ["1", "1"]]}
    cert = ak.common_point(square)
    assert len(cert["point"]) == 2
    assert len(cert["memberships"]) == 4
    for coeffs in cert["memberships"]:
        assert len(coeffs) == 3


def test_cover_report_ok():
    square = {"vertices": [["0", "0"], ["0", "1"], ["1", "0"], ["1", "1"]]}
    part = {"vertices": [["0", "0"], ["0", "1"]]}
    out = ak.cover(square, [part])
    assert out["report"]["ok"] is True
    assert len(out["cover"]["simplices"]) >= 2


def test_toric_surface_and_zariski():
    surface = ak.toric_surface(F0_RAYS, F0_K)
    assert surface["curves"] == ["C1", "C2", "C3", "C4"]
    z = ak.zariski(surface, ["1", "1", "1", "1"])
    assert z["support"] == []
    assert z["p"] == ["1", "1", "1", "1"]


def test_pipeline_segment_model():
    result, trace = ak.run_pipeline(f0_instance(), bound=6)
    assert result["verified"] is True
    degs = sorted(
        (tuple(e["deg"]), tuple(e["payload"])) for e in result["generators"]["elements"]
    )
    assert [d for d, _ in degs] == [(1,), (1,), (1,)]
    payloads = sorted(p for _, p in degs)
    assert payloads == [(0, 0), (1, 0), (2, 0)]
    check = ak.verify_trace(trace)
    assert check["ok"] is True


def test_pipeline_trace_tamper_detected():
    _, trace = ak.run_pipeline(f0_instance(), bound=4)
    tampered = list(trace)
    for i, line in enumerate(tampered):
        rec = json.loads(line)
        if "elements" in rec and rec["elements"]:
            rec["elements"][0]["payload"][0] += 1
            tampered[i] = json.dumps(rec, separators=(",", ":"))
            break
    check = ak.verify_trace(tampered)
    assert check["ok"] is False


def test_inconsistency_error_exposed():
    with pytest.raises(ValueError):
        ak.zariski(ak.toric_surface(F0_RAYS, F0_K), ["-5", "0", "0", "0"])


@pytest.fixture
def cli():
    path = os.environ.get("ADJOINTKIT_CLI")
    if not path or not os.path.exists(path):
        pytest.skip("ADJOINTKIT_CLI not set")
    return path


def test_cli_pipeline_deterministic(cli):
    payload = json.dumps(f0_instance())
    runs = [
        subprocess.run(
            [cli, "pipeline", "-", "--bound", "4"],
            input=payload,
            capture_output=True,
            text=True,
        )
        for _ in range(2)
    ]
    for r in runs:
        assert r.returncode == 0, r.stderr
        assert json.loads(r.stdout)["verified"] is True
    assert runs[0].stdout == runs[1].stdout


def test_cli_bad_input_exit_code(cli):
    r = subprocess.run(
        [cli, "pipeline", "-"],
        input=json.dumps({"rays": F0_RAYS, "k": F0_K, "boundaries": [["2", "0", "0", "0"]]}),
        capture_output=True,
        text=True,
    )
    assert r.returncode == 2
