import json

from ncmotives.cli import main

A2_SPEC = {
    "format": 1,
    "kind": "quiver",
    "vertices": 2,
    "arrows": [{"from": 0, "to": 1, "label": "a"}],
}

CYCLIC_SPEC = {
    "format": 1,
    "kind": "quiver",
    "vertices": 2,
    "arrows": [{"from": 0, "to": 1, "label": "a"}, {"from": 1, "to": 0, "label": "b"}],
}

DUAL_NUMBERS_SPEC = {
    "format": 1,
    "kind": "table",
    "dim": 2,
    "labels": ["1", "x"],
    "mul": [[[1, 0], [0, 1]], [[0, 1], [0, 0]]],
    "unit": [1, 0],
    "idempotents": [[1, 0]],
}


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


def run_to_report(tmp_path, args):
    out = tmp_path / "report.json"
    code = main(args + ["--out", str(out)])
    report = json.loads(out.read_text()) if out.exists() else None
    return code, report


def test_euler_matrix_command(tmp_path):
    spec = write(tmp_path, "a2.json", A2_SPEC)
    code, report = run_to_report(tmp_path, ["euler-matrix", spec])
    assert code == 0
    assert report["matrix"] == [[1, -1], [0, 1]]
    assert report["determinant"] in (1, -1)
    assert report["kernel_left"] == [] and report["kernel_right"] == []


def test_smooth_check_command(tmp_path):
    spec = write(tmp_path, "a2.json", A2_SPEC)
    code, report = run_to_report(tmp_path, ["smooth-check", spec])
    assert code == 0
    assert report["smooth"] and report["proper"]
    assert report["diagonal_resolution_length"] == 1


def test_serre_check_command(tmp_path):
    spec = write(tmp_path, "a2.json", A2_SPEC)
    code, report = run_to_report(tmp_path, ["--seed", "3", "serre-check", spec, "--samples", "4"])
    assert code == 0
    assert report["verdict"]
    assert len(report["checks"]) == 8


def test_hochschild_command_with_bar_check(tmp_path):
    spec = write(tmp_path, "a2.json", A2_SPEC)
    code, report = run_to_report(
        tmp_path, ["hochschild", spec, "--top", "4", "--bar-check", "4"]
    )
    assert code == 0
    assert report["dims"] == [2, 0, 0, 0, 0]
    assert report["bar_dims"] == [2, 0, 0, 0, 0]


def test_hochschild_dual_coefficients(tmp_path):
    spec = write(tmp_path, "a2.json", A2_SPEC)
    coeff = write(tmp_path, "coeff.json", {"named": "dual"})
    code, report = run_to_report(
        tmp_path, ["hochschild", spec, "--coefficients", coeff, "--top", "3"]
    )
    assert code == 0
    assert report["dims"] == [1, 0, 0, 0]


def test_hochschild_explicit_module_and_complex_coefficients(tmp_path):
    # the diagonal bimodule of QxQ written out as an explicit module over
    # the enveloping algebra, then the same thing as a one-term complex
    qxq = {"format": 1, "kind": "quiver", "vertices": 2, "arrows": []}
    labels = ["e0|e0", "e0|e1", "e1|e0", "e1|e1"]
    act = {
        "e0|e0": [[1, 0], [0, 0]],
        "e0|e1": [[0, 0], [0, 0]],
        "e1|e0": [[0, 0], [0, 0]],
        "e1|e1": [[0, 0], [0, 1]],
    }
    spec = write(tmp_path, "qxq.json", qxq)
    module_spec = {"format": 1, "dim": 2, "action": act}
    coeff = write(tmp_path, "diag.json", module_spec)
    code, report = run_to_report(
        tmp_path, ["hochschild", spec, "--coefficients", coeff, "--top", "2"]
    )
    assert code == 0
    assert report["dims"] == [2, 0, 0]
    coeff2 = write(
        tmp_path,
        "diag_complex.json",
        {"format": 1, "components": {"0": module_spec}, "differentials": {}},
    )
    code2, report2 = run_to_report(
        tmp_path, ["hochschild", spec, "--coefficients", coeff2, "--top", "2"]
    )
    assert code2 == 0
    assert report2["dims"] == [2, 0, 0]


def test_verify_command_identity_scenario(tmp_path):
    scenario = {
        "format": 1,
        "source": {"algebra": A2_SPEC},
        "target": {"algebra": A2_SPEC},
    }
    path = write(tmp_path, "scenario.json", scenario)
    code, report = run_to_report(tmp_path, ["verify", path])
    assert code == 0
    assert report["verdict"]
    assert report["unimodular"]
    assert report["ideal_stability"]["samples"] == 0


def test_verify_command_restricted_scenario(tmp_path):
    scenario = {
        "format": 1,
        "source": {
            "algebra": A2_SPEC,
            "idempotent": {"kind": "vertex-cut", "vertices": [0]},
        },
        "target": {"algebra": A2_SPEC},
    }
    path = write(tmp_path, "scenario.json", scenario)
    code, report = run_to_report(tmp_path, ["verify", path])
    assert code == 0
    assert report["verdict"]


def test_trace_command(tmp_path):
    scenario = {
        "format": 1,
        "source": {"algebra": A2_SPEC},
        "z": {"terms": [{"coefficient": 1, "bimodule": {"kind": "diagonal"}}]},
    }
    path = write(tmp_path, "scenario.json", scenario)
    code, report = run_to_report(tmp_path, ["trace", path])
    assert code == 0
    assert report["trace"] == 2


def test_intersect_command(tmp_path):
    scenario = {
        "format": 1,
        "source": {"algebra": A2_SPEC},
        "target": {"algebra": A2_SPEC},
        "x": {"terms": [{"coefficient": 1, "bimodule": {"kind": "simple", "index": 0}}]},
        "y": {"terms": [{"coefficient": "1/2", "bimodule": {"kind": "simple", "index": 1}}]},
    }
    path = write(tmp_path, "scenario.json", scenario)
    code, report = run_to_report(tmp_path, ["intersect", path])
    assert code == 0  # symmetry check passes


def test_malformed_json_exit_code(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    assert main(["euler-matrix", str(p)]) == 2


def test_bad_schema_exit_code(tmp_path):
    spec = write(tmp_path, "bad.json", {"kind": "quiver", "arrows": "nope"})
    assert main(["euler-matrix", spec]) == 2


def test_cyclic_quiver_exit_code(tmp_path):
    spec = write(tmp_path, "cyclic.json", CYCLIC_SPEC)
    assert main(["euler-matrix", spec]) == 3


def test_cap_exceeded_exit_code(tmp_path):
    spec = write(tmp_path, "dual.json", DUAL_NUMBERS_SPEC)
    assert main(["--cap", "4", "euler-matrix", spec]) == 4


def test_report_determinism(tmp_path):
    spec = write(tmp_path, "a2.json", A2_SPEC)
    out1 = tmp_path / "r1.json"
    out2 = tmp_path / "r2.json"
    assert main(["--seed", "11", "serre-check", spec, "--samples", "3", "--out", str(out1)]) == 0
    assert main(["--seed", "11", "serre-check", spec, "--samples", "3", "--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_corpus_command_small(tmp_path):
    code, report = run_to_report(
        tmp_path, ["--seed", "5", "corpus", "--samples", "1", "--bar-depth", "2"]
    )
    assert code == 0
    assert report["verdict"]
    sections = {row["section"] for row in report["table"]}
    assert {"euler", "euler-oracle", "smooth", "hochschild-vs-bar", "serre-duality", "verify"} <= sections
