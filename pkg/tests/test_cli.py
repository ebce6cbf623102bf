import json

from walgebra import VIRASORO, W22, inner_biderivation, l_to_h_map, map_to_json
from walgebra.cli import main
from walgebra.solver import report_json


def write_map(path, m):
    path.write_text(json.dumps(map_to_json(m)), encoding="utf-8")


def test_classify_writes_report(tmp_path, capsys):
    out = tmp_path / "report.json"
    code = main(
        [
            "classify",
            "--algebra", "vir",
            "--problem", "biderivation",
            "--window", "3",
            "--value-radius", "6",
            "--core", "1",
            "--output", str(out),
        ]
    )
    assert code == 0
    report = json.loads(out.read_text(encoding="utf-8"))
    assert report["core_dimension"] == 1
    assert report["residual_check"] == "pass"
    assert capsys.readouterr().out == ""  # file output, no stdout dump


def test_classify_summary_to_stdout(capsys):
    code = main(
        [
            "classify",
            "--algebra", "witt",
            "--problem", "symmetric-biderivation",
            "--window", "3",
            "--core", "1",
            "--summary",
        ]
    )
    assert code == 0
    out = capsys.readouterr().out
    assert "core dimension: 0" in out
    assert "residual check: pass" in out


def test_classify_reports_are_byte_identical(tmp_path):
    outs = []
    for name in ("a.json", "b.json"):
        out = tmp_path / name
        assert (
            main(
                [
                    "classify",
                    "--algebra", "w22",
                    "--problem", "commuting",
                    "--window", "3",
                    "--core", "1",
                    "--output", str(out),
                ]
            )
            == 0
        )
        report = json.loads(out.read_text(encoding="utf-8"))
        outs.append(report_json(report, strip_timings=True))
    assert outs[0] == outs[1]


def test_classify_usage_errors(capsys):
    assert main(["classify", "--algebra", "vir", "--problem", "biderivation",
                 "--window", "2", "--core", "5"]) == 1
    assert main(["classify", "--algebra", "squark", "--problem", "biderivation"]) == 1
    capsys.readouterr()


def test_verify_map_exit_codes(tmp_path, capsys):
    good = tmp_path / "inner.json"
    write_map(good, inner_biderivation(1, VIRASORO, 2))
    assert main(["verify-map", "--input", str(good), "--problem", "biderivation"]) == 0

    bad = tmp_path / "omega.json"
    write_map(bad, l_to_h_map(W22, 3))
    out = tmp_path / "verify.json"
    code = main(
        ["verify-map", "--input", str(bad), "--problem", "derivation",
         "--output", str(out), "--summary"]
    )
    assert code == 2
    report = json.loads(out.read_text(encoding="utf-8"))
    assert report["status"] == "fail"
    assert "fail" in capsys.readouterr().out

    broken = tmp_path / "broken.json"
    broken.write_text("{not json", encoding="utf-8")
    assert main(["verify-map", "--input", str(broken), "--problem", "derivation"]) == 1

    missing_entries = tmp_path / "gappy.json"
    blob = map_to_json(inner_biderivation(1, VIRASORO, 2))
    blob["entries"] = blob["entries"][:-1]
    missing_entries.write_text(json.dumps(blob), encoding="utf-8")
    assert main(["verify-map", "--input", str(missing_entries), "--problem", "biderivation"]) == 1
    capsys.readouterr()


def test_emitted_core_basis_reverifies(tmp_path):
    out = tmp_path / "report.json"
    assert (
        main(
            [
                "classify",
                "--algebra", "w22",
                "--problem", "biderivation",
                "--window", "3",
                "--core", "1",
                "--output", str(out),
            ]
        )
        == 0
    )
    report = json.loads(out.read_text(encoding="utf-8"))
    assert report["core_dimension"] == 2
    for i, blob in enumerate(report["core_basis"]):
        map_file = tmp_path / f"core{i}.json"
        map_file.write_text(json.dumps(blob), encoding="utf-8")
        assert main(["verify-map", "--input", str(map_file), "--problem", "biderivation"]) == 0


def test_center_command(tmp_path, capsys):
    out = tmp_path / "center.json"
    assert main(["center", "--algebra", "vir", "--window", "4", "--output", str(out),
                 "--summary"]) == 0
    report = json.loads(out.read_text(encoding="utf-8"))
    assert report["core_dimension"] == 1
    assert report["core_basis_text"] == ["1·c"]
    assert "core dimension: 1" in capsys.readouterr().out
    assert main(["center", "--algebra", "witt", "--window", "4"]) == 0
    capsys.readouterr()


def test_solver_mismatch_maps_to_exit_2(monkeypatch, capsys):
    import walgebra.service.app as service_app
    from walgebra.errors import NotInClassifiedFamily

    def boom(req):
        raise NotInClassifiedFamily("window too small to stabilize")

    monkeypatch.setattr(service_app, "run_classify", boom)
    code = main(["classify", "--algebra", "vir", "--problem", "biderivation"])
    assert code == 2
    assert "solver" in capsys.readouterr().err


def test_reports_identical_across_processes(tmp_path):
    # separate interpreters with different hash seeds, same bytes
    import os
    import subprocess
    import sys

    blobs = []
    for seed in ("1", "4242"):
        out = tmp_path / f"seed{seed}.json"
        env = dict(os.environ, PYTHONHASHSEED=seed)
        subprocess.run(
            [sys.executable, "-m", "walgebra.cli", "classify", "--algebra", "w22",
             "--problem", "biderivation", "--window", "3", "--core", "1",
             "--output", str(out)],
            check=True,
            env=env,
        )
        blobs.append(report_json(json.loads(out.read_text(encoding="utf-8")), strip_timings=True))
    assert blobs[0] == blobs[1]


def test_console_entry_point(tmp_path):
    import subprocess
    import sys

    out = tmp_path / "r.json"
    result = subprocess.run(
        [sys.executable, "-m", "walgebra.cli", "center", "--algebra", "w22",
         "--window", "3", "--output", str(out)],
        capture_output=True,
        text=True,
    )
    assert result.returncode == 0
    assert json.loads(out.read_text(encoding="utf-8"))["core_dimension"] == 1


def test_help_does_not_crash(capsys):
    assert main([]) == 1
    capsys.readouterr()
