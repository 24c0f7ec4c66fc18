import json

from flatlyap.cli import main

from conftest import FIG1, WOLLMILCHSAU


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_stratum_command(capsys):
    code, out, _ = run(capsys, "stratum", FIG1, "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["stratum"] == [2]
    assert payload["genus"] == 2
    assert payload["component"] == "hyperelliptic"


def test_lyap_command(capsys):
    code, out, _ = run(capsys, "lyap", FIG1, "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["L"] == "4/3"
    assert payload["s"] == "10/1"
    assert payload["orbit_size"] == 18


def test_lyap_text_output(capsys):
    code, out, _ = run(capsys, "lyap", FIG1)
    assert code == 0
    assert "L: 4/3" in out


def test_lyap_from_json_file(tmp_path, capsys):
    path = tmp_path / "surface.json"
    path.write_text(
        json.dumps({"degree": 5, "right": [2, 3, 4, 1, 5], "up": [5, 2, 3, 4, 1]})
    )
    code, out, _ = run(capsys, "lyap", str(path), "--format", "json")
    assert code == 0
    assert json.loads(out)["L"] == "4/3"


def test_cylinders_command(capsys):
    code, out, _ = run(capsys, "cylinders", FIG1, "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["cylinders"] == [
        {"width": 4, "height": 1},
        {"width": 1, "height": 1},
    ]
    assert payload["sum_h_over_w"] == "5/4"


def test_classify_command(capsys):
    code, out, _ = run(capsys, "classify", WOLLMILCHSAU, "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["component"] == "connected"
    assert payload["involution"] is None


def test_orbit_command(capsys):
    code, out, _ = run(capsys, "orbit", FIG1, "--format", "json", "--list")
    assert code == 0
    assert json.loads(out)["orbit_size"] == 18


def test_slope_solve_named(capsys):
    code, out, _ = run(
        capsys, "slope-solve", "--stratum", "4", "--divisor", "H", "--format", "json"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["s"] == "9/1"
    assert payload["L"] == "8/5"


def test_slope_solve_logan(capsys):
    code, out, _ = run(
        capsys,
        "slope-solve",
        "--stratum", "2,1,1",
        "--marks", "1,2",
        "--divisor", "logan",
        "--weights", "1,2",
        "--format", "json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["s"] == "98/11" and payload["L"] == "11/6"


def test_slope_solve_spin(capsys):
    code, out, _ = run(
        capsys, "slope-solve", "--stratum", "2,2", "--divisor", "spin",
        "--format", "json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["s"] == "44/5" and payload["L"] == "5/3"


def test_slope_solve_explicit_coefficients(capsys):
    code, out, _ = run(
        capsys,
        "slope-solve",
        "--stratum", "6",
        "--marks", "1",
        "--lambda", "30",
        "--omega", "60",
        "--delta0", "-4",
        "--format", "json",
    )
    assert code == 0
    assert json.loads(out)["s"] == "60/7"


def test_slope_solve_bound(capsys):
    code, out, _ = run(
        capsys,
        "slope-solve",
        "--stratum", "4,1,1",
        "--marks", "1,2",
        "--divisor", "logan",
        "--weights", "2,2",
        "--bound",
        "--format", "json",
    )
    assert code == 0
    assert json.loads(out)["L_max"] == "21/10"


def test_hyp_locus_command(capsys):
    code, out, _ = run(
        capsys, "hyp-locus", "--signature", "2,2,-1^8", "--format", "json"
    )
    assert code == 0
    assert json.loads(out)["L"] == "2/1"


def test_double_cover_command(capsys):
    code, out, _ = run(
        capsys, "double-cover", "--signature", "3,2,-1^9", "--format", "json"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["stratum"] == [4, 1, 1] and payload["genus"] == 4


def test_enumerate_command(capsys):
    code, out, _ = run(
        capsys, "enumerate", "--stratum", "2", "--dmax", "4", "--format", "json"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload and payload[0]["L"] == "4/3"


def test_enumerate_csv(capsys):
    code, out, _ = run(capsys, "enumerate", "--stratum", "2", "--dmax", "4")
    assert code == 0
    assert out.splitlines()[0] == "stratum,component,degree,orbit_size,L,c,s,witness"


def test_input_error_exit_code(capsys):
    code, _, err = run(capsys, "stratum", "r=(1 2); u=(1 2; d=x")
    assert code == 2
    assert "error" in err


def test_disconnected_exit_code(capsys):
    code, _, err = run(capsys, "lyap", "r=(); u=(); d=2")
    assert code == 2


def test_orbit_cap_exit_code(capsys):
    code, _, err = run(capsys, "lyap", FIG1, "--max-orbit", "2")
    assert code == 3
    assert "cap" in err


def test_cache_cli_round_trip(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("FLATLYAP_CACHE_DIR", str(tmp_path))
    code, out1, _ = run(capsys, "lyap", FIG1, "--format", "json")
    assert code == 0
    assert (tmp_path / "orbits.cache").exists()
    code, out2, _ = run(capsys, "lyap", FIG1, "--format", "json")
    assert code == 0
    assert json.loads(out1) == json.loads(out2)


def test_verify_tables_quick(capsys):
    code, out, _ = run(capsys, "verify-tables", "3", "--skip-enumeration")
    assert code == 0
    assert "checks passed" in out
    assert "MISMATCH" not in out


def test_verify_tables_detects_corruption(tmp_path, capsys):
    import importlib.resources

    good = (
        importlib.resources.files("flatlyap") / "data" / "golden.txt"
    ).read_text()
    bad = good.replace(
        "g3/slope/4-odd          slope g=3 stratum=4 divisor=H s=9/1 L=8/5",
        "g3/slope/4-odd          slope g=3 stratum=4 divisor=H s=9/1 L=7/5",
    )
    assert bad != good
    path = tmp_path / "golden.txt"
    path.write_text(bad)
    code, out, _ = run(
        capsys, "verify-tables", "3", "--skip-enumeration", "--golden", str(path)
    )
    assert code == 1
    diff_lines = [l for l in out.splitlines() if l.startswith("MISMATCH")]
    assert len(diff_lines) == 1
    assert "g3/slope/4-odd" in diff_lines[0]


def test_jobs_validation(capsys):
    code, _, err = run(capsys, "lyap", FIG1, "--jobs", "0")
    assert code == 2
