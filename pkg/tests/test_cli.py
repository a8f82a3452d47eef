import json
import subprocess
import sys

import pytest

from lo_dynamics import analysis, barrier, geometry
from lo_dynamics.cli import (
    EXIT_BARRIER_FAILURE,
    EXIT_INADMISSIBLE,
    EXIT_OK,
    EXIT_USAGE,
    EXIT_WRONG_TYPE,
    RunConfig,
    barrier1_from_dict,
    barrier1_to_dict,
    barrier2_from_dict,
    barrier2_to_dict,
    crossing_report_from_dict,
    crossing_report_to_dict,
    density_from_dict,
    density_to_dict,
    dumps_json,
    family_from_dict,
    family_to_dict,
    fmt17,
    geometry_from_dict,
    geometry_to_dict,
    load_config_file,
    main,
)
from lo_dynamics import crossing_report


def run(args):
    return main(args)


def test_classify_single(capsys):
    assert run(["classify", "3", "2", "2"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "center(I)" in out
    assert "1.11803398875" in out


def test_classify_inadmissible_exit_code(capsys):
    assert run(["classify", "3", "2", "3"]) == EXIT_INADMISSIBLE


def test_classify_bad_domain_exit_code(capsys):
    assert run(["classify", "3", "4", "2"]) == EXIT_USAGE


def test_classify_sweep(capsys):
    assert run(["classify", "--sweep", "5", "4"]) == EXIT_OK
    lines = [l for l in capsys.readouterr().out.splitlines() if l and not l.startswith("  n")]
    assert len(lines) == 4


def test_classify_allow_inadmissible(capsys):
    assert run(["classify", "4", "2", "2", "--allow-inadmissible"]) == EXIT_OK
    assert "no" in capsys.readouterr().out


def test_orbit_type1_empty_zeros(tmp_path, capsys):
    assert run(["orbit", "3", "2", "2", "--out-dir", str(tmp_path)]) == EXIT_OK
    events = json.loads((tmp_path / "events.json").read_text())
    assert events["psi_zeros"] == []
    header = (tmp_path / "trajectory.csv").read_text().splitlines()[0]
    assert header == "t,phi,psi"
    header = (tmp_path / "profile.csv").read_text().splitlines()[0]
    assert header == "r,rho,rho_r,rho_rr,residual"


def test_orbit_type2_events(tmp_path):
    assert run(["orbit", "3", "2", "4", "--out-dir", str(tmp_path),
                "--target-phi", "1.3228757"]) == EXIT_OK
    events = json.loads((tmp_path / "events.json").read_text())
    assert len(events["psi_zeros"]) >= 10
    dirs = [z["direction"] for z in events["psi_zeros"]]
    assert all(a != b for a, b in zip(dirs, dirs[1:]))
    hits = events["phi_hits"]
    assert hits
    dils = [h["dilation"] for h in hits]
    assert dils == sorted(dils)


def test_orbit_svg(tmp_path):
    assert run(["orbit", "3", "2", "4", "--out-dir", str(tmp_path),
                "--formats", "svg"]) == EXIT_OK
    svg = (tmp_path / "phase.svg").read_text()
    assert svg.startswith("<svg") and "viewBox" in svg and "polyline" in svg
    assert (tmp_path / "profile.svg").exists()
    assert not (tmp_path / "trajectory.csv").exists()


def test_verify_type1(tmp_path, capsys):
    assert run(["verify", "3", "2", "2", "--out-dir", str(tmp_path)]) == EXIT_OK
    out = capsys.readouterr().out
    assert "PASS" in out
    payload = json.loads((tmp_path / "barrier.json").read_text())
    assert payload["case"] == 1
    assert payload["f0"] == pytest.approx(1.0 / 12.0, abs=1e-12)


def test_verify_544(tmp_path, capsys):
    assert run(["verify", "5", "4", "4", "--out-dir", str(tmp_path)]) == EXIT_OK
    payload = json.loads((tmp_path / "barrier.json").read_text())
    assert payload["f0"] == pytest.approx(0.0, abs=1e-12)
    assert payload["g0"] == pytest.approx(5.0 / 7.0, abs=1e-12)


def test_verify_type2(tmp_path, capsys):
    assert run(["verify", "3", "2", "4", "--out-dir", str(tmp_path),
                "--grid-points", "2000"]) == EXIT_OK
    payload = json.loads((tmp_path / "barrier.json").read_text())
    assert payload["case"] == 2
    assert payload["fs_min"] == pytest.approx(32.0 / 27.0, abs=1e-10)
    assert payload["cycle_margin"] < 0.0


def test_geometry_command(tmp_path, capsys):
    assert run(["geometry", "3", "2", "2", "--out-dir", str(tmp_path)]) == EXIT_OK
    payload = json.loads((tmp_path / "geometry.json").read_text())
    assert payload["cos_alpha"] == pytest.approx(1.0 / 9.0, abs=1e-12)
    assert payload["slope_w"] == pytest.approx(9.0, abs=1e-12)


def test_density_wrong_type_exit(tmp_path):
    assert run(["density", "3", "2", "2", "--out-dir", str(tmp_path)]) == EXIT_WRONG_TYPE


def test_density_radius_sweep_type1(tmp_path, capsys):
    assert run(["density", "3", "2", "2", "--out-dir", str(tmp_path),
                "--radii", "0.5,1.0,2.0", "--quad-panels", "2048"]) == EXIT_OK
    payload = json.loads((tmp_path / "density.json").read_text())
    assert len(payload["thetas"]) == 3
    assert payload["thetas"] == sorted(payload["thetas"])


def test_density_type2(tmp_path, capsys):
    assert run(["density", "3", "2", "4", "--out-dir", str(tmp_path),
                "--max-crossings", "12", "--quad-panels", "4096"]) == EXIT_OK
    payload = json.loads((tmp_path / "density.json").read_text())
    assert payload["strictly_below_cone"] is True
    assert payload["thetas"][0] < payload["theta_infinity"]


def test_maps_check(tmp_path, capsys):
    assert run(["maps-check", "--out-dir", str(tmp_path), "--samples", "20"]) == EXIT_OK
    payload = json.loads((tmp_path / "maps_check.json").read_text())
    assert payload["max_angle_sum_deviation"] < 1e-5
    assert payload["max_singular_value_deviation"] < 1e-6


def test_config_file_and_flag_precedence(tmp_path, capsys, monkeypatch):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# comment line\neps_start = 1e-5\nmax_crossings = 6\nformats = json\n")
    out_a = tmp_path / "a"
    monkeypatch.setenv("LO_DYNAMICS_CONFIG", str(cfg))
    assert run(["orbit", "3", "2", "4", "--out-dir", str(out_a)]) == EXIT_OK
    events = json.loads((out_a / "events.json").read_text())
    assert len(events["psi_zeros"]) == 6
    assert not (out_a / "trajectory.csv").exists()
    # flags win over the config file
    out_b = tmp_path / "b"
    assert run(["orbit", "3", "2", "4", "--out-dir", str(out_b),
                "--max-crossings", "4"]) == EXIT_OK
    events = json.loads((out_b / "events.json").read_text())
    assert len(events["psi_zeros"]) == 4


def test_config_parser_grammar(tmp_path):
    cfg = tmp_path / "x.cfg"
    cfg.write_text("rel_tol = 1e-9  # inline comment\n\nseed=7\n")
    pairs = load_config_file(cfg)
    assert pairs == {"rel_tol": "1e-9", "seed": "7"}
    bad = tmp_path / "bad.cfg"
    bad.write_text("not a pair\n")
    with pytest.raises(ValueError):
        load_config_file(bad)


def test_run_config_validation():
    cfg = RunConfig(formats=())
    with pytest.raises(ValueError):
        cfg.validate()
    cfg = RunConfig(formats=("bmp",))
    with pytest.raises(ValueError):
        cfg.validate()
    with pytest.raises(ValueError):
        RunConfig(rel_tol=0.0).validate()


def test_fmt17_round_trip():
    for x in [1.0 / 3.0, 1.3228756555322954, 1e-300, 7.0]:
        assert float(fmt17(x)) == x


def test_json_report_round_trips(p322, p324, traj324):
    rep = crossing_report(traj324)
    assert crossing_report_from_dict(json.loads(dumps_json(crossing_report_to_dict(rep)))) == rep

    b1 = barrier.case1_check(p322, grid_points=200)
    assert barrier1_from_dict(json.loads(dumps_json(barrier1_to_dict(b1)))) == b1

    b2 = barrier.case2_check(p324, grid_points=200, cycle_grid=(40, 40))
    assert barrier2_from_dict(json.loads(dumps_json(barrier2_to_dict(b2)))) == b2

    geo = geometry.geometry_report(p322)
    assert geometry_from_dict(json.loads(dumps_json(geometry_to_dict(geo)))) == geo

    fam = analysis.dirichlet_solutions(traj324, p324.phi0)
    assert family_from_dict(json.loads(dumps_json(family_to_dict(fam)))) == fam

    den = analysis.density_report(traj324, p324, n_panels=1024)
    assert density_from_dict(json.loads(dumps_json(density_to_dict(den)))) == den


def test_determinism_same_bytes(tmp_path):
    out_a = tmp_path / "a"
    out_b = tmp_path / "b"
    for out in (out_a, out_b):
        assert run(["orbit", "3", "2", "4", "--out-dir", str(out),
                    "--formats", "json,csv,svg"]) == EXIT_OK
    for name in ["events.json", "trajectory.csv", "profile.csv", "phase.svg"]:
        assert (out_a / name).read_bytes() == (out_b / name).read_bytes()


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "lo_dynamics", "classify", "3", "2", "2"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert "center(I)" in proc.stdout


def test_usage_exit_code():
    proc = subprocess.run(
        [sys.executable, "-m", "lo_dynamics", "no-such-command"],
        capture_output=True, text=True,
    )
    assert proc.returncode == EXIT_USAGE
