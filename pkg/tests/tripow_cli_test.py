from tripow import evolution
from tripow.__main__ import main
from tripow.tripow import __version__

import numpy as np
import pandas as pd
import pytest
import json
import os


def run(args, capsys):
    main(args)
    out = capsys.readouterr().out
    return json.loads(out)

# end of run()


def exit_code(args):
    with pytest.raises(SystemExit) as e:
        main(args)
    return e.value.code

# end of exit_code()


def test_usage_errors():

    assert exit_code([]) == 2
    assert exit_code(["bogus"]) == 2
    assert exit_code(["classify", "--n", "4"]) == 2
    assert exit_code(["classify", "--h", "-1"]) == 2
    assert exit_code(["scan", "--a2-min", "0.1"]) == 2
    assert exit_code(["scan", "--a2-min", "0.5", "--a2-max", "0.1", "--a2-step", "0.1"]) == 2
    assert exit_code(["evolve", "--lambda", "2.0"]) == 2
    assert exit_code(["evolve", "--gaussian", "--n", "3"]) == 2
    assert exit_code(["nehari", "--trials", "2"]) == 2

# end of test_usage_errors()


def test_version():

    assert exit_code(["--version"]) == 0

# end of test_version()


def test_classify_report(capsys):

    report = run(["classify", "--a2", "-1"], capsys)
    assert report["version"] == __version__
    assert report["config"]["command"] == "classify"
    assert report["case"] == "DDF"
    assert report["exists"] is True
    assert report["roots"]["c"] == pytest.approx(2.0593262, abs=1e-6)
    assert report["normalized"]["a2"] == -1.0
    assert "radial_conditions" not in report

    report = run(["classify", "--a1", "-1", "--a2", "-1", "--a3", "-1"], capsys)
    assert report["case"] == "DDD"
    assert report["exists"] is False
    # beta is infinite
    assert report["roots"]["beta"] == "inf"

# end of test_classify_report()


def test_classify_radial(capsys, tmp_path):

    outdir = str(tmp_path / "classify")
    report = run(["classify", "--a2", "-1", "--n", "3", "-o", outdir], capsys)
    assert report["exists"] is True
    assert report["radial_conditions"]["failed"] == []
    assert report["thresholds"]["uniqueness"] == pytest.approx(1.0 / 6.0)
    assert "uniqueness" in report
    assert os.path.isfile(os.path.join(outdir, "classify.json"))

# end of test_classify_radial()


def test_config_file(capsys, tmp_path):

    config = tmp_path / "run.conf"
    config.write_text("# DDF in two dimensions\na2 = -1\nn = 2\n")
    report = run(["classify", "--config", str(config)], capsys)
    assert report["config"]["a2"] == -1.0
    assert report["config"]["n"] == 2

    # flags win over the file
    report = run(["classify", "--config", str(config), "--a2", "0.5"], capsys)
    assert report["config"]["a2"] == 0.5
    assert report["case"] == "DFF"

    bad = tmp_path / "bad.conf"
    bad.write_text("colour = blue\n")
    assert exit_code(["classify", "--config", str(bad)]) == 2
    assert exit_code(["classify", "--config", str(tmp_path / "missing.conf")]) == 2

# end of test_config_file()


def test_profile_command(capsys, tmp_path):

    outdir = str(tmp_path / "profile")
    report = run(["profile", "--h", "0.05", "-o", outdir], capsys)
    assert report["case"] == "boundary"
    assert report["peak"] == pytest.approx(1.2909944, abs=1e-7)
    assert report["files"] == ["profile.csv", "profile.json"]

    table = pd.read_csv(os.path.join(outdir, "profile.csv"))
    assert list(table.columns) == ["r", "phi"]
    assert table["phi"].iloc[0] == pytest.approx(1.2909944, abs=1e-7)

    with open(os.path.join(outdir, "profile.json")) as infile:
        full = json.load(infile)
    assert full["h1"]["finite"] is True
    assert full["functionals"]["d2S"] < 0

# end of test_profile_command()


def test_profile_nonexistence(tmp_path):

    outdir = str(tmp_path / "dfd")
    assert exit_code(["profile", "--a2", "1", "--a3", "-1", "-o", outdir]) == 3

# end of test_profile_nonexistence()


def test_scan_command(capsys, tmp_path):

    outdir = str(tmp_path / "scan")
    report = run([
        "scan", "--a2-min", "0.2", "--a2-max", "0.6", "--a2-step", "0.2",
        "--h", "0.05", "-j", "2", "-o", outdir
    ], capsys)
    assert report["rows"] == 3
    assert report["scored"] == 3
    assert report["all_negative"] is True
    assert report["dff_1d_bound"] == pytest.approx(0.8709, abs=1e-4)

    table = pd.read_csv(os.path.join(outdir, "scan.csv"))
    assert list(table["a2"]) == pytest.approx([0.2, 0.4, 0.6])
    assert (table["sign"] == "negative").all()
    assert table["below_dff_bound"].all()

# end of test_scan_command()


def test_evolve_gaussian(capsys, tmp_path):

    outdir = str(tmp_path / "evolve")
    report = run([
        "evolve", "--gaussian", "--a1", "0", "--a2", "0", "--a3", "0",
        "--t-end", "0.5", "--dt", "0.01", "--points", "256", "--box", "16",
        "--save-every", "5", "-o", outdir
    ], capsys)
    assert report["verdict"] == "gaussian run"
    assert report["free_flow_variance_err"] < 1e-8
    assert report["mass_drift"] < 1e-12
    assert report["files"] == ["trace.csv", "evolve.json"]

    trace = pd.read_csv(os.path.join(outdir, "trace.csv"))
    assert len(trace) == 11
    assert trace["tube_dist"].isna().all()

# end of test_evolve_gaussian()


def test_nehari_command(capsys, tmp_path):

    outdir = str(tmp_path / "nehari")
    report = run([
        "nehari", "--a2", "-1", "--h", "0.05", "--trials", "8", "-j", "1",
        "-o", outdir
    ], capsys)
    assert report["trials"] == 8
    assert report["case"] == "DDF"
    assert report["min_J_over_S_phi"] <= 1.0 + 1e-5
    assert len(pd.read_csv(os.path.join(outdir, "trials.csv"))) == 8

    assert exit_code(["nehari", "--a1", "-2", "-o", outdir]) == 2

# end of test_nehari_command()


def test_evolve_abort_dumps_last_state(monkeypatch, tmp_path):

    def blow_up(values, linear, params, dt):
        return np.full(values.shape, np.nan + 0j)

    monkeypatch.setattr(evolution, "_strang", blow_up)
    outdir = str(tmp_path / "abort")
    assert exit_code([
        "evolve", "--gaussian", "--t-end", "0.1", "--dt", "0.01",
        "--points", "64", "--box", "8", "-o", outdir
    ]) == 4

    state = pd.read_csv(os.path.join(outdir, "last_state.csv"))
    assert list(state.columns) == ["x", "re", "im"]
    assert len(state) == 64
    assert state["x"].iloc[0] == pytest.approx(-8.0)
    # the Gaussian initial data is the last finite state
    assert state["re"].max() == pytest.approx(1.0, abs=1e-2)

# end of test_evolve_abort_dumps_last_state()


def test_radial_dfd_is_nonexistent(tmp_path):

    outdir = str(tmp_path / "dfd3")
    assert exit_code([
        "profile", "--a2", "2.1", "--a3", "-1", "--n", "3", "-o", outdir
    ]) == 3

# end of test_radial_dfd_is_nonexistent()
