import numpy as np
import pytest

from twopointwave import (
    REFERENCE_CONFIG,
    check_sandwich,
    derive_constants,
    parse_scenario,
    read_energy_csv,
    run_scenario,
)
from twopointwave.cli import main
from twopointwave.errors import ConfigError
from twopointwave.scenario import convergence_study, sweep_scenario

SMALL_RUN = """\
h0 = 1.0
h1 = 0.5
lam0 = 1.0
lam1 = 1.0
lt0 = 0.1
lt1 = 0.1
ht0 = 0.01
ht1 = 0.01
K = 1.0
lam = 1.0
n_nodes = 17
T = 1.0
dt = 0.01
checks = sandwich
"""

MMS_BASE = """\
h0 = 1.0
h1 = 0.5
lam0 = 1.0
lam1 = 1.0
lt0 = 0.1
lt1 = 0.1
ht0 = 0.01
ht1 = 0.01
K = 1.0
lam = 1.0
n_nodes = 9
T = 1.0
dt = 0.02
forcing = manufactured
manufactured = decaying_cosine
"""


def write_config(tmp_path, text, name="scenario.cfg"):
    path = tmp_path / name
    path.write_text(text)
    return path


class TestParse:
    def test_reference_config_parses(self, tmp_path):
        scn = parse_scenario(write_config(tmp_path, REFERENCE_CONFIG))
        assert scn.n_nodes == 65
        assert scn.T == 10.0
        assert scn.dt == 1e-3
        assert scn.checks == ("sandwich", "differential", "decay_fit")
        assert scn.params.h1 == 0.5

    def test_comments_and_blank_lines_ignored(self, tmp_path):
        text = "# leading comment\n\n" + SMALL_RUN + "seed = 3   # trailing\n"
        scn = parse_scenario(write_config(tmp_path, text))
        assert scn.seed == 3

    def test_missing_required_key(self, tmp_path):
        broken = SMALL_RUN.replace("K = 1.0\n", "")
        with pytest.raises(ConfigError, match="K"):
            parse_scenario(write_config(tmp_path, broken))

    def test_unknown_key_rejected(self, tmp_path):
        with pytest.raises(ConfigError, match="unknown keys"):
            parse_scenario(write_config(tmp_path, SMALL_RUN + "typo_key = 1\n"))

    def test_bad_number_rejected(self, tmp_path):
        with pytest.raises(ConfigError, match="not a number"):
            parse_scenario(write_config(tmp_path, SMALL_RUN.replace("T = 1.0", "T = fast")))

    def test_duplicate_key_rejected(self, tmp_path):
        with pytest.raises(ConfigError, match="duplicate"):
            parse_scenario(write_config(tmp_path, SMALL_RUN + "h0 = 2.0\n"))

    def test_unknown_check_rejected(self, tmp_path):
        with pytest.raises(ConfigError, match="unknown check"):
            parse_scenario(write_config(tmp_path, SMALL_RUN.replace(
                "checks = sandwich", "checks = sandwich, entropy")))

    def test_ladder_requires_manufactured(self, tmp_path):
        with pytest.raises(ConfigError, match="ladder"):
            parse_scenario(write_config(tmp_path, SMALL_RUN.replace(
                "checks = sandwich", "checks = ladder")))


class TestRunScenario:
    def test_small_run_passes_and_writes_artifacts(self, tmp_path):
        config = write_config(tmp_path, SMALL_RUN)
        out = tmp_path / "out"
        assert run_scenario(config, outdir=out) == 0
        assert (out / "energy.csv").exists()
        assert (out / "report.txt").exists()
        report = (out / "report.txt").read_text()
        assert "overall: PASS" in report
        # re-running is deterministic: same exit code, identical artifacts
        first = (out / "energy.csv").read_text()
        assert run_scenario(config, outdir=out) == 0
        assert (out / "energy.csv").read_text() == first

    def test_energy_csv_round_trip_reproduces_counts(self, tmp_path):
        config = write_config(tmp_path, SMALL_RUN)
        out = tmp_path / "out"
        assert run_scenario(config, outdir=out) == 0
        scn = parse_scenario(config)
        dc = derive_constants(scn.params)
        records = read_energy_csv(out / "energy.csv")
        report = check_sandwich(records, dc)
        assert report.violations == 0
        # full-precision floats survive the round trip exactly
        assert records[1].t == 0.01
        assert len(records) == 101

    def test_config_error_exits_2(self, tmp_path):
        config = write_config(tmp_path, "h0 = broken\n")
        assert run_scenario(config, outdir=tmp_path / "o") == 2

    def test_inadmissible_decay_checks_exit_3(self, tmp_path, capsys):
        bad = SMALL_RUN.replace("lt0 = 0.1", "lt0 = 1.0").replace("lt1 = 0.1", "lt1 = 1.0")
        config = write_config(tmp_path, bad)
        assert run_scenario(config, outdir=tmp_path / "o") == 3
        assert "|lt0 + lt1| < 2*sqrt(lam0*lam1)" in capsys.readouterr().out

    def test_inadmissible_without_decay_checks_runs(self, tmp_path):
        # conservation-style config: no interior/boundary damping at all
        text = SMALL_RUN.replace("lam0 = 1.0", "lam0 = 0.0") \
                        .replace("lam1 = 1.0", "lam1 = 0.0") \
                        .replace("K = 1.0", "K = 0.0") \
                        .replace("lam = 1.0", "lam = 0.0") \
                        .replace("checks = sandwich\n", "")
        config = write_config(tmp_path, text)
        assert run_scenario(config, outdir=tmp_path / "o") == 0

    def test_growing_solution_fails_decay_fit_with_exit_1(self, tmp_path):
        text = MMS_BASE.replace("manufactured = decaying_cosine",
                                "manufactured = polynomial")
        text += "checks = decay_fit\nn_nodes = 17\ndt = 0.01\nT = 4.0\n"
        text = text.replace("n_nodes = 9\n", "").replace("dt = 0.02\n", "") \
                   .replace("T = 1.0\n", "")
        config = write_config(tmp_path, text)
        assert run_scenario(config, outdir=tmp_path / "o") == 1

    def test_solution_snapshots_on_request(self, tmp_path):
        config = write_config(tmp_path, SMALL_RUN + "write_solution = true\n")
        out = tmp_path / "out"
        assert run_scenario(config, outdir=out) == 0
        header = (out / "solution.csv").read_text().splitlines()[0]
        assert header.split(",")[:2] == ["t", "u_0"]


class TestConvergence:
    def test_orders_on_manufactured_cosine(self, tmp_path):
        scn = parse_scenario(write_config(tmp_path, MMS_BASE))
        rows = convergence_study(scn, levels=3)
        assert rows[-1].l2_order >= 1.8
        assert rows[-1].h1_order >= 0.9

    def test_affine_form_is_time_error_limited(self, tmp_path):
        # hats represent affine functions exactly; halving dt quarters the error
        scn = parse_scenario(write_config(
            tmp_path, MMS_BASE.replace("decaying_cosine", "decaying_affine")))
        rows = convergence_study(scn, levels=3)
        assert rows[-1].l2_order == pytest.approx(2.0, abs=0.2)

    def test_zero_solution_reports_unusable_orders(self, tmp_path):
        scn = parse_scenario(write_config(
            tmp_path, MMS_BASE.replace("decaying_cosine", "zero")))
        rows = convergence_study(scn, levels=3)
        for row in rows:
            assert row.l2_error == 0.0
            assert row.h1_error == 0.0
        assert np.isnan(rows[-1].l2_order)
        assert np.isnan(rows[-1].h1_order)

    def test_needs_manufactured_scenario(self, tmp_path):
        scn = parse_scenario(write_config(tmp_path, SMALL_RUN))
        with pytest.raises(ConfigError):
            convergence_study(scn, levels=3)

    def test_needs_three_levels(self, tmp_path):
        scn = parse_scenario(write_config(tmp_path, MMS_BASE))
        with pytest.raises(ConfigError):
            convergence_study(scn, levels=2)


class TestCli:
    def test_run_subcommand(self, tmp_path):
        config = write_config(tmp_path, SMALL_RUN)
        assert main(["run", str(config), "--outdir", str(tmp_path / "o")]) == 0

    def test_converge_subcommand_writes_csv(self, tmp_path):
        config = write_config(tmp_path, MMS_BASE)
        out = tmp_path / "conv"
        assert main(["converge", str(config), "--levels", "3",
                     "--outdir", str(out)]) == 0
        lines = (out / "convergence.csv").read_text().splitlines()
        assert lines[0].startswith("n_nodes,dt,L2_error,H1_error")
        assert len(lines) == 4

    def test_props_subcommand(self):
        assert main(["props", "--seed", "11", "--samples", "400"]) == 0

    def test_sweep_subcommand(self, tmp_path):
        config = write_config(tmp_path, SMALL_RUN)
        out = tmp_path / "sweep"
        code = sweep_scenario(config, "ht0", [0.0, 0.02], outdir=out)
        assert code == 0
        assert (out / "ht0_0" / "energy.csv").exists()
        assert (out / "ht0_0.02" / "energy.csv").exists()

    def test_outdir_env_override(self, tmp_path, monkeypatch):
        config = write_config(tmp_path, SMALL_RUN)
        target = tmp_path / "env_out"
        monkeypatch.setenv("TWOPOINTWAVE_OUTDIR", str(target))
        monkeypatch.chdir(tmp_path)
        assert main(["run", str(config)]) == 0
        assert (target / "energy.csv").exists()


def test_reference_scenario_end_to_end(tmp_path):
    """The shipped default: exit 0 and a fitted rate beating 0.95*delta."""
    config = write_config(tmp_path, REFERENCE_CONFIG)
    out = tmp_path / "ref_out"
    assert run_scenario(config, outdir=out) == 0
    report = (out / "report.txt").read_text()
    assert "decay_fit: PASS" in report
    scn = parse_scenario(config)
    dc = derive_constants(scn.params)
    fitted = float(report.split("fitted_rate=")[1].split()[0])
    assert fitted >= 0.95 * dc.delta
