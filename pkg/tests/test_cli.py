import io
import math
import subprocess
import sys

import numpy as np
import pytest

from leasesec.cli import CSV_HEADER, emit_csv, main, parse_config, read_csv_rows
from leasesec.harness import ConfigError, SweepRow


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "leasesec", *args],
        capture_output=True,
        text=True,
        timeout=600,
    )


def random_rows(rng, n=12):
    rows = []
    for _ in range(n):
        rows.append(
            SweepRow(
                decoder=rng.choice(["SD", "JD"]),
                snr_db=float(rng.uniform(-5, 40)),
                nt=int(rng.integers(2, 11)),
                alpha=float(rng.uniform(0, 1)),
                trials=int(rng.integers(1, 5000)),
                mean_secrecy_bits=float(rng.standard_normal()),
                ci95_halfwidth=float(abs(rng.standard_normal())),
                mean_secondary_bits=float(rng.standard_normal() * 3),
                mean_no_leasing_bits=float(rng.standard_normal()),
                mean_peaceful_bits=float(rng.standard_normal() * 7),
                degenerate_resamples=int(rng.integers(0, 3)),
            )
        )
    return rows


class TestParseConfig:
    def test_list_values(self, tmp_path):
        cfg_file = tmp_path / "sweep.cfg"
        cfg_file.write_text(
            "# experiment record\n"
            "alpha = 0, 0.5, 0.8\n"
            "snr_db = 0, 10\n"
            "nt = 2\n"
            "trials = 7\n"
            "seed = 3\n"
        )
        cfg = parse_config(str(cfg_file), {})
        assert cfg.alpha_list == (0.0, 0.5, 0.8)
        assert cfg.snr_db_list == (0.0, 10.0)
        assert cfg.nt_list == (2,)
        assert cfg.trials == 7
        assert cfg.master_seed == 3

    def test_repeated_keys_extend(self, tmp_path):
        cfg_file = tmp_path / "sweep.cfg"
        cfg_file.write_text("alpha = 0\nalpha = 0.5\n")
        assert parse_config(str(cfg_file), {}).alpha_list == (0.0, 0.5)

    def test_alpha_out_of_range(self, tmp_path):
        cfg_file = tmp_path / "sweep.cfg"
        cfg_file.write_text("alpha = 1.5\n")
        with pytest.raises(ConfigError) as err:
            parse_config(str(cfg_file), {})
        assert "[0, 1]" in str(err.value)
        assert "1.5" in str(err.value)

    def test_unknown_key_names_line(self, tmp_path):
        cfg_file = tmp_path / "sweep.cfg"
        cfg_file.write_text("trials = 5\nbogus = 1\n")
        with pytest.raises(ConfigError) as err:
            parse_config(str(cfg_file), {})
        assert "bogus" in str(err.value)
        assert ":2" in str(err.value)

    def test_missing_file(self):
        with pytest.raises(ConfigError):
            parse_config("/no/such/file.cfg", {})

    def test_flags_override_file(self, tmp_path):
        cfg_file = tmp_path / "sweep.cfg"
        cfg_file.write_text("trials = 5\nalpha = 0.5\n")
        cfg = parse_config(str(cfg_file), {"trials": 9, "alpha": [0.0]})
        assert cfg.trials == 9
        assert cfg.alpha_list == (0.0,)

    def test_empty_file_with_flags(self, tmp_path):
        cfg_file = tmp_path / "empty.cfg"
        cfg_file.write_text("")
        cfg = parse_config(
            str(cfg_file),
            {"decoder": "SD", "snr_db": [10.0], "nt": [2], "alpha": [0.0],
             "trials": 3, "seed": 1, "resolution": 30},
        )
        assert cfg.decoder == "SD"
        assert cfg.trials == 3


class TestCsv:
    def test_zero_rows_header_only(self):
        buf = io.StringIO()
        emit_csv([], buf)
        assert buf.getvalue() == CSV_HEADER + "\n"

    def test_round_trip(self):
        rng = np.random.default_rng(2024)
        rows = random_rows(rng)
        buf = io.StringIO()
        emit_csv(rows, buf)
        buf.seek(0)
        assert read_csv_rows(buf) == rows

    def test_emit_is_stable(self):
        rng = np.random.default_rng(9)
        rows = random_rows(rng, n=5)
        a, b = io.StringIO(), io.StringIO()
        emit_csv(rows, a)
        emit_csv(rows, b)
        assert a.getvalue() == b.getvalue()


class TestCommands:
    def test_single_deterministic_dump(self):
        a = run_cli("single", "--seed", "42", "--nt", "2", "--snr-db", "10",
                    "--alpha", "0.5")
        b = run_cli("single", "--seed", "42", "--nt", "2", "--snr-db", "10",
                    "--alpha", "0.5")
        assert a.returncode == 0
        assert a.stdout == b.stdout

    def test_single_alpha_one_mrt(self):
        out = run_cli("single", "--seed", "42", "--nt", "2", "--snr-db", "10",
                      "--alpha", "1").stdout
        fields = dict()
        h_ss = None
        w = None
        for line in out.splitlines():
            line = line.strip()
            if line.startswith("h_ss ="):
                h_ss = np.array(eval(line.partition("=")[2]))
            if line.startswith("w =") and w is None:
                w = np.array(eval(line.partition("=")[2]))
        assert h_ss is not None and w is not None
        cos = abs(np.vdot(w, h_ss)) / (np.linalg.norm(w) * np.linalg.norm(h_ss))
        assert cos == pytest.approx(1.0, abs=1e-6)

    def test_single_dump_chain_identity(self):
        out = run_cli("single", "--seed", "7", "--nt", "2", "--snr-db", "10",
                      "--alpha", "0.5").stdout
        vals = {}
        for line in out.splitlines():
            line = line.strip()
            for key in ("r_pe_jd", "r_se_jd", "r_e_mac", "r_pe_sd", "r_se_sd"):
                if line.startswith(key + " ="):
                    vals.setdefault(key, float(line.partition("=")[2]))
        assert abs(vals["r_pe_sd"] + vals["r_se_jd"] - vals["r_e_mac"]) < 1e-10
        assert abs(vals["r_pe_jd"] + vals["r_se_sd"] - vals["r_e_mac"]) < 1e-10

    def test_sweep_snr_csv_determinism(self, tmp_path):
        args = ("sweep-snr", "--decoder", "SD", "--snr-db", "10", "--nt", "2",
                "--alpha", "0", "--trials", "3", "--seed", "5",
                "--resolution", "20")
        a = run_cli(*args)
        b = run_cli(*args)
        assert a.returncode == 0
        assert a.stdout == b.stdout
        rows = read_csv_rows(io.StringIO(a.stdout))
        assert len(rows) == 1 and rows[0].trials == 3

    def test_sweep_config_error_exit_code(self, tmp_path):
        cfg_file = tmp_path / "bad.cfg"
        cfg_file.write_text("alpha = 2.0\n")
        res = run_cli("sweep-snr", "--config", str(cfg_file))
        assert res.returncode == 2
        assert "alpha" in res.stderr

    def test_usage_error_exit_code(self):
        assert run_cli("sweep-snr", "--decoder", "NOPE").returncode == 2

    def test_pgr_boundary_output(self, tmp_path):
        out_file = tmp_path / "boundary.csv"
        res = run_cli("pgr-boundary", "--seed", "4", "--nt", "2",
                      "--resolution", "8", "--out", str(out_file))
        assert res.returncode == 0
        lines = out_file.read_text().splitlines()
        assert len(lines) == 1 + 45  # header + C(9, 2) lattice points
        assert lines[0].startswith("mu1,mu2,mu3")

    def test_validate_fault_injection(self):
        res = run_cli("validate", "--inject-fault", "flip-eve-sign")
        assert res.returncode == 1
        assert "secrecy_rate_sd" in res.stdout
        assert "FAIL" in res.stdout


class TestValidateSuite:
    def test_report_counts(self):
        from leasesec.validate import run_validation

        report = run_validation(quick=True, instances=2)
        text = report.text()
        assert report.ok, text
        assert "checks passed" in text
