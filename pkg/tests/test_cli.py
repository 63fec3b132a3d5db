import csv
import io

import numpy as np
import pytest

from spinscatter.cli import main
from spinscatter.sweep import COLUMNS, SweepConfig, compute_sweep, read_csv


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def parse(text):
    rows = list(csv.reader(io.StringIO(text)))
    return rows[0], np.array(rows[1:], dtype=float)


class TestSweep:
    def test_stdout_csv(self, capsys):
        code, out, err = run(capsys, "sweep", "--k-steps", "50", "--threads", "1")
        assert code == 0
        header, data = parse(out)
        assert tuple(header) == COLUMNS
        assert data.shape == (50, 7)
        assert np.all(np.diff(data[:, 0]) > 0)
        assert "peak T=" in err

    def test_full_precision(self, capsys):
        _, out, _ = run(capsys, "sweep", "--k-steps", "20", "--threads", "1")
        first = out.splitlines()[1].split(",")
        assert float(first[0]) == 0.01
        t_field = first[3]
        digits = t_field.lstrip("-0.").replace(".", "").split("e")[0]
        assert len(digits) >= 15

    def test_no_coupling_identity(self, capsys, tmp_path):
        path = tmp_path / "free.csv"
        for model in ("chain", "zpnr"):
            code, _, _ = run(capsys, "sweep", "--model", model, "--u-prime", "0", "--output", str(path), "--k-steps", "64")
            assert code == 0
            t = read_csv(path)
            assert np.all(t.T == 1.0) and np.all(t.R == 0.0)
            assert np.all(t.neg_total == 0.0) and np.all(t.neg_R == 0.0) and np.all(t.neg_T == 0.0)

    def test_plot_written(self, capsys, tmp_path):
        path = tmp_path / "s.csv"
        code, out, _ = run(capsys, "sweep", "--output", str(path), "--plot", "--k-steps", "40")
        assert code == 0
        assert path.exists() and path.with_suffix(".png").stat().st_size > 0
        assert out.startswith("peak T=")

    def test_plot_requires_output(self, capsys):
        code, _, err = run(capsys, "sweep", "--plot")
        assert code == 2 and "--output" in err

    def test_threads_do_not_change_results(self):
        cfg = SweepConfig(model="zpnr", m=5, k_steps=301)
        a, b = compute_sweep(cfg, threads=1), compute_sweep(cfg, threads=7)
        for col in COLUMNS:
            np.testing.assert_array_equal(getattr(a, col), getattr(b, col))


class TestConfig:
    @pytest.mark.parametrize(
        "argv",
        [
            ["--k-min", "2.0", "--k-max", "1.0"],
            ["--k-min", "0"],
            ["--k-max", "3.2"],
            ["--initial", "uxd"],
            ["--initial", "uu"],
            ["--m", "-1"],
            ["--k-steps", "1"],
            ["--threads", "0"],
        ],
    )
    def test_invalid_exits_2(self, capsys, argv):
        code, out, err = run(capsys, "sweep", *argv)
        assert code == 2
        assert out == ""
        assert "error" in err

    def test_config_file_and_override(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("# comment\nmodel = zpnr\nm = 5\nk_steps = 30\nu-prime = 100\n", encoding="utf-8")
        out_a = tmp_path / "a.csv"
        out_b = tmp_path / "b.csv"
        assert run(capsys, "sweep", "--config", str(cfg), "--output", str(out_a))[0] == 0
        assert run(capsys, "sweep", "--config", str(cfg), "--output", str(out_b), "--k-steps", "12")[0] == 0
        a, b = read_csv(out_a), read_csv(out_b)
        assert a.k0.size == 30 and b.k0.size == 12
        ref = compute_sweep(SweepConfig(model="zpnr", m=5, k_steps=30, u_prime=100))
        np.testing.assert_array_equal(a.T, ref.T)

    def test_config_unknown_key(self, capsys, tmp_path):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("colour = red\n", encoding="utf-8")
        assert run(capsys, "sweep", "--config", str(cfg))[0] == 2

    def test_config_bad_line(self, capsys, tmp_path):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("model chain\n", encoding="utf-8")
        assert run(capsys, "sweep", "--config", str(cfg))[0] == 2

    def test_missing_config_file(self, capsys, tmp_path):
        assert run(capsys, "sweep", "--config", str(tmp_path / "nope.cfg"))[0] == 2

    def test_figure_rejects_model_key(self, capsys, tmp_path):
        cfg = tmp_path / "f.cfg"
        cfg.write_text("model = chain\n", encoding="utf-8")
        assert run(capsys, "figure", "fig4", "--config", str(cfg), "--output", str(tmp_path))[0] == 2


class TestFigure:
    @pytest.mark.parametrize("preset,count", [("fig4", 4), ("fig5", 4), ("fig6", 2), ("fig7", 4), ("fig8", 2)])
    def test_file_counts(self, capsys, tmp_path, preset, count):
        code, out, _ = run(capsys, "figure", preset, "--output", str(tmp_path), "--k-steps", "40")
        assert code == 0
        assert len(list(tmp_path.glob("*.csv"))) == count
        assert (tmp_path / f"{preset}.png").stat().st_size > 0
        assert out.count("peak T=") == count

    def test_no_plot(self, capsys, tmp_path):
        run(capsys, "figure", "fig6", "--output", str(tmp_path), "--k-steps", "20", "--no-plot")
        assert not list(tmp_path.glob("*.png"))
        assert sorted(p.name for p in tmp_path.glob("*.csv")) == ["fig6_chain_m0_udd.csv", "fig6_zpnr_m0_udd.csv"]

    def test_fig8_coupling_tags(self, capsys, tmp_path):
        run(capsys, "figure", "fig8", "--output", str(tmp_path), "--k-steps", "20", "--no-plot")
        names = sorted(p.stem for p in tmp_path.glob("*.csv"))
        assert names == ["fig8_zpnr_m2_udd_u10", "fig8_zpnr_m2_udd_u100"]

    def test_byte_identical_reruns(self, capsys, tmp_path):
        for sub, threads in (("a", "1"), ("b", "3")):
            run(capsys, "figure", "fig7", "--output", str(tmp_path / sub), "--k-steps", "150", "--no-plot",
                "--threads", threads)
        for p in (tmp_path / "a").glob("*.csv"):
            assert p.read_bytes() == (tmp_path / "b" / p.name).read_bytes()

    def test_unknown_preset(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["figure", "fig9"])
        assert exc.value.code == 2


class TestVerify:
    @pytest.mark.parametrize("scope", ["chain", "greens"])
    def test_scopes_pass(self, capsys, scope):
        code, out, _ = run(capsys, "verify", scope)
        assert code == 0
        assert "FAIL" not in out
        assert "verification passed" in out

    def test_failure_exit_code(self, capsys, monkeypatch):
        from spinscatter import verify

        monkeypatch.setattr(verify, "UNITARITY_TOL", -1.0)
        code, out, _ = run(capsys, "verify", "chain")
        assert code == 1
        assert "FAILED" in out
