import json

import numpy as np
import pytest

from cdsupport import direct_support, make_student_t_cd, parse_region
from cdsupport.cli import main


def run_cli(args, capsys):
    code = main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_sample(path, values):
    path.write_text("\n".join(f"{v:.12f}" for v in values) + "\n")


@pytest.fixture
def sample_csv(tmp_path):
    rng = np.random.default_rng(2026)
    values = rng.standard_normal(200)
    path = tmp_path / "sample.csv"
    write_sample(path, values)
    return path, values


@pytest.fixture
def table1_csv(tmp_path, table1):
    path = tmp_path / "table1.csv"
    lines = ["x1,x2"] + [f"{a},{b}" for a, b in table1]
    path.write_text("\n".join(lines) + "\n")
    return path


@pytest.fixture
def rect_config(tmp_path):
    path = tmp_path / "region.cfg"
    path.write_text(
        "# model-validation acceptance box\n"
        "shape = rectangle\n"
        "lo = -0.154, -0.28\n"
        "hi = 0.154, 0.28\n"
    )
    return path


class TestPval:
    def test_half_line_matches_library(self, sample_csv, capsys):
        path, values = sample_csv
        code, out, _ = run_cli(
            ["pval", "--input", str(path), "--region", "[0,inf)", "--cd", "t"], capsys
        )
        assert code == 0
        report = json.loads(out)
        cd = make_student_t_cd(len(values), values.mean(), values.std(ddof=1))
        want = direct_support(cd, parse_region("[0,inf)"))
        assert report["p"] == pytest.approx(want, abs=1e-12)
        assert report["p"] == pytest.approx(1.0 - cd.cdf(0.0), abs=1e-12)
        assert report["schema"] == 1
        assert report["config"]["seed"] == 0
        assert report["n"] == 200

    def test_brace_region_is_parse_error(self, sample_csv, capsys):
        path, _ = sample_csv
        code, out, err = run_cli(
            ["pval", "--input", str(path), "--region", "{0.3}"], capsys
        )
        assert code == 1 and out == ""
        error = json.loads(err)["error"]
        assert error["category"] == "parse"
        assert "{0.3}" in error["message"]

    def test_union_region_lists_pieces(self, sample_csv, capsys):
        path, values = sample_csv
        code, out, _ = run_cli(
            ["pval", "--input", str(path), "--region", "[0,0.1];[0.5,0.6];[1,1.1]"],
            capsys,
        )
        assert code == 0
        report = json.loads(out)
        assert len(report["pieces"]) == 3
        fulls = [piece["full"] for piece in report["pieces"]]
        assert report["p"] == pytest.approx(max(fulls), abs=1e-15)

    def test_direct_method_prints_caution_on_narrow_piece(self, sample_csv, capsys):
        path, _ = sample_csv
        code, out, err = run_cli(
            ["pval", "--input", str(path), "--region", "[-0.01,0.01]",
             "--method", "direct"],
            capsys,
        )
        assert code == 0
        assert "caution" in json.loads(out)
        assert "caution" in err

    def test_nan_row_rejected(self, tmp_path, capsys):
        path = tmp_path / "bad.csv"
        path.write_text("1.0\nnan\n2.0\n")
        code, _, err = run_cli(["pval", "--input", str(path), "--region", "0"], capsys)
        assert code == 1
        assert json.loads(err)["error"]["category"] == "parse"

    def test_missing_file_is_io_error(self, tmp_path, capsys):
        code, _, err = run_cli(
            ["pval", "--input", str(tmp_path / "nope.csv"), "--region", "0"], capsys
        )
        assert code == 1
        assert json.loads(err)["error"]["category"] == "io"

    def test_wrong_arity_rejected(self, tmp_path, capsys):
        path = tmp_path / "wide.csv"
        path.write_text("1.0,2.0\n")
        code, _, err = run_cli(["pval", "--input", str(path), "--region", "0"], capsys)
        assert code == 1
        assert json.loads(err)["error"]["category"] == "parse"


class TestPval2d:
    def test_reference_report(self, table1_csv, rect_config, capsys):
        code, out, _ = run_cli(
            ["pval2d", "--input", str(table1_csv), "--config", str(rect_config),
             "--depth", "mahalanobis", "--boot-reps", "2000", "--seed", "1"],
            capsys,
        )
        assert code == 0
        report = json.loads(out)
        assert report["m"] == 2000
        assert report["depth"] == "mahalanobis"
        assert report["p_multi"] == pytest.approx(
            min(report["esp"] + report["tail"], 1.0), abs=1e-15
        )
        assert 0.25 < report["p_multi"] < 0.55
        assert "p_max" in report  # rectangle corners are designated by default
        assert report["config"]["region"]["shape"] == "rectangle"

    def test_whole_plane_is_one(self, table1_csv, tmp_path, capsys):
        cfg = tmp_path / "plane.cfg"
        cfg.write_text("shape = rectangle\nlo = -inf, -inf\nhi = inf, inf\n")
        code, out, _ = run_cli(
            ["pval2d", "--input", str(table1_csv), "--config", str(cfg),
             "--boot-reps", "200"],
            capsys,
        )
        assert code == 0
        assert json.loads(out)["p_multi"] == 1.0

    def test_deterministic_bytes_across_threads(self, table1_csv, rect_config,
                                                tmp_path, capsys):
        blobs = []
        for threads in (1, 4, 8):
            out_path = tmp_path / "report.json"
            code, _, _ = run_cli(
                ["pval2d", "--input", str(table1_csv), "--config", str(rect_config),
                 "--boot-reps", "500", "--seed", "5", "--threads", str(threads),
                 "--out", str(out_path)],
                capsys,
            )
            assert code == 0
            blobs.append(out_path.read_bytes())
        assert blobs[0] == blobs[1] == blobs[2]

    def test_quadrant_complement_config(self, table1_csv, tmp_path, capsys):
        cfg = tmp_path / "quad.cfg"
        cfg.write_text("shape = quadrant-complement\ncorner = 0, 0\ncorners = 0,0\n")
        code, out, _ = run_cli(
            ["pval2d", "--input", str(table1_csv), "--config", str(cfg),
             "--boot-reps", "300", "--seed", "2"],
            capsys,
        )
        assert code == 0
        report = json.loads(out)
        assert 0.0 <= report["p_multi"] <= 1.0
        assert len(report["corner_p"]) == 1


class TestBioeq:
    def test_reference_summary(self, capsys):
        code, out, _ = run_cli(
            ["bioeq", "--n1", "12", "--n2", "12", "--mean-t", "80.272",
             "--mean-r", "82.559", "--var-d", "83.623",
             "--lower", "-16.51", "--upper", "16.51"],
            capsys,
        )
        assert code == 0
        report = json.loads(out)
        assert report["p"] == pytest.approx(0.000479, abs=5e-5)
        assert report["p"] == max(report["lower_tail"], report["upper_tail"])
        assert report["df"] == 22
        assert report["equivalence_supported"]["0.05"] is True

    def test_symmetric_tails(self, capsys):
        code, out, _ = run_cli(
            ["bioeq", "--n1", "10", "--n2", "10", "--mean-t", "5", "--mean-r", "5",
             "--var-d", "4", "--lower", "-8", "--upper", "8"],
            capsys,
        )
        assert code == 0
        report = json.loads(out)
        assert report["lower_tail"] == pytest.approx(report["upper_tail"], abs=1e-12)

    def test_equal_limits_rejected(self, capsys):
        code, _, err = run_cli(
            ["bioeq", "--n1", "10", "--n2", "10", "--mean-t", "5", "--mean-r", "5",
             "--var-d", "4", "--lower", "1", "--upper", "1"],
            capsys,
        )
        assert code == 1
        assert json.loads(err)["error"]["category"] == "validation"


class TestSimulate:
    def test_writes_report_and_qq(self, tmp_path, capsys):
        out_path = tmp_path / "run.json"
        qq_path = tmp_path / "run.csv"
        code, _, _ = run_cli(
            ["simulate", "--region", "0", "--true-mean", "0", "--n", "60",
             "--reps", "60", "--cd", "z", "--seed", "4",
             "--out", str(out_path), "--qq-out", str(qq_path)],
            capsys,
        )
        assert code == 0
        report = json.loads(out_path.read_text())
        assert report["command"] == "simulate"
        assert report["config"]["seed"] == 4
        assert report["reps"] == 60
        assert 0.0 <= report["ks"] <= 1.0
        lines = qq_path.read_text().splitlines()
        assert lines[0] == "rank,empirical_p,uniform_quantile"
        assert len(lines) == 61

    def test_byte_identity_across_threads(self, tmp_path, capsys):
        blobs = []
        for threads in (1, 4, 8):
            out_path = tmp_path / "sim.json"
            code, _, _ = run_cli(
                ["simulate", "--region", "[-0.5,0.5]", "--true-mean", "0",
                 "--n", "50", "--reps", "50", "--seed", "8",
                 "--threads", str(threads), "--out", str(out_path)],
                capsys,
            )
            assert code == 0
            blobs.append(out_path.read_bytes())
        assert blobs[0] == blobs[1] == blobs[2]

    def test_bivariate_config_run(self, tmp_path, capsys):
        cfg = tmp_path / "caseb.cfg"
        cfg.write_text("shape = rectangle\nlo = -1, -4\nhi = 0, 4\n")
        out_path = tmp_path / "sim2d.json"
        code, _, _ = run_cli(
            ["simulate", "--config", str(cfg), "--true-mean", "0,0", "--n", "60",
             "--reps", "50", "--method", "multi", "--depth", "mahalanobis",
             "--boot-reps", "120", "--seed", "1", "--out", str(out_path)],
            capsys,
        )
        assert code == 0
        report = json.loads(out_path.read_text())
        assert report["config"]["cov"] == [[1.0, 0.8], [0.8, 4.0]]
        assert report["config"]["region"]["shape"] == "rectangle"

    def test_missing_region_is_validation_error(self, capsys):
        code, _, err = run_cli(["simulate", "--true-mean", "0"], capsys)
        assert code == 1
        assert json.loads(err)["error"]["category"] == "validation"


def test_pval_report_reproducible_from_itself(sample_csv, capsys):
    path, _ = sample_csv
    code, out, _ = run_cli(
        ["pval", "--input", str(path), "--region", "[-0.2,0.4]"], capsys
    )
    assert code == 0
    first = json.loads(out)
    cfg = first["config"]
    code, out, _ = run_cli(
        ["pval", "--input", cfg["input"], "--region", cfg["region"],
         "--method", cfg["method"], "--cd", cfg["cd"],
         "--boot-reps", str(cfg["boot_reps"]), "--seed", str(cfg["seed"])],
        capsys,
    )
    assert code == 0
    assert json.loads(out) == first
