"""Tests for the tfkit command line"""

import numpy as np
import orjson
import pytest

from tfkit.cli import EXIT_INVALID, EXIT_NUMERICAL, EXIT_OK, main
from tfkit.io import parse_ambgrid, parse_tfgrid, read_signal, write_signal
from tfkit.signal import SampledSignal
from tfkit.tfd import min_scan, signal_marginals, time_marginal

# fs^2 = N keeps the grid self-dual
GRID = ["--n", "256", "--fs", "16"]


@pytest.fixture()
def gaussian_file(tmp_path):
    path = tmp_path / "g.csv"
    assert main(["gen", "--kind", "gaussian", *GRID, "--width", "1", "-o", str(path)]) == EXIT_OK
    yield path


@pytest.fixture()
def chirp_file(tmp_path):
    path = tmp_path / "chirp.csv"
    code = main(["gen", "--kind", "lfm_chirp", *GRID, "--width", "1", "--rate", "2", "-o", str(path)])
    assert code == EXIT_OK
    yield path


@pytest.fixture()
def two_component_file(tmp_path):
    path = tmp_path / "two.csv"
    args = ["gen", "--kind", "two_component", *GRID, "--width", "1", "--separation", "2.5"]
    assert main([*args, "-o", str(path)]) == EXIT_OK
    yield path


def test_gen(gaussian_file):
    """gen writes a unit-energy signal file"""
    signal = read_signal(gaussian_file)
    assert signal.n == 256
    assert signal.sample_rate == 16.0
    assert np.sum(np.abs(signal.samples) ** 2) * signal.dt == pytest.approx(1.0)
    assert len(gaussian_file.read_text().splitlines()) == 257


def test_gen_to_stdout_as_json(capsys):
    assert main(["gen", "--kind", "tone", *GRID, "--center-frequency", "2", "--format", "json"]) == EXIT_OK
    data = orjson.loads(capsys.readouterr().out)
    assert data["format"] == "tfkit-signal"
    assert len(data["re"]) == 256


def test_gen_from_file(tmp_path, gaussian_file):
    out = tmp_path / "copy.csv"
    assert main(["gen", "--kind", "from_file", "--path", str(gaussian_file), "-o", str(out)]) == EXIT_OK
    assert out.read_text() == gaussian_file.read_text()


@pytest.mark.parametrize(
    "argv, message",
    [
        (["gen", "--kind", "gaussian", "--fs", "16", "--width", "1"], "needs --n"),
        (["gen", "--kind", "gaussian", "--width", "1"], "needs --n and --fs"),
        (["gen", "--kind", "from_file"], "needs --path"),
        (["gen", "--kind", "sawtooth", *GRID], "invalid choice"),
        (["tfd"], "required"),
        (["sl2", "x.csv"], "required"),
        (["sl2", "x.csv", "--word", "J", "--matrix", "1,0,0,1"], "not allowed"),
        (["sl2", "x.csv", "--word", "J", "--verify"], "needs -o"),
    ],
)
def test_usage_errors(capsys, argv, message):
    """Usage errors exit with status 2 and a message"""
    with pytest.raises(SystemExit) as exp:
        main(argv)
    assert exp.value.code == EXIT_INVALID
    assert message in capsys.readouterr().err


@pytest.mark.parametrize(
    "argv",
    [
        ["gen", "--kind", "gaussian", "--n", "255", "--fs", "16", "--width", "1"],
        ["gen", "--kind", "gaussian", *GRID],
        ["gen", "--kind", "gaussian", *GRID, "--width", "-1"],
        ["tfd", "missing.csv"],
    ],
)
def test_validation_errors(tmp_path, monkeypatch, argv):
    monkeypatch.chdir(tmp_path)
    assert main(argv) == EXIT_INVALID


def test_tfd_wigner(tmp_path, gaussian_file):
    """tfd writes a grid whose time marginal is |a|^2"""
    out = tmp_path / "w.csv"
    assert main(["tfd", str(gaussian_file), "--kernel", "wigner", "-o", str(out)]) == EXIT_OK
    grid = parse_tfgrid(out.read_text())
    power, _ = signal_marginals(read_signal(gaussian_file), grid)
    assert grid.kernel == "wigner"
    assert np.max(np.abs(time_marginal(grid) - power)) < 1e-10


def test_tfd_gaussian_kernel(tmp_path, gaussian_file):
    out = tmp_path / "s.json"
    argv = ["tfd", str(gaussian_file), "--kernel", "gaussian:alpha=0.6,beta=0.5", "--format", "json"]
    assert main([*argv, "-o", str(out)]) == EXIT_OK
    grid = parse_tfgrid(out.read_text())
    assert grid.kernel == "gaussian"
    assert min_scan(grid).value >= -1e-6 * grid.peak


def test_tfd_band(tmp_path, gaussian_file):
    out = tmp_path / "w.csv"
    assert main(["tfd", str(gaussian_file), "--f-start", "0", "-o", str(out)]) == EXIT_OK
    assert parse_tfgrid(out.read_text()).f_start == 0.0


def test_tfd_unknown_kernel(gaussian_file):
    assert main(["tfd", str(gaussian_file), "--kernel", "nosuch"]) == EXIT_INVALID


def test_amb(tmp_path, gaussian_file):
    out = tmp_path / "a.csv"
    assert main(["amb", str(gaussian_file), "--kernel", "born_jordan", "-o", str(out)]) == EXIT_OK
    amb = parse_ambgrid(out.read_text())
    assert amb.center == pytest.approx(1.0, abs=1e-8)


def test_report_wigner(capsys, gaussian_file):
    """The Gaussian reaches the spread bound"""
    assert main(["report", str(gaussian_file)]) == EXIT_OK
    report = orjson.loads(capsys.readouterr().out)
    assert report["schema"] == "tfkit-report/1"
    assert report["passed"] is True
    assert report["relation1"]["status"] == "ok"
    assert report["relation1"]["ratio"] == pytest.approx(1.0, rel=1e-2)


def test_report_chirp(capsys, chirp_file):
    assert main(["report", str(chirp_file), "--kernel", "rihaczek"]) == EXIT_OK
    report = orjson.loads(capsys.readouterr().out)
    assert report["kernel"] == "rihaczek"
    assert report["heisenberg"]["ratio"] == pytest.approx(5.0, rel=2e-2)


def test_report_spectrogram(capsys, two_component_file):
    """Non-marginal kernels skip the spread check but still succeed"""
    assert main(["report", str(two_component_file), "--kernel", "spectrogram:width=0.5"]) == EXIT_OK
    report = orjson.loads(capsys.readouterr().out)
    assert report["relation1"]["status"] == "not-applicable"
    assert report["relation1"]["ratio"] is None


def test_report_csv(tmp_path, gaussian_file):
    out = tmp_path / "report.csv"
    argv = ["report", str(gaussian_file), "--t0", "0.5", "--f0", "0", "--format", "csv", "-o", str(out)]
    assert main(argv) == EXIT_OK
    rows = dict(line.split(",", 1) for line in out.read_text().splitlines())
    assert rows["schema"] == "tfkit-report/1"
    assert float(rows["relation1.t0"]) == 0.5
    assert float(rows["heisenberg.ratio"]) == pytest.approx(1.0, rel=1e-2)


def test_report_numerical_failure(tmp_path):
    """An all-zero signal has no moments"""
    path = tmp_path / "zero.csv"
    write_signal(SampledSignal(samples=np.zeros(8), sample_rate=2.0, t0=-2.0), path)
    assert main(["report", str(path)]) == EXIT_NUMERICAL


def test_report_tolerance_env(monkeypatch, gaussian_file):
    monkeypatch.setenv("TFKIT_TOL", "loose")
    assert main(["report", str(gaussian_file)]) == EXIT_INVALID

    monkeypatch.setenv("TFKIT_TOL", "0.01")
    assert main(["report", str(gaussian_file), "-o", "-"]) == EXIT_OK


def test_sl2_word_with_verification(capsys, tmp_path, gaussian_file):
    """--verify prints the measured and predicted covariances"""
    out = tmp_path / "moved.csv"
    assert main(["sl2", str(gaussian_file), "--word", "T(2)", "--verify", "-o", str(out)]) == EXIT_OK
    result = orjson.loads(capsys.readouterr().out)
    assert result["word"] == "T(2.0)"
    assert result["max_relative_deviation"] < 0.02
    assert result["matrix"] == {"a": 1.0, "b": 0.0, "c": 2.0, "d": 1.0}
    assert read_signal(out).n == 256


def test_sl2_identity_matrix(tmp_path, gaussian_file):
    """The identity leaves the file byte for byte"""
    out = tmp_path / "same.csv"
    assert main(["sl2", str(gaussian_file), "--matrix", "1,0,0,1", "-o", str(out)]) == EXIT_OK
    assert out.read_text() == gaussian_file.read_text()


def test_sl2_matrix(tmp_path, gaussian_file):
    out = tmp_path / "moved.csv"
    assert main(["sl2", str(gaussian_file), "--matrix", "2,1,1,1", "-o", str(out)]) == EXIT_OK
    assert read_signal(out).n == 256


def test_sl2_compressing_matrix(capsys, tmp_path, gaussian_file):
    """A matrix with 0 < a < 1 factors to M(0.5) and follows the pushforward"""
    out = tmp_path / "moved.csv"
    args = ["sl2", str(gaussian_file), "--matrix", "0.5,0,0,2", "--verify", "-o", str(out)]
    assert main(args) == EXIT_OK
    result = orjson.loads(capsys.readouterr().out)
    assert result["word"] == "M(0.5)"
    assert result["matrix"] == {"a": 0.5, "b": 0.0, "c": 0.0, "d": 2.0}
    assert result["max_relative_deviation"] < 0.05


@pytest.mark.parametrize(
    "action",
    [["--matrix", "2,0,0,1"], ["--matrix", "1,2,3"], ["--matrix", "a,b,c,d"], ["--word", "Q(1)"]],
)
def test_sl2_invalid_actions(gaussian_file, action):
    assert main(["sl2", str(gaussian_file), *action]) == EXIT_INVALID
