import csv
import io
import subprocess
import sys
from collections import Counter

import numpy as np
import pytest

from umse import ImageGrid
from umse.cli import main
from umse.formats import read_image, write_image


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, list(csv.DictReader(io.StringIO(out))), err


@pytest.fixture
def worked(tmp_path):
    """Files for a=[4,0], b=[2,2], c=[0,0], denoised=[1,1]."""
    paths = {}
    for name, values in {"a": [4, 0], "b": [2, 2], "c": [0, 0], "d": [1, 1]}.items():
        paths[name] = str(tmp_path / f"{name}.f32")
        write_image(ImageGrid([values]), paths[name], "f32")
    return paths


def test_metrics_worked_example(capsys, worked):
    code, rows, _ = run(
        capsys, "metrics", "--denoised", worked["d"], "--ref-a", worked["a"], "--ref-b", worked["b"],
        "--ref-c", worked["c"], "--peak", "255",
    )
    assert code == 0
    (row,) = rows
    assert float(row["umse"]) == 3.0
    assert row["valid"] == "true" and row["n"] == "2"
    assert float(row["upsnr"]) == pytest.approx(43.36, abs=0.005)
    assert row["ci_umse_low"] == ""


def test_metrics_identical_references_invalid_upsnr(capsys, worked):
    d = worked["d"]
    code, rows, _ = run(capsys, "metrics", "--denoised", d, "--ref-a", d, "--ref-b", d, "--ref-c", d, "--peak", "255")
    assert code == 0
    assert float(rows[0]["umse"]) == 0.0
    assert rows[0]["valid"] == "false" and rows[0]["upsnr"] == ""


def test_metrics_missing_peak_is_usage_error(capsys, worked):
    code = main(["metrics", "--denoised", worked["d"], "--ref-a", worked["a"], "--ref-b", worked["b"], "--ref-c", worked["c"]])
    out, err = capsys.readouterr()
    assert code == 2 and out == ""
    lines = err.strip().splitlines()
    assert len(lines) == 1 and lines[0].startswith("umse: error: usage:")


def test_metrics_shape_mismatch(capsys, worked, tmp_path):
    big = str(tmp_path / "big.f32")
    write_image(ImageGrid([[1, 2, 3]]), big, "f32")
    code = main(["metrics", "--denoised", big, "--ref-a", worked["a"], "--ref-b", worked["b"], "--ref-c", worked["c"], "--peak", "1"])
    err = capsys.readouterr().err
    assert code == 1 and err.startswith("umse: error: shape:")


def test_metrics_missing_file(capsys, worked):
    code = main(["metrics", "--clean", "/nonexistent.f32", "--denoised", worked["d"], "--peak", "1"])
    assert code == 1
    assert "io" in capsys.readouterr().err


def test_metrics_bootstrap_columns(capsys, tmp_path):
    rng = np.random.default_rng(0)
    clean = np.full((32, 32), 100.0)
    files = {}
    for name in "abc":
        files[name] = str(tmp_path / f"{name}.f32")
        write_image(clean + rng.normal(0, 5, clean.shape), files[name], "f32")
    files["d"] = str(tmp_path / "d.f32")
    write_image(clean + 3.0, files["d"], "f32")
    argv = ["metrics", "--denoised", files["d"], "--ref-a", files["a"], "--ref-b", files["b"], "--ref-c", files["c"],
            "--peak", "255", "--bootstrap", "200", "--alpha", "0.1", "--seed", "4"]
    code, rows, _ = run(capsys, *argv)
    assert code == 0
    row = rows[0]
    assert float(row["ci_umse_low"]) <= float(row["ci_umse_high"])
    assert float(row["ci_upsnr_low"]) <= float(row["ci_upsnr_high"])
    assert row["ci_excluded"] == "0"
    _, again, _ = run(capsys, *argv)
    assert again == rows


def test_metrics_supervised_and_avg(capsys, tmp_path):
    x, f = str(tmp_path / "x.pgm"), str(tmp_path / "f.pgm")
    write_image(ImageGrid([[1, 3]]), x, "pgm8")
    write_image(ImageGrid([[2, 1]]), f, "pgm8")
    code, rows, _ = run(capsys, "metrics", "--clean", x, "--denoised", f, "--peak", "255")
    assert code == 0 and float(rows[0]["mse"]) == 2.5
    assert float(rows[0]["psnr"]) == pytest.approx(10 * np.log10(255**2 / 2.5), rel=1e-12)

    r1, r2, z = (str(tmp_path / n) for n in ("r1.f32", "r2.f32", "z.f32"))
    write_image(ImageGrid([[2.0]]), r1, "f32")
    write_image(ImageGrid([[4.0]]), r2, "f32")
    write_image(ImageGrid([[0.0]]), z, "f32")
    code, rows, _ = run(capsys, "metrics", "--avg-refs", f"{r1},{r2}", "--denoised", z)
    assert code == 0 and float(rows[0]["mse_avg"]) == 9.0 and rows[0]["m"] == "2"


def test_metrics_multiple_images_pooled(capsys, worked):
    d, a, b, c = worked["d"], worked["a"], worked["b"], worked["c"]
    code, rows, _ = run(
        capsys, "metrics", "--denoised", f"{d},{d}", "--ref-a", f"{a},{d}", "--ref-b", f"{b},{d}",
        "--ref-c", f"{c},{d}", "--peak", "255",
    )
    assert code == 0
    assert [r["scope"] for r in rows] == ["0", "1", "pooled"]
    assert [float(r["umse"]) for r in rows] == [3.0, 0.0, 1.5]


def test_metrics_from_single_noisy_image(capsys, tmp_path):
    noisy = np.arange(16.0).reshape(4, 4)
    n_path, full, half = (str(tmp_path / p) for p in ("n.f32", "full.f32", "half.f32"))
    write_image(noisy, n_path, "f32")
    write_image(noisy, full, "f32")
    write_image(noisy[0::2, 0::2], half, "f32")
    base = ["metrics", "--noisy", n_path, "--subsample", "det", "--peak", "255", "--denoised"]
    _, rows_full, _ = run(capsys, *base, full)
    _, rows_half, _ = run(capsys, *base, half)
    assert rows_full == rows_half
    # Y is noisy[::2, ::2]; A = Y + 4, B = Y + 1, C = Y + 5 -> uSE = 16 - 8 = 8
    assert float(rows_full[0]["umse"]) == 8.0


def test_subsample_command(capsys, tmp_path):
    img = np.random.default_rng(3).integers(0, 255, (4, 4)).astype(float)
    src = str(tmp_path / "in.pgm")
    write_image(img, src, "pgm8")
    out = tmp_path / "out"
    code, rows, _ = run(capsys, "subsample", "--input", src, "--out", str(out), "--mode", "rand", "--seed", "9")
    assert code == 0
    subs = [read_image(out / f"{r}.f32").data for r in "yabc"]
    assert all(s.shape == (2, 2) for s in subs)
    assert Counter(np.concatenate([s.ravel() for s in subs])) == Counter(img.ravel())
    with open(out / "assignment.csv") as fh:
        table = list(csv.DictReader(fh))
    assert len(table) == 4
    assert all(sorted(int(t[k]) for k in "yabc") == [1, 2, 3, 4] for t in table)


def test_subsample_odd_needs_crop(capsys, tmp_path):
    src = str(tmp_path / "odd.f32")
    write_image(np.zeros((3, 5)), src, "f32")
    assert main(["subsample", "--input", src, "--out", str(tmp_path / "o")]) == 1
    assert "even" in capsys.readouterr().err
    assert main(["subsample", "--input", src, "--out", str(tmp_path / "o"), "--crop"]) == 0


def test_simulate_writes_reference_set(capsys, tmp_path):
    code, rows, _ = run(capsys, "simulate", "--pattern", "constant:8:50", "--model", "poisson", "--seed", "1",
                        "--out", str(tmp_path), "--format", "pgm16")
    assert code == 0
    assert [r["role"] for r in rows] == ["clean", "y", "a", "b", "c"]
    assert read_image(tmp_path / "a.pgm").shape == (8, 8)


def test_simulate_pgm_rejects_gaussian_fractions(capsys, tmp_path):
    code = main(["simulate", "--pattern", "constant:4", "--model", "gaussian:3", "--out", str(tmp_path), "--format", "pgm8"])
    assert code == 1
    assert "integers" in capsys.readouterr().err


def _cli(*argv):
    return subprocess.run([sys.executable, "-m", "umse", *argv], capture_output=True, check=True)


def test_simulate_is_byte_deterministic(tmp_path):
    outs = []
    for run_id in ("one", "two"):
        d = tmp_path / run_id
        _cli("simulate", "--pattern", "texture:16", "--model", "gaussian:55", "--seed", "7", "--out", str(d),
             "--denoiser", "gaussian:2")
        outs.append({p.name: p.read_bytes() for p in sorted(d.iterdir())})
    assert outs[0] == outs[1]
    assert set(outs[0]) == {"clean.f32", "y.f32", "a.f32", "b.f32", "c.f32", "denoised.f32"}


def test_experiment_command(capsys, tmp_path):
    cfg = tmp_path / "unbiasedness.cfg"
    cfg.write_text("kind = unbiasedness\nclean = texture:16\ntrials = 20\nseed = 2\n")
    code, rows, err = run(capsys, "experiment", "--config", str(cfg), "--out", str(tmp_path / "rep"))
    assert code == 0
    assert {"mean_umse", "true_mse", "z"} <= set(rows[0])
    assert (tmp_path / "rep" / "unbiasedness_summary.csv").exists()
    assert "wrote" in err


def test_bad_config_reports_error(capsys, tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("kind = unbiasedness\ntrials = zero\n")
    assert main(["experiment", "--config", str(cfg), "--out", str(tmp_path)]) == 1
    assert capsys.readouterr().err.startswith("umse: error: input:")


def test_inputs_not_mutated(capsys, worked):
    before = {k: open(v, "rb").read() for k, v in worked.items()}
    main(["metrics", "--denoised", worked["d"], "--ref-a", worked["a"], "--ref-b", worked["b"], "--ref-c", worked["c"],
          "--peak", "255", "--bootstrap", "10"])
    capsys.readouterr()
    assert before == {k: open(v, "rb").read() for k, v in worked.items()}
