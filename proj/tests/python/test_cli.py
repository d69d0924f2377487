import json
import os
import subprocess

import numpy as np
import pytest

import suace

CLI = os.environ.get("SUACE_CLI")

pytestmark = pytest.mark.skipif(not CLI, reason="SUACE_CLI not set")


def run(*args, data=None):
    return subprocess.run([CLI, *map(str, args)], input=data, capture_output=True)


def test_enhance_matches_binding(tmp_path):
    img, _ = suace.phantom(width=160, height=120, seed=5)
    src = str(tmp_path / "in.pgm")
    dst = str(tmp_path / "out.pgm")
    suace.save_image(src, img)
    assert run("enhance", src, dst).returncode == 0
    assert (suace.load_image(dst) == suace.suace(img)).all()


def test_exit_codes(tmp_path):
    src = str(tmp_path / "in.pgm")
    suace.save_image(src, np.zeros((16, 16), np.uint8))
    assert run("enhance", "--sigma", 0, src, str(tmp_path / "o.pgm")).returncode == 1
    assert run("enhance", str(tmp_path / "nope.pgm"), "o.pgm").returncode == 2
    r = run("bench", "--frames", 5)
    assert r.returncode == 1 and b"--frames" in r.stderr


def test_phantom_suggested_sigma():
    r = run("phantom", "--ridge-width", 27, "--print-suggested-sigma")
    assert r.returncode == 0 and r.stdout.strip() == b"9"


def test_entropy_json(tmp_path):
    src = str(tmp_path / "c.pgm")
    suace.save_image(src, np.full((32, 32), 7, np.uint8))
    r = run("entropy", src)
    assert r.returncode == 0
    (rep,) = json.loads(r.stdout)
    assert rep["entropy_bits"] == 0.0 and rep["pixel_count"] == 1024
    assert rep["histogram"][7] == 1024


def test_sweep_sidecar(tmp_path):
    img, _ = suace.phantom(width=96, height=64, seed=2)
    src = str(tmp_path / "in.pgm")
    dst = str(tmp_path / "m.pgm")
    suace.save_image(src, img)
    assert run("sweep", src, dst, "--sigmas", "3,9", "--ds", "21").returncode == 0
    montage = suace.load_image(dst)
    assert montage.shape == (64 * 2, 96 * 1)
    side = json.loads(open(dst + ".json").read())
    assert side["rows"] == 2 and side["cols"] == 1
    assert side["cells"][1] == {"row": 1, "col": 0, "sigma": 9.0, "d": 21.0}
    # row 1 is the sigma=9 run
    assert (montage[64:, :] == suace.suace(img, sigma=9.0, d=21.0)).all()


def test_stream_round_trip(tmp_path):
    img, _ = suace.phantom(width=64, height=48, seed=9)
    raw = img.tobytes() * 3 + img.tobytes()[:100]  # 3 frames + partial tail
    r = run("stream", "-", "-", "--width", 64, "--height", 48, data=raw)
    assert r.returncode == 0
    assert b"partial trailing frame" in r.stderr
    out = np.frombuffer(r.stdout, np.uint8)
    assert out.size == 3 * 64 * 48
    want = suace.suace(img)
    for i in range(3):
        frame = out[i * 64 * 48 : (i + 1) * 64 * 48].reshape(48, 64)
        assert (frame == want).all()


def test_bench_json():
    r = run("bench", "--algos", "idle,suace", "--frames", 10, "--warmup", 0)
    assert r.returncode == 0
    reports = json.loads(r.stdout)
    assert [rep["algorithm"] for rep in reports] == ["idle", "suace"]
    assert reports[0]["relative_fps_pct"] == 100.0
    for rep in reports:
        assert rep["width"] == 640 and rep["height"] == 480 and rep["fps"] > 0
