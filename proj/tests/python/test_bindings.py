import numpy as np
import pytest

import suace


def test_phantom_shape_and_determinism():
    img1, mask1 = suace.phantom(seed=7)
    img2, mask2 = suace.phantom(seed=7)
    assert img1.shape == (480, 640) and img1.dtype == np.uint8
    assert (img1 == img2).all() and (mask1 == mask2).all()
    img3, _ = suace.phantom(seed=8)
    assert not (img1 == img3).all()


def test_constant_maps_to_midpoint():
    const = np.full((48, 64), 100, np.uint8)
    assert (suace.suace(const) == 128).all()


def test_enhancers_return_uint8_same_shape():
    img, _ = suace.phantom(width=160, height=120)
    for fn in (suace.suace, suace.clahe, suace.hmfil):
        out = fn(img)
        assert out.shape == img.shape and out.dtype == np.uint8


def test_suace_separates_ridges():
    img, mask = suace.phantom(seed=1)
    out = suace.suace(img)
    on = out[mask > 0].mean()
    off = out[mask == 0].mean()
    assert off - on > 100.0


def test_entropy_basics():
    const = np.zeros((32, 32), np.uint8)
    assert suace.entropy(const) == 0.0
    img, _ = suace.phantom()
    assert 6.0 < suace.entropy(img) < 8.0


def test_suggested_sigma():
    assert suace.suggested_sigma(27.0) == 9.0


def test_bad_params_raise_value_error():
    img = np.zeros((16, 16), np.uint8)
    with pytest.raises(ValueError):
        suace.suace(img, sigma=0.0)
    with pytest.raises(ValueError):
        suace.clahe(img, clip_limit=0.5)
    with pytest.raises(ValueError):
        suace.hmfil(img, alpha=2.0)
    with pytest.raises(ValueError):
        suace.suace(np.zeros((2, 3, 4), np.uint8))  # not 2-D


def test_io_errors_raise_os_error(tmp_path):
    with pytest.raises(OSError):
        suace.load_image(str(tmp_path / "missing.pgm"))


def test_save_load_round_trip(tmp_path):
    rng = np.random.default_rng(3)
    img = rng.integers(0, 256, size=(37, 53), dtype=np.uint8)
    for name in ("rt.pgm", "rt.png"):
        path = str(tmp_path / name)
        suace.save_image(path, img)
        assert (suace.load_image(path) == img).all()


def test_noncontiguous_input_accepted():
    img, _ = suace.phantom(width=128, height=96)
    view = img[::2, ::2]  # strided view; the binding must take a copy
    assert not view.flags["C_CONTIGUOUS"]
    out = suace.suace(view)
    assert out.shape == view.shape
    assert (out == suace.suace(np.ascontiguousarray(view))).all()
