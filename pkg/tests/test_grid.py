import struct

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from sinofilt import grid


def test_new_filled():
    assert grid.new_filled(1, 1, 0.0).tolist() == [[0.0]]
    g = grid.new_filled(2, 3, 1.5)
    assert g.shape == (2, 3) and np.all(g == 1.5)
    assert grid.new_filled(256, 256, 0.0).shape == (256, 256)


@pytest.mark.parametrize("rows,cols", [(0, 1), (1, 0), (-2, 3)])
def test_new_filled_rejects_bad_dims(rows, cols):
    with pytest.raises(ValueError):
        grid.new_filled(rows, cols, 0.0)


def test_raw_roundtrip_3x3(tmp_path):
    img = np.arange(9, dtype=float).reshape(3, 3) * 0.25 - 1
    path = tmp_path / "a.sgf"
    grid.save_raw(path, img)
    blob = path.read_bytes()
    assert blob[:4] == b"SGF1"
    assert struct.unpack("<III", blob[4:16]) == (3, 3, 0)
    assert len(blob) == 16 + 9 * 4
    np.testing.assert_array_equal(grid.load_raw(path), img)


finite32 = st.floats(allow_nan=False, allow_infinity=False, width=32)


@settings(max_examples=50, deadline=None)
@given(arrays(np.float32, st.tuples(st.integers(1, 12), st.integers(1, 12)), elements=finite32))
def test_raw_roundtrip_bit_exact(tmp_path_factory, img):
    path = tmp_path_factory.mktemp("rt") / "x.sgf"
    grid.save_raw(path, img.astype(np.float64))
    back = grid.load_raw(path)
    assert back.astype(np.float32).tobytes() == img.tobytes()
    # second generation is byte-identical on disk
    path2 = path.with_name("y.sgf")
    grid.save_raw(path2, back)
    assert path2.read_bytes() == path.read_bytes()


def test_bad_magic(tmp_path):
    path = tmp_path / "bad.sgf"
    path.write_bytes(b"XXXX" + struct.pack("<III", 1, 1, 0) + b"\0" * 4)
    with pytest.raises(grid.BadMagicError):
        grid.load_raw(path)


def test_truncated_payload(tmp_path):
    path = tmp_path / "short.sgf"
    path.write_bytes(b"SGF1" + struct.pack("<III", 10, 10, 0) + np.zeros(50, "<f4").tobytes())
    with pytest.raises(grid.TruncatedPayloadError):
        grid.load_raw(path)


def test_dimension_overflow(tmp_path):
    path = tmp_path / "huge.sgf"
    path.write_bytes(b"SGF1" + struct.pack("<III", 2**31, 2**31, 0))
    with pytest.raises(grid.DimensionOverflowError):
        grid.load_raw(path)


def test_error_kinds_are_distinct():
    kinds = {grid.BadMagicError, grid.TruncatedPayloadError, grid.DimensionOverflowError}
    assert len(kinds) == 3
    assert all(issubclass(k, grid.RawFormatError) for k in kinds)


def test_save_rejects_nonfinite(tmp_path):
    with pytest.raises(ValueError):
        grid.save_raw(tmp_path / "n.sgf", np.array([[np.nan]]))


def _pgm_pixels(path):
    blob = path.read_bytes()
    header_end = blob.index(b"255\n") + 4
    return blob[:header_end], blob[header_end:]


def test_pgm_clamps_and_rounds(tmp_path):
    p = tmp_path / "a.pgm"
    grid.save_pgm(p, np.full((2, 3), -1.0), -1.0, 1.0)
    header, px = _pgm_pixels(p)
    assert header == b"P5\n3 2\n255\n" and px == bytes(6)

    grid.save_pgm(p, np.full((2, 3), 1.0), -1.0, 1.0)
    assert _pgm_pixels(p)[1] == bytes([255] * 6)

    grid.save_pgm(p, np.array([[0.5, 5.0, -5.0]]), 0.0, 1.0)
    assert list(_pgm_pixels(p)[1]) == [128, 255, 0]


def test_pgm_size(tmp_path):
    p = tmp_path / "b.pgm"
    grid.save_pgm(p, np.zeros((888, 984)), 0, 1)
    header, px = _pgm_pixels(p)
    assert len(header) <= 15
    assert len(px) == 888 * 984


def test_pgm_degenerate_window(tmp_path):
    with pytest.raises(ValueError):
        grid.save_pgm(tmp_path / "c.pgm", np.zeros((2, 2)), 1.0, 1.0)
