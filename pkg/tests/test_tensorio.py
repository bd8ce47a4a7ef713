import numpy as np
import pytest

from stagespace import tensorio


@pytest.mark.parametrize(
    "dtype", ["float32", "float64", "int16", "int32", "int64", "uint8"]
)
def test_bit_exact_round_trip(tmp_path, dtype):
    rng = np.random.default_rng(0)
    if np.issubdtype(np.dtype(dtype), np.floating):
        arr = rng.normal(size=(3, 4, 5)).astype(dtype)
    else:
        arr = rng.integers(0, 100, size=(3, 4, 5)).astype(dtype)
    path = tmp_path / "t.stt"
    tensorio.write_tensor(path, arr, {"k": "v"})
    back, meta = tensorio.read_tensor(path, with_meta=True)
    assert back.dtype == arr.dtype
    np.testing.assert_array_equal(back, arr)
    assert back.tobytes() == arr.tobytes()
    assert meta == {"k": "v"}


def test_scalar_and_1d(tmp_path):
    path = tmp_path / "s.stt"
    tensorio.write_tensor(path, np.arange(7, dtype=np.int64))
    np.testing.assert_array_equal(tensorio.read_tensor(path), np.arange(7))


def test_rejects_foreign_file(tmp_path):
    path = tmp_path / "x.stt"
    path.write_bytes(b"not a tensor")
    with pytest.raises(ValueError, match="magic"):
        tensorio.read_tensor(path)


def test_rejects_unsupported_dtype(tmp_path):
    with pytest.raises(ValueError, match="dtype"):
        tensorio.write_tensor(tmp_path / "c.stt", np.zeros(3, dtype=np.complex64))
