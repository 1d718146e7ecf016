import numpy as np
import pytest

from entspec.distribution import sweep
from entspec.errors import OutputError, StateFormatError
from entspec.export import make_sweep_csv_bytes
from entspec.repository import (
    AMPLITUDE,
    HEADER,
    MAGIC,
    decode_state,
    decode_text_state,
    detect_kind,
    encode_state,
    load_state,
    load_sweep_csv,
    parse_state,
    parse_sweep_csv,
    repo,
    save_state,
)
from entspec.states import make_ghz, make_random, make_w


def _raw(n: int, amps: np.ndarray, magic: bytes = MAGIC) -> bytes:
    header = np.array([(magic, n, amps.size)], dtype=HEADER)
    return header.tobytes() + amps.astype(AMPLITUDE).tobytes()


class TestBinaryFormat:
    def test_file_size(self, tmp_path):
        path = tmp_path / "ghz8.qsv"
        save_state(make_ghz(8), path)
        assert path.stat().st_size == 16 + 16 * 256

    def test_header_layout(self):
        data = encode_state(make_w(3))
        assert data[:4] == b"QSV1"
        assert int.from_bytes(data[4:8], "little") == 3
        assert int.from_bytes(data[8:16], "little") == 8

    def test_round_trip_is_bit_exact(self, tmp_path):
        state = make_random(9, 31337)
        path = tmp_path / "r.qsv"
        save_state(state, path)
        loaded = load_state(path)
        assert loaded.n == 9
        assert loaded.amplitudes.tobytes() == state.amplitudes.tobytes()

    def test_length_mismatch(self):
        amps = np.ones(7, dtype=np.complex128) / np.sqrt(7.0)
        header = np.array([(MAGIC, 3, 8)], dtype=HEADER)
        with pytest.raises(StateFormatError) as info:
            decode_state(header.tobytes() + amps.astype(AMPLITUDE).tobytes())
        assert info.value.invariant == "length"

    def test_count_disagrees_with_n(self):
        with pytest.raises(StateFormatError) as info:
            decode_state(_raw(3, np.ones(4) / 2.0))
        assert info.value.invariant == "length"

    def test_unnormalized(self):
        with pytest.raises(StateFormatError) as info:
            decode_state(_raw(3, np.zeros(8)))
        assert info.value.invariant == "normalization"

    def test_slightly_off_norm_is_accepted(self):
        amps = np.zeros(4, dtype=np.complex128)
        amps[0] = 1.0 + 1e-10
        assert decode_state(_raw(2, amps)).n == 2

    @pytest.mark.parametrize("bad", [np.nan, np.inf])
    def test_non_finite_amplitude(self, bad):
        amps = np.zeros(4, dtype=np.complex128)
        amps[1] = bad
        with pytest.raises(StateFormatError) as info:
            decode_state(_raw(2, amps))
        assert info.value.invariant == "normalization"

    def test_bad_magic(self):
        with pytest.raises(StateFormatError) as info:
            decode_state(_raw(2, np.array([1, 0, 0, 0]), magic=b"QSV2"))
        assert info.value.invariant == "header"

    def test_truncated_header(self):
        with pytest.raises(StateFormatError):
            decode_state(MAGIC + b"\x01")

    def test_path_in_message(self, tmp_path):
        path = tmp_path / "bad.qsv"
        path.write_bytes(_raw(3, np.zeros(8)))
        with pytest.raises(StateFormatError, match="bad.qsv"):
            load_state(path)


class TestTextFormat:
    def test_bell_pair(self):
        state = decode_text_state("# bell pair\nn=2\n1,0.7071067811865476,0\n2,0.7071067811865476,0\n")
        np.testing.assert_allclose(state.amplitudes, make_w(2).amplitudes, atol=1e-15)

    def test_complex_amplitudes(self):
        state = decode_text_state("n=1\n0,0.6,0\n1,0,0.8\n")
        assert state.amplitudes[1] == pytest.approx(0.8j)

    def test_detected_from_bytes(self):
        data = b"n=1\n0,1,0\n"
        assert detect_kind(data) == "text"
        assert parse_state(data).n == 1

    @pytest.mark.parametrize(
        "text, invariant",
        [
            ("0,1,0\n", "header"),
            ("n=x\n0,1,0\n", "header"),
            ("n=2\n0,1\n", "syntax"),
            ("n=2\n0,1,0\n0,0,0\n", "syntax"),
            ("n=2\n4,1,0\n", "length"),
            ("n=2\n0,0.5,0\n", "normalization"),
            ("n=1\n0,nan,0\n", "normalization"),
            ("n=1\n0,1,0\n1,0,inf\n", "normalization"),
        ],
    )
    def test_malformed(self, text, invariant):
        with pytest.raises(StateFormatError) as info:
            decode_text_state(text)
        assert info.value.invariant == invariant


class TestSweepCsv:
    def test_reload(self, tmp_path):
        original = sweep(make_random(7, 5))
        path = tmp_path / "sweep.csv"
        repo.write_bytes(path, make_sweep_csv_bytes(original))
        reloaded = load_sweep_csv(path)
        assert (reloaded.n, reloaded.n_A, reloaded.n_p) == (7, 3, 35)
        assert reloaded.masks() == original.masks()
        # 17 significant digits survive the text round trip
        assert np.array_equal(reloaded.participations(), original.participations())

    def test_header_and_rows(self):
        text = make_sweep_csv_bytes(sweep(make_ghz(4))).decode()
        lines = text.splitlines()
        assert lines[0] == "mask_hex,n_A,purity,participation"
        assert lines[1].startswith("0x3,2,")
        assert len(lines) == 7

    def test_detected_as_sweep(self):
        data = make_sweep_csv_bytes(sweep(make_ghz(4)))
        assert detect_kind(data) == "sweep"
        with pytest.raises(StateFormatError):
            parse_state(data)

    def test_incomplete_sweep(self):
        data = b"mask_hex,n_A,purity,participation\n0x3,2,0.5,2\n"
        with pytest.raises(StateFormatError) as info:
            parse_sweep_csv(data)
        assert info.value.invariant == "length"

    def test_bad_row(self):
        data = b"mask_hex,n_A,purity,participation\nzz,2,0.5,2\n"
        with pytest.raises(StateFormatError) as info:
            parse_sweep_csv(data)
        assert info.value.invariant == "syntax"

    def test_not_utf8(self):
        data = b"mask_hex,n_A,purity,participation\n\xff\xfe\n"
        with pytest.raises(StateFormatError) as info:
            parse_sweep_csv(data)
        assert info.value.invariant == "syntax"


class TestFileRepository:
    def test_write_creates_parents_and_leaves_no_tmp(self, tmp_path):
        path = tmp_path / "nested" / "out.csv"
        repo.write_bytes(path, b"x\n")
        assert path.read_bytes() == b"x\n"
        assert [p.name for p in path.parent.iterdir()] == ["out.csv"]

    def test_missing_file(self, tmp_path):
        with pytest.raises(OutputError):
            repo.read_bytes(tmp_path / "absent.qsv")
