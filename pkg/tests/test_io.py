import numpy as np
import pytest

from fftmorph.pgmio import (ParseError, clamp, histogram, read_pgm, read_se,
                            requantize, write_histogram_csv, write_pgm,
                            write_se)
from fftmorph.umbra import GridFunction


class TestReadPgm:
    def test_ascii_minimal(self, tmp_path):
        p = tmp_path / "a.pgm"
        p.write_bytes(b"P2\n2 1\n255\n3 0\n")
        g = read_pgm(p)
        assert g.shape == (1, 2)
        assert g.tonal_max == 255
        assert g.values.tolist() == [[3, 0]]

    def test_ascii_comments(self, tmp_path):
        p = tmp_path / "a.pgm"
        p.write_bytes(b"P2 # graymap\n# dims\n3 2\n15\n0 1 2\n3 4 5\n")
        g = read_pgm(p)
        assert g.values.tolist() == [[0, 1, 2], [3, 4, 5]]
        assert g.tonal_max == 15

    def test_binary_round_trip(self, tmp_path):
        rng = np.random.default_rng(0)
        g = GridFunction(rng.integers(0, 16, (5, 7)), tonal_max=15)
        p = tmp_path / "b.pgm"
        write_pgm(g, p)
        assert read_pgm(p) == g

    def test_ascii_round_trip(self, tmp_path):
        rng = np.random.default_rng(1)
        g = GridFunction(rng.integers(0, 256, (4, 3)), tonal_max=255)
        p = tmp_path / "a.pgm"
        write_pgm(g, p, binary=False)
        assert read_pgm(p) == g

    @pytest.mark.parametrize("blob", [
        b"P6\n1 1\n255\n\x00",           # wrong magic
        b"P2\n0 1\n255\n",               # zero width
        b"P2\n1 1\n300\n5\n",            # maxval too large
        b"P2\n2 1\n255\n3\n",            # missing sample
        b"P2\n1 1\n15\n99\n",            # sample over maxval
        b"P5\n2 2\n255\n\x00\x01",       # truncated payload
        b"P2\n1 1\nhello\n0\n",          # non-integer header
    ])
    def test_malformed(self, tmp_path, blob):
        p = tmp_path / "bad.pgm"
        p.write_bytes(blob)
        with pytest.raises(ParseError):
            read_pgm(p)

    def test_error_carries_offset(self, tmp_path):
        p = tmp_path / "bad.pgm"
        p.write_bytes(b"P2\n1 1\nhello\n0\n")
        with pytest.raises(ParseError) as e:
            read_pgm(p)
        assert e.value.offset == 7


class TestWritePgm:
    def test_rejects_gaps(self, tmp_path):
        g = GridFunction(np.zeros((2, 2), dtype=np.int64),
                         np.array([[True, False], [True, True]]), tonal_max=1)
        with pytest.raises(ValueError):
            write_pgm(g, tmp_path / "x.pgm")

    def test_rejects_negative(self, tmp_path):
        g = GridFunction(np.array([[-1, 0]]), tonal_max=5, signed=True)
        with pytest.raises(ValueError):
            write_pgm(g, tmp_path / "x.pgm")

    def test_clamp_then_write(self, tmp_path):
        g = GridFunction(np.array([[-1, 9]]), tonal_max=9, signed=True)
        c = clamp(g)
        p = tmp_path / "x.pgm"
        write_pgm(c, p)
        assert read_pgm(p).values.tolist() == [[0, 9]]


class TestSeFormat:
    def test_worked_example(self, tmp_path):
        p = tmp_path / "b.se"
        p.write_text("origin: 0 1\n1 2 X 0\n")
        b = read_se(p)
        assert b.lo == (0, -1)
        assert b.to_list() == [[1, 2, None, 0]]

    def test_flat_five(self, tmp_path):
        p = tmp_path / "flat.se"
        rows = "\n".join("0 0 0 0 0" for _ in range(5))
        p.write_text(f"origin: 2 2\n{rows}\n")
        b = read_se(p)
        assert b.lo == (-2, -2)
        assert b.shape == (5, 5)
        assert not b.values.any()
        assert b.gap_free

    def test_identity(self, tmp_path):
        p = tmp_path / "id.se"
        p.write_text("# identity\norigin: 0 0\n0\n")
        b = read_se(p)
        assert b.shape == (1, 1) and b.lo == (0, 0)

    def test_round_trip(self, tmp_path):
        b = GridFunction.from_tokens([[3, None, 1], [0, 2, None]],
                                     lo=(-1, 0), tonal_max=3)
        p = tmp_path / "rt.se"
        write_se(b, p)
        assert read_se(p) == b

    @pytest.mark.parametrize("text", [
        "1 2 3\n",                      # missing origin
        "origin: 0\n1\n",               # one coordinate
        "origin: 0 0\n",                # no rows
        "origin: 0 0\n1 2\n3\n",        # ragged
        "origin: 5 0\n1 2\n",           # origin outside grid
        "origin: 0 0\n1 -2\n",          # negative value
        "origin: 0 0\nX X\n",           # all gaps
        "origin: 0 0\n1 q\n",           # bad token
    ])
    def test_malformed(self, tmp_path, text):
        p = tmp_path / "bad.se"
        p.write_text(text)
        with pytest.raises(ParseError):
            read_se(p)


class TestRequantize:
    def test_eight_to_four_bits(self):
        g = GridFunction(np.array([[0, 128, 255]]), tonal_max=255)
        q = requantize(g, 4)
        assert q.tonal_max == 15
        assert q.values.tolist() == [[0, 7, 15]]

    def test_monotone(self):
        rng = np.random.default_rng(3)
        v = np.sort(rng.integers(0, 256, 40))
        g = GridFunction(v, tonal_max=255)
        for bits in range(1, 9):
            q = requantize(g, bits)
            assert (np.diff(q.values) >= 0).all()
            assert q.values.min() >= 0 and q.values.max() <= (1 << bits) - 1

    def test_identity_at_full_depth(self):
        g = GridFunction(np.array([0, 17, 255]), tonal_max=255)
        assert requantize(g, 8) == g

    def test_bits_range(self):
        g = GridFunction(np.array([0]), tonal_max=1)
        with pytest.raises(ValueError):
            requantize(g, 0)
        with pytest.raises(ValueError):
            requantize(g, 9)


class TestHistogram:
    def test_small(self):
        g = GridFunction(np.array([[0, 1, 1], [3, 1, 0]]), tonal_max=3)
        assert histogram(g).tolist() == [2, 3, 0, 1]

    def test_sums_to_pixels(self):
        rng = np.random.default_rng(4)
        g = GridFunction(rng.integers(0, 8, (9, 9)), tonal_max=7)
        h = histogram(g)
        assert h.sum() == 81 and h.size == 8

    def test_csv(self, tmp_path):
        p = tmp_path / "h.csv"
        write_histogram_csv(np.array([2, 0, 1]), p)
        assert p.read_text() == "value,count\n0,2\n1,0\n2,1\n"
