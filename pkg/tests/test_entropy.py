import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bama import entropy
from bama._accel import py_func
from bama.bitio import pack_bits
from bama.entropy import CodecSelector, arith, huffman, lzw, rle
from bama.errors import CorruptStreamError

from oracles import optimal_prefix_lengths, order0_entropy_bits

CODECS = list(CodecSelector)
REAL_CODECS = [c for c in CODECS if c is not CodecSelector.NONE]


def _categories(rng, i):
    """Yield one input from each roundtrip category for case i."""
    yield b""
    yield bytes([int(rng.integers(256))])
    yield bytes([int(rng.integers(256))]) * int(rng.integers(1, 3000))
    yield rng.integers(0, 256, int(rng.integers(1, 2000)), dtype=np.uint8).tobytes()
    p = float(rng.choice([0.002, 0.01, 0.024, 0.1]))
    yield pack_bits(rng.random(int(rng.integers(1, 20000))) < p)


@pytest.mark.parametrize("codec", CODECS, ids=lambda c: c.cli_name)
def test_roundtrip_categories(codec):
    rng = np.random.default_rng(int(codec) + 100)
    for i in range(500):
        for data in _categories(rng, i):
            assert entropy.decode(codec, entropy.encode(codec, data)) == data


@given(st.binary(max_size=3000), st.sampled_from(CODECS))
def test_roundtrip_property(data, codec):
    assert entropy.decode(codec, entropy.encode(codec, data)) == data


def test_selector_values_and_names():
    assert [int(c) for c in CodecSelector] == [0, 1, 2, 3, 4]
    for c in CodecSelector:
        assert CodecSelector.parse(c.cli_name) is c
    assert CodecSelector.parse("Arithmetic") is CodecSelector.ARITHMETIC
    with pytest.raises(ValueError):
        CodecSelector.parse("zip")
    with pytest.raises(ValueError):
        CodecSelector(5)


def test_none_is_pass_through():
    d = b"\x00\x01abc"
    assert entropy.encode(CodecSelector.NONE, d) == d
    assert entropy.decode(CodecSelector.NONE, d) == d
    assert entropy.coded_size_bits(CodecSelector.NONE, d) == 8 * len(d)


@pytest.mark.parametrize("codec", REAL_CODECS, ids=lambda c: c.cli_name)
def test_coded_size_bits_is_encoded_length(codec):
    d = b"hello hello hello"
    assert entropy.coded_size_bits(codec, d) == 8 * len(entropy.encode(codec, d))


@pytest.mark.parametrize("codec", REAL_CODECS, ids=lambda c: c.cli_name)
def test_random_bytes_do_not_shrink(codec):
    data = np.random.default_rng(7).integers(0, 256, 1 << 20, dtype=np.uint8).tobytes()
    out = entropy.encode(codec, data)
    assert len(out) >= len(data) - 64
    assert entropy.decode(codec, out) == data


# Huffman ----------------------------------------------------------------------

def test_huffman_three_symbol_example():
    freqs = np.zeros(256, dtype=np.int64)
    freqs[ord("A")], freqs[ord("B")], freqs[ord("C")] = 2, 1, 1
    lengths = huffman.code_lengths(freqs)
    got = (lengths[ord("A")], lengths[ord("B")], lengths[ord("C")])
    assert got == (1, 2, 2)
    cost, best = optimal_prefix_lengths([2, 1, 1])
    assert best == got and cost == 6


@given(st.lists(st.integers(1, 50), min_size=2, max_size=6))
def test_huffman_matches_exhaustive_optimum(freqs):
    lengths = huffman.code_lengths(freqs)
    cost = sum(f * l for f, l in zip(freqs, lengths))
    assert cost == optimal_prefix_lengths(freqs)[0]


@given(st.lists(st.integers(0, 1000), min_size=256, max_size=256))
def test_huffman_codes_prefix_free_and_complete(freqs):
    lengths = huffman.code_lengths(freqs)
    present = [s for s, f in enumerate(freqs) if f]
    assert [s for s, l in enumerate(lengths) if l] == present
    if len(present) >= 2:
        assert sum(2.0 ** -lengths[s] for s in present) == 1.0
    codes = huffman.canonical_codes(lengths)
    words = [format(codes[s], f"0{lengths[s]}b") for s in present]
    for i, a in enumerate(words):
        for j, b in enumerate(words):
            if i != j:
                assert not b.startswith(a)


def test_huffman_single_symbol_gets_one_bit():
    lengths = huffman.code_lengths([0] * 65 + [9] + [0] * 190)
    assert lengths[65] == 1 and sum(lengths) == 1
    data = b"A" * 1000
    out = huffman.encode(data)
    assert huffman.decode(out) == data


def test_huffman_canonical_order():
    lengths = [0] * 256
    lengths[ord("A")], lengths[ord("B")], lengths[ord("C")] = 1, 2, 2
    codes = huffman.canonical_codes(lengths)
    assert (codes[ord("A")], codes[ord("B")], codes[ord("C")]) == (0b0, 0b10, 0b11)


@given(st.binary(min_size=1, max_size=4000))
def test_huffman_size_bound(data):
    out = huffman.encode(data)
    n = len(data)
    # header: length varint plus at most 512 table bytes
    header = len(huffman.encode(data[:0])) + 1 + 512 + 10
    bound_bits = order0_entropy_bits(data) + n
    assert 8 * len(out) <= bound_bits + 8 * header + 8


def test_huffman_uniform_bytes_near_raw():
    data = pack_bits(np.random.default_rng(3).random(8 * 65536) < 0.5)
    out = huffman.encode(data)
    assert len(data) <= len(out) <= len(data) + 600


@pytest.mark.parametrize("cut", [1, 2, 10, -1, -5])
def test_huffman_truncated(cut):
    out = huffman.encode(b"abracadabra" * 20)
    with pytest.raises(CorruptStreamError) as exc:
        huffman.decode(out[:cut])
    assert exc.value.codec == "huffman"


def test_huffman_trailing_and_bad_table():
    out = huffman.encode(b"abracadabra")
    with pytest.raises(CorruptStreamError):
        huffman.decode(out + b"\x00")
    with pytest.raises(CorruptStreamError):
        huffman.decode(b"\x05" + bytes([1, 255]))  # 256 one-bit codes break Kraft


# arithmetic -------------------------------------------------------------------

@pytest.mark.parametrize("p", [0.005, 0.024, 0.1, 0.3])
def test_arith_beats_huffman_on_skewed_bits(p):
    data = pack_bits(np.random.default_rng(11).random(8 * 65536) < p)
    a, h = arith.encode(data), huffman.encode(data)
    assert len(a) <= len(h) + 64
    assert arith.decode(a) == data


def test_arith_close_to_binary_entropy():
    p = 0.024
    n = 8 * 65536
    data = pack_bits(np.random.default_rng(5).random(n) < p)
    h = -(p * math.log2(p) + (1 - p) * math.log2(1 - p))
    assert 8 * len(arith.encode(data)) <= 1.02 * h * n + 512


def test_arith_truncated_and_trailing():
    out = arith.encode(b"some bytes to code" * 10)
    with pytest.raises(CorruptStreamError):
        arith.decode(out[:-3])
    with pytest.raises(CorruptStreamError):
        arith.decode(out + b"\x00")


def test_arith_empty():
    out = arith.encode(b"")
    assert out[0] == 0 and len(out) <= 2
    assert arith.decode(out) == b""


# LZW --------------------------------------------------------------------------

def test_lzw_reset_boundaries():
    rng = np.random.default_rng(1)
    # random bytes create a new phrase almost every code, so this crosses many resets
    data = rng.integers(0, 256, 60000, dtype=np.uint8).tobytes()
    codes = lzw._encode_codes(np.frombuffer(data, dtype=np.uint8))
    assert codes.size > 3 * (lzw.DICT_SIZE - 256)
    assert lzw.decode(lzw.encode(data)) == data


def test_lzw_kwkwk_case():
    for data in (b"aaaaaaa", b"abababababab", b"a" * 10000):
        assert lzw.decode(lzw.encode(data)) == data


def test_lzw_code_width():
    out = lzw.encode(b"abc")
    # three literal codes, 36 bits -> 5 bytes
    assert len(out) == 5


def test_lzw_rejects_bad_code():
    # first code 0xFFF is not in the initial dictionary
    with pytest.raises(CorruptStreamError) as exc:
        lzw.decode(b"\xff\xf0")
    assert exc.value.codec == "lzw"


def test_lzw_rejects_odd_length():
    with pytest.raises(CorruptStreamError):
        lzw.decode(lzw.encode(b"abc")[:-1])


# RLE --------------------------------------------------------------------------

def test_rle_zero_bytes_exact_size():
    data = bytes(1 << 17)
    out = rle.encode(data)
    assert len(out) == 2 * math.ceil((1 << 17) / 127) == 2066
    assert entropy.coded_size_bits(CodecSelector.RLE, data) == 8 * 2066
    assert rle.decode(out) == data


def test_rle_packets():
    assert rle.encode(b"aaaa") == b"\x84a"
    assert rle.encode(b"abc") == b"\x03abc"
    assert rle.encode(b"") == b""


@pytest.mark.parametrize("bad", [b"\x00", b"\x80", b"\x05ab", b"\x82"])
def test_rle_corrupt(bad):
    with pytest.raises(CorruptStreamError) as exc:
        rle.decode(bad)
    assert exc.value.codec == "rle"


# kernels vs interpreted -------------------------------------------------------

def test_jit_and_python_paths_agree():
    rng = np.random.default_rng(9)
    for _ in range(5):
        arr = pack_bits(rng.random(4000) < 0.1)
        a = np.frombuffer(arr, dtype=np.uint8)
        assert np.array_equal(rle._encode(a), py_func(rle._encode)(a))
        assert np.array_equal(lzw._encode_codes(a), py_func(lzw._encode_codes)(a))
        assert np.array_equal(arith._encode(a), py_func(arith._encode)(a))
