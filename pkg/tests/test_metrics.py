import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bama.bitio import BitBlock, BitVector, pack_bits, varint_encode
from bama.core import TreatmentParams, encode_block_mode1
from bama.entropy import CodecSelector
from bama.errors import UndefinedRatioError
from bama.metrics import (MetricsReport, ccfpb_block, ccfpb_mean, compression_factor,
                          compression_gain, compression_performance, compression_ratio, make_report)

# published (CR, CF, CP) triples from the two benchmark tables
PUBLISHED = {
    "huffman": (0.1652, 6.0530, 83.48),
    "mode1+huffman": (0.1032, 9.6848, 89.68),
    "mode2+huffman": (0.1001, 9.9874, 89.99),
    "arith": (0.1675, 5.9700, 83.25),
    "mode1+arith": (0.1060, 9.4326, 89.40),
    "mode2+arith": (0.1021, 9.7908, 89.79),
}


def test_ratio_examples():
    assert compression_ratio(60, 100) == pytest.approx(0.6)
    assert compression_ratio(777, 777) == 1.0
    assert compression_ratio(150, 100) > 1  # expansion is reported, not clipped
    with pytest.raises(UndefinedRatioError):
        compression_ratio(10, 0)


def test_factor_examples():
    assert round(compression_factor(0.1652), 4) == 6.0533
    assert round(compression_factor(0.1675), 4) == 5.9701
    assert compression_factor(1.0) == 1.0
    for bad in (0.0, -0.5):
        with pytest.raises(UndefinedRatioError):
            compression_factor(bad)


def test_huffman_column_pair_within_a_thousandth():
    cr, cf, _ = PUBLISHED["huffman"]
    assert abs(cf - 1 / cr) < 0.001


def test_performance_examples():
    assert compression_performance(0.4) == pytest.approx(60.0)
    assert round(compression_performance(0.1652), 2) == 83.48
    assert compression_performance(1.0) == 0.0


@pytest.mark.parametrize("name", list(PUBLISHED))
def test_published_cp_values(name):
    cr, _, cp = PUBLISHED[name]
    assert round(compression_performance(cr), 2) == cp


def test_gain_examples():
    assert compression_gain(500, 500) == 0.0
    # 100 ln 6.0533 = 180.0604, one hundredth below the commonly quoted 180.07
    assert compression_gain(6.0533, 1.0) == pytest.approx(100 * math.log(6.0533))
    assert compression_gain(6.0533, 1.0) == pytest.approx(180.07, abs=0.01)
    assert compression_gain(math.e, 1.0) == pytest.approx(100.0)
    assert compression_gain(3, 2, form="linear") == pytest.approx(50.0)
    with pytest.raises(UndefinedRatioError):
        compression_gain(0, 5)
    with pytest.raises(UndefinedRatioError):
        compression_gain(5, -1)
    with pytest.raises(ValueError):
        compression_gain(5, 1, form="cubic")


def test_ccfpb_mean_examples():
    assert ccfpb_mean([1.37]) == 1.37
    assert ccfpb_mean([1.6] * 9) == pytest.approx(1.6)
    with pytest.raises(UndefinedRatioError):
        ccfpb_mean([])


@given(st.lists(st.floats(0.01, 100.0), min_size=1, max_size=50))
def test_ccfpb_mean_within_bounds(values):
    m = ccfpb_mean(values)
    assert min(values) - 1e-12 <= m <= max(values) + 1e-12


def test_ccfpb_identity_case():
    rng = np.random.default_rng(4)
    original = pack_bits(rng.random(1024) < 0.1)
    # no treatments: side info is the single zero-count varint
    for codec in CodecSelector:
        value = ccfpb_block(codec, original, b"\x00" + original)
        assert value == pytest.approx(1.0, abs=0.06)


def test_ccfpb_ap_block_over_threshold():
    block = BitBlock(0, BitVector.from_positions(1024, range(0, 3 * 342, 3)), 1024)
    cb = encode_block_mode1(block, TreatmentParams())
    side = varint_encode(len(cb.triples)) + b"".join(
        varint_encode(v) for t in cb.triples for v in t)
    value = ccfpb_block(CodecSelector.HUFFMAN, block.bits.to_bytes(), side + cb.residual.bits.to_bytes())
    assert cb.triples and value > 1.2


@given(st.integers(1, 10**9), st.integers(1, 10**9))
def test_report_identities(inp, out):
    r = make_report(inp, out, [1.0, 2.0, 3.0])
    assert r.cr == out / inp
    assert abs(r.cf * r.cr - 1) <= 1e-9
    assert abs(r.cp - 100 * (1 - r.cr)) <= 1e-9
    assert r.ccfpb_mean == 2.0 and r.nb == 3


def test_report_without_blocks():
    r = make_report(100, 100)
    assert isinstance(r, MetricsReport)
    assert r.ccfpb_mean is None and r.nb == 0 and r.cg == 0.0
