"""Compression metrics: ratio, factor, performance, gain and per-block catalyst factor."""
import math
from dataclasses import dataclass, field
from typing import List, Optional

from .entropy import coded_size_bits
from .errors import UndefinedRatioError


def compression_ratio(output_bits, input_bits):
    if input_bits <= 0:
        raise UndefinedRatioError("input size must be positive")
    return output_bits / input_bits


def compression_factor(cr):
    if cr <= 0:
        raise UndefinedRatioError("compression ratio must be positive")
    return 1.0 / cr


def compression_performance(cr):
    """Percent saved: 100 * (1 - cr)."""
    return 100.0 * (1.0 - cr)


def compression_gain(reference_bits, compressed_bits, form="log"):
    """Percent log ratio ``100 * ln(reference / compressed)``.

    ``form="linear"`` gives ``100 * (reference / compressed - 1)`` instead.
    """
    if reference_bits <= 0 or compressed_bits <= 0:
        raise UndefinedRatioError("sizes must be positive")
    ratio = reference_bits / compressed_bits
    if form == "log":
        return 100.0 * math.log(ratio)
    if form == "linear":
        return 100.0 * (ratio - 1.0)
    raise ValueError(f"unknown gain form {form!r}")


def ccfpb_block(codec, original, catalyzed):
    """Catalyst factor for one block.

    ``original`` is the packed original block; ``catalyzed`` is the block's
    serialized triples followed by its packed residual. Both are coded with
    ``codec`` and the coded sizes compared.
    """
    return coded_size_bits(codec, original) / coded_size_bits(codec, catalyzed)


def ccfpb_mean(values):
    values = list(values)
    if not values:
        raise UndefinedRatioError("mean of an empty list")
    return math.fsum(values) / len(values)


@dataclass
class MetricsReport:
    input_bits: int
    output_bits: int
    cr: float
    cf: float
    cp: float
    cg: float
    ccfpb_per_block: List[float] = field(default_factory=list)
    ccfpb_mean: Optional[float] = None
    nb: int = 0
    label: str = ""
    ns_per_byte: Optional[float] = None


def make_report(input_bits, output_bits, ccfpb_values=None, label="", cg_form="log",
                ns_per_byte=None):
    cr = compression_ratio(output_bits, input_bits)
    values = list(ccfpb_values or [])
    return MetricsReport(
        input_bits=input_bits,
        output_bits=output_bits,
        cr=cr,
        cf=compression_factor(cr),
        cp=compression_performance(cr),
        cg=compression_gain(input_bits, output_bits, cg_form),
        ccfpb_per_block=values,
        ccfpb_mean=ccfpb_mean(values) if values else None,
        nb=len(values),
        label=label,
        ns_per_byte=ns_per_byte,
    )
