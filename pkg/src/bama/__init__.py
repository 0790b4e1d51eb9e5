"""BAMA compression catalyst toolkit."""
from .bitio import BitBlock, BitVector
from .core import Mode, TreatmentParams, Triphthong, decode_block, encode_block, find_treatment
from .entropy import CodecSelector
from .errors import (BamaError, ConfigError, CorruptStreamError, InvalidModulusError,
                     UndefinedRatioError, UnsupportedFormatError)
from .harness import CorpusSpec, ap_rich_spec, bench, generate, sweep_probability_frequency
from .metrics import MetricsReport
from .pipeline import compress, decompress, run_comparison

__version__ = "0.1.0"

__all__ = [
    "BitBlock", "BitVector", "Mode", "TreatmentParams", "Triphthong", "decode_block",
    "encode_block", "find_treatment", "CodecSelector", "BamaError", "ConfigError",
    "CorruptStreamError", "InvalidModulusError", "UndefinedRatioError", "UnsupportedFormatError",
    "CorpusSpec", "ap_rich_spec", "bench", "generate", "sweep_probability_frequency",
    "MetricsReport", "compress", "decompress", "run_comparison",
]
