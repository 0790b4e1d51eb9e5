"""Corpus generation, benchmark tables and the min-run sweep.

Corpora are drawn from numpy's PCG64 generator, so a seed fixes the corpus
byte for byte on every platform.
"""
import csv
import io
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Tuple

import numpy as np

from . import _treat
from .bitio import BitVector
from .core import TreatmentParams
from .entropy import CodecSelector
from .errors import ConfigError
from .pipeline import DEFAULT_BLOCK_SIZE, check_block_size, run_comparison

DEFAULT_LENGTH_BITS = 1 << 20
DEFAULT_P_ONE = 0.024

METRIC_ROWS = ("CR", "CF", "CP", "CG", "CCFPB_mean")
COLUMNS = ("coder_alone", "mode1", "mode2")


@dataclass(frozen=True)
class CorpusSpec:
    kind: str = "bernoulli"
    length_bits: int = DEFAULT_LENGTH_BITS
    p_one: float = DEFAULT_P_ONE
    # (start, step, count, jitter_p) per progression
    ap_components: Tuple[Tuple[int, int, int, float], ...] = ()
    seed: int = 0
    path: Optional[str] = None

    def __post_init__(self):
        if self.kind not in ("bernoulli", "ap_rich", "file"):
            raise ConfigError(f"unknown corpus kind {self.kind!r}")
        if self.kind == "file":
            if self.path is None:
                raise ConfigError("file corpus needs a path")
            if self.ap_components:
                raise ConfigError("ap_components only apply to ap_rich corpora")
            return
        if self.path is not None:
            raise ConfigError("path only applies to file corpora")
        if self.kind == "bernoulli" and self.ap_components:
            raise ConfigError("ap_components only apply to ap_rich corpora")
        if self.length_bits < 1:
            raise ConfigError("length_bits must be positive")
        if not 0.0 <= self.p_one <= 1.0:
            raise ConfigError("p_one must lie in [0, 1]")
        if not 0 <= self.seed < 1 << 64:
            raise ConfigError("seed must be a 64-bit unsigned integer")
        for start, step, count, jitter in self.ap_components:
            if start < 0 or step < 1 or count < 0 or not 0.0 <= jitter <= 1.0:
                raise ConfigError(f"bad AP component {(start, step, count, jitter)}")


def generate(spec):
    if spec.kind == "file":
        return BitVector.from_bytes(Path(spec.path).read_bytes())
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    n = spec.length_bits
    if spec.kind == "bernoulli":
        return BitVector._wrap((rng.random(n) < spec.p_one).astype(np.uint8))
    bits = np.zeros(n, dtype=np.uint8)
    for start, step, count, jitter in spec.ap_components:
        pos = start + step * np.arange(count, dtype=np.int64)
        keep = rng.random(count) >= jitter
        pos = pos[keep & (pos < n)]
        bits[pos] = 1
    bits |= (rng.random(n) < spec.p_one).astype(np.uint8)
    return BitVector._wrap(bits)


def ap_rich_spec(seed=0, length_bits=DEFAULT_LENGTH_BITS, n_components=8, step_range=(3, 17),
                 count_range=(200, 600), jitter=0.05, p_one=0.005):
    """Random AP-rich corpus: progressions with uniform steps, counts and starts, plus noise."""
    rng = np.random.Generator(np.random.PCG64([seed, 0x41502D52]))
    comps = []
    for _ in range(n_components):
        step = int(rng.integers(step_range[0], step_range[1], endpoint=True))
        count = int(rng.integers(count_range[0], count_range[1], endpoint=True))
        span = (count - 1) * step
        start = int(rng.integers(0, max(1, length_bits - span)))
        comps.append((start, step, count, jitter))
    return CorpusSpec(kind="ap_rich", length_bits=length_bits, p_one=p_one,
                      ap_components=tuple(comps), seed=seed)


@dataclass
class BenchTable:
    codec: CodecSelector
    comparison: object

    def rows(self, timing=True):
        reports = self.comparison.reports()
        out = [["metric", *COLUMNS]]
        for name in METRIC_ROWS:
            attr = name.lower()
            out.append([name] + [_fmt(getattr(r, attr)) for r in reports])
        out.append(["ns_per_byte"] + [_fmt(r.ns_per_byte) if timing else "" for r in reports])
        return out

    def cr_reduction(self):
        """Relative CR reduction (percent) of each catalyst mode against the coder alone."""
        base = self.comparison.coder_alone.cr
        return {r.label: 100.0 * (1.0 - r.cr / base)
                for r in (self.comparison.mode1, self.comparison.mode2)}


def _fmt(value):
    if value is None:
        return ""
    return repr(float(value))


def bench(corpus, codecs, params=TreatmentParams(), block_size=DEFAULT_BLOCK_SIZE,
          cg_form="log", allow_small_blocks=False):
    if not codecs:
        raise ConfigError("bench needs at least one coder")
    check_block_size(block_size, allow_small_blocks)
    stream = generate(corpus) if isinstance(corpus, CorpusSpec) else corpus
    return [BenchTable(CodecSelector.parse(c),
                       run_comparison(stream, CodecSelector.parse(c), params, block_size, cg_form,
                                      allow_small_blocks))
            for c in codecs]


def render(rows_list, labels=None, fmt="csv"):
    """Write one or more row tables; tables after the first are separated by a blank line."""
    delimiter = "," if fmt == "csv" else "\t"
    buf = io.StringIO()
    writer = csv.writer(buf, delimiter=delimiter, lineterminator="\n")
    for i, rows in enumerate(rows_list):
        if i:
            buf.write("\n")
        if labels is not None and len(rows_list) > 1:
            buf.write(f"# coder={labels[i]}\n")
        writer.writerows(rows)
    return buf.getvalue()


def render_bench(tables, fmt="csv", timing=True):
    return render([t.rows(timing) for t in tables], [t.codec.cli_name for t in tables], fmt)


@dataclass
class SweepPoint:
    min_run: int
    frequency: int
    probability: float


def sweep_probability_frequency(corpus, min_runs, block_size=DEFAULT_BLOCK_SIZE,
                                allow_small_blocks=False):
    """Acceptance of anchors as the minimum run length tightens.

    Each 1-bit is tried as an anchor against the untouched bits of its block.
    ``frequency`` counts anchors whose best progression reaches ``min_run``;
    ``probability`` is that count over all anchors. An anchor accepted at
    ``k + 1`` is accepted at ``k``, so frequency never increases with min_run.
    """
    min_runs = list(min_runs)
    if not min_runs:
        raise ConfigError("sweep needs at least one min_run value")
    check_block_size(block_size, allow_small_blocks)
    stream = generate(corpus) if isinstance(corpus, CorpusSpec) else corpus
    runs = _treat.run_anchor_lengths(stream.array, block_size)
    anchors = runs.size
    points = []
    for k in min_runs:
        accepted = int(np.count_nonzero(runs >= k))
        points.append(SweepPoint(k, accepted, accepted / anchors if anchors else 0.0))
    return points


def render_sweep(points, fmt="csv"):
    rows = [["min_run", "frequency", "probability"]]
    rows += [[str(p.min_run), str(p.frequency), repr(p.probability)] for p in points]
    return render([rows], fmt=fmt)
