"""Compare the numba kernels against the pure-Python/numpy fallbacks.

    python3 benchmarks/bench_backends.py [--bits N] [--repeat R]

The fallbacks are the code paths taken when BAMA_NO_JIT=1. Treatment search
has a vectorized numpy version; the entropy coders fall back to their plain
Python loops, so those are timed on a smaller input.
"""
import argparse
import time

import numpy as np

from bama import _treat
from bama._accel import HAVE_NUMBA, py_func
from bama.bitio import pack_bits
from bama.entropy import arith, huffman, lzw, rle


def _best(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t0)
    return min(times), result


def _same(a, b):
    if isinstance(a, tuple):
        return all(np.array_equal(x, y) for x, y in zip(a, b))
    return np.array_equal(a, b)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--bits", type=int, default=1 << 18)
    ap.add_argument("--coder-bytes", type=int, default=1 << 14)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not HAVE_NUMBA:
        raise SystemExit("numba is unavailable or disabled; nothing to compare")

    rng = np.random.default_rng(0)
    cases = []
    for p in (0.024, 0.2, 0.5):
        bits = (rng.random(args.bits) < p).astype(np.uint8)
        for mode2 in (False, True):
            label = f"treat p={p} mode{2 if mode2 else 1}"
            cases.append((label,
                          lambda b=bits, m=mode2: _treat.treat_stream(b, 1024, m, 3, True, -1),
                          lambda b=bits, m=mode2: _treat.treat_stream_numpy(b, 1024, m, 3, True, -1)))
    bits = (rng.random(args.bits) < 0.2).astype(np.uint8)
    cases.append(("anchor lengths p=0.2",
                  lambda: _treat.anchor_run_lengths(bits, 1024),
                  lambda: _treat.anchor_run_lengths_numpy(bits, 1024)))

    data = np.frombuffer(pack_bits(rng.random(8 * args.coder_bytes) < 0.024), dtype=np.uint8)
    for name, fn in (("rle encode", rle._encode), ("lzw encode", lzw._encode_codes),
                     ("arith encode", arith._encode)):
        cases.append((name, lambda f=fn: f(data), lambda f=fn: py_func(f)(data)))
    lengths = huffman.code_lengths(np.bincount(data, minlength=256))
    codes = np.array(huffman.canonical_codes(lengths), dtype=np.uint64)
    lengths = np.array(lengths, dtype=np.int64)
    cases.append(("huffman payload",
                  lambda: huffman._encode_payload(data, codes, lengths),
                  lambda: py_func(huffman._encode_payload)(data, codes, lengths)))

    print(f"{'kernel':<26}{'numba s':>10}{'fallback s':>12}{'speedup':>10}  same")
    for label, fast, slow in cases:
        fast()  # compile outside the timing
        tf, a = _best(fast, args.repeat)
        ts, b = _best(slow, max(1, args.repeat // 3))
        print(f"{label:<26}{tf:>10.4f}{ts:>12.4f}{ts / tf:>10.1f}  {_same(a, b)}")


if __name__ == "__main__":
    main()
