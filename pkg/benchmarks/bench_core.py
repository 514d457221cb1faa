"""Compare the compiled kernels with the pure-Python fallback.

Usage: python benchmarks/bench_core.py [--entry ID]

Kernel timings use identical inputs for both implementations and check that
the outputs agree.  The end-to-end timing runs one registry entry in a fresh
process with and without HEISENZHU_PURE=1.
"""

from __future__ import annotations

import argparse
import os
import subprocess
import sys
import timeit
from fractions import Fraction

from heisenzhu import fock


def _inputs():
    vec = {m: Fraction(i + 1, i + 2) for i, m in enumerate(fock.basis_up_to(12))}
    small = {m: Fraction(1, 1 + len(m)) for m in fock.basis_up_to(5)}
    return vec, small


def kernel_table(repeat: int = 5) -> list[tuple[str, float, float]]:
    from heisenzhu import _core

    vec, small = _inputs()
    cases = {
        "raw_add": lambda k: k["raw_add"](dict(vec), vec, Fraction(-1, 3)),
        "raw_apply_mode(-3)": lambda k: k["raw_apply_mode"](-3, vec),
        "raw_apply_mode(2)": lambda k: k["raw_apply_mode"](2, vec),
        "raw_multiply": lambda k: k["raw_multiply"](small, small),
        "raw_shift": lambda k: k["raw_shift"](vec),
    }
    compiled = {name: getattr(_core, name) for name in fock.PURE_KERNELS}
    rows = []
    for name, fn in cases.items():
        assert fn(fock.PURE_KERNELS) == fn(compiled), name
        t_py = min(timeit.repeat(lambda: fn(fock.PURE_KERNELS), number=20, repeat=repeat))
        t_c = min(timeit.repeat(lambda: fn(compiled), number=20, repeat=repeat))
        rows.append((name, t_py, t_c))
    return rows


def end_to_end(entry: str) -> tuple[float, float]:
    code = (
        "import time; from heisenzhu import verify as V; t=time.perf_counter(); "
        f"r=V.verify({entry!r}); assert r.status in ('Proven','Reproduced'); print(time.perf_counter()-t)"
    )
    out = []
    for pure in ("1", ""):
        env = dict(os.environ, HEISENZHU_PURE=pure)
        res = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
        out.append(float(res.stdout.strip()))
    return out[0], out[1]


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--entry", default="one^1two^2four")
    args = ap.parse_args()
    if not fock.HAVE_CORE:
        sys.exit("compiled kernels are not built; run pip install -e . --no-build-isolation")
    print(f"{'kernel':<20} {'python s':>10} {'compiled s':>11} {'speedup':>8}")
    for name, t_py, t_c in kernel_table():
        print(f"{name:<20} {t_py:>10.4f} {t_c:>11.4f} {t_py / t_c:>7.2f}x")
    t_py, t_c = end_to_end(args.entry)
    print(f"\nverify({args.entry!r}): python {t_py:.2f}s, compiled {t_c:.2f}s, speedup {t_py / t_c:.2f}x")


if __name__ == "__main__":
    main()
