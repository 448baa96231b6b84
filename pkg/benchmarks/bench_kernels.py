"""Compare the compiled and pure-Python kernel backends.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--sizes 40 80 160]

Times pattern search (all claw/net/tent embeddings), hole finding and the
chordality test on generated PHCA graphs with planted noise, then one full
kernelization per backend.  Both backends must return identical results.
"""
from __future__ import annotations

import argparse
import statistics
import time

from phcakernel import _kernels
from phcakernel.obstructions import FIXED_PATTERNS
from phcakernel.pipeline import kernelize
from phcakernel.verification import GeneratorSpec, gen_corpus_instance, gen_phca


def _time(fn, repeat: int):
    out, times = None, []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return out, statistics.median(times)


def workloads(n: int):
    spec = GeneratorSpec(seed=n, components=1, cliques=(n // 3, n // 2), clique_size=(1, 3), noise=3)
    dg = gen_phca(spec).dense
    yield "patterns", lambda: [_kernels.embeddings(dg, p, None, limit=1 << 30) for p in FIXED_PATTERNS]
    yield "hole", lambda: _kernels.hole(dg)
    yield "chordal", lambda: _kernels.chordal(dg)


def corpus():
    return [kernelize(*gen_corpus_instance(s)).trace_json() for s in range(40)]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--sizes", type=int, nargs="+", default=[40, 80, 160])
    args = ap.parse_args()
    try:
        _kernels.use_backend("cython")
    except ImportError:
        raise SystemExit("compiled backend not built; run pip install -e . --no-build-isolation")
    print(f"{'workload':<12}{'n':>6}{'python s':>12}{'cython s':>12}{'speedup':>10}")
    cases = [(name, n, fn) for n in args.sizes for name, fn in workloads(n)]
    cases.append(("kernelize", 40, corpus))
    for name, n, fn in cases:
        res, secs = {}, {}
        for backend in ("python", "cython"):
            _kernels.use_backend(backend)
            res[backend], secs[backend] = _time(fn, args.repeat if name != "kernelize" else 1)
        if res["python"] != res["cython"]:
            raise SystemExit(f"backends disagree on {name} n={n}")
        ratio = secs["python"] / secs["cython"] if secs["cython"] else float("inf")
        print(f"{name:<12}{n:>6}{secs['python']:>12.4f}{secs['cython']:>12.4f}{ratio:>9.1f}x")


if __name__ == "__main__":
    main()
