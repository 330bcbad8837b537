"""Compare the jitted distance kernels against the pure-Python fallback.

The backend is fixed at import time by SPELLKIT_NUMBA, so each backend is
timed in its own subprocess and the parent prints the comparison.

Usage: python3 benchmarks/bench_distance.py [--pairs N] [--queries N] [--words N]
"""

import argparse
import json
import os
import statistics
import subprocess
import sys
import time

ALPHABET = "ابپتثجچحخدذرزژسشصضطظعغفقکگلمنوهی"


def build_workload(n_words: int, n_pairs: int, n_queries: int):
    import numpy as np

    rng = np.random.default_rng(np.random.PCG64(42))

    def word() -> str:
        ln = int(rng.integers(3, 11))
        return "".join(ALPHABET[int(k)] for k in rng.integers(0, len(ALPHABET), ln))

    words = set()
    while len(words) < n_words:
        words.add(word())
    pairs = [(word(), word()) for _ in range(n_pairs)]
    queries = [word() for _ in range(n_queries)]
    return sorted(words), pairs, queries


def run_worker(args) -> dict:
    from spellkit._kernels import backend_name
    from spellkit.editops import (
        CandidateIndex,
        PackedLexicon,
        full_scan_candidates,
        osa_distance,
    )
    from spellkit.lexicon import from_words

    words, pairs, queries = build_workload(args.words, args.pairs, args.queries)
    lex = from_words(words)
    packed = PackedLexicon.build(lex)
    index = CandidateIndex(lex, max_dist=2)

    # Warm-up triggers JIT compilation so it is not billed to the timings.
    osa_distance(*pairs[0])
    full_scan_candidates(queries[0], packed, 2)
    index.lookup(queries[0], 2)

    def timed(fn) -> float:
        samples = []
        for _ in range(args.repeats):
            t0 = time.perf_counter()
            fn()
            samples.append(time.perf_counter() - t0)
        return statistics.median(samples)

    timings = {
        "pairwise": timed(lambda: [osa_distance(a, b) for a, b in pairs]),
        "full_scan": timed(
            lambda: [full_scan_candidates(q, packed, 2) for q in queries]
        ),
        "indexed_lookup": timed(lambda: [index.lookup(q, 2) for q in queries]),
    }
    return {"backend": backend_name(), "timings": timings}


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--pairs", type=int, default=20_000)
    parser.add_argument("--queries", type=int, default=100)
    parser.add_argument("--words", type=int, default=2_000)
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--worker", action="store_true", help=argparse.SUPPRESS)
    args = parser.parse_args()

    if args.worker:
        json.dump(run_worker(args), sys.stdout)
        return

    results = {}
    for flag in ("1", "0"):
        env = dict(os.environ, SPELLKIT_NUMBA=flag)
        cmd = [sys.executable, os.path.abspath(__file__), "--worker"]
        for name in ("pairs", "queries", "words", "repeats"):
            cmd += [f"--{name}", str(getattr(args, name))]
        out = subprocess.run(cmd, env=env, capture_output=True, text=True, check=True)
        payload = json.loads(out.stdout)
        results[payload["backend"]] = payload["timings"]

    scenarios = {
        "pairwise": f"{args.pairs:,} distance calls",
        "full_scan": f"{args.queries} queries x {args.words:,}-word scan",
        "indexed_lookup": f"{args.queries} queries, delete-neighborhood index",
    }
    width = max(len(v) for v in scenarios.values())
    print(f"{'scenario'.ljust(width)}  {'python':>10}  {'numba':>10}  speedup")
    for key, label in scenarios.items():
        py, nb = results["python"][key], results["numba"][key]
        print(
            f"{label.ljust(width)}  {py * 1000:>8.1f}ms  {nb * 1000:>8.1f}ms"
            f"  {py / nb:>6.1f}x"
        )


if __name__ == "__main__":
    main()
