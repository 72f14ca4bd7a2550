"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N] [--heavy]

Each workload runs once per backend; outputs are compared so a speedup
never hides a wrong answer. ``--heavy`` adds the default-bound miner run,
which takes minutes on the Python backend.
"""

import argparse
import time

from finitop import kernels
from finitop.corpus import all_posets
from finitop.limits import all_limit_masks
from finitop.retraction import mined_configs


def _downsets():
    out = []
    for p in all_posets(6):
        out.append(len(kernels.enumerate_downsets(list(p.linear_extension), list(p.below), 1 << 30)))
    return out


def _limit_masks():
    return [len(all_limit_masks(p)) for p in all_posets(6)]


def _miner(extra, size):
    def run():
        return len(mined_configs(extra, size, "fail"))
    return run


WORKLOADS = [
    ("down-sets, posets <= 6", _downsets),
    ("limit sets, posets <= 6", _limit_masks),
    ("miner, bounds (1,3)", _miner(1, 3)),
    ("miner, bounds (2,2)", _miner(2, 2)),
]
HEAVY = [("miner, bounds (2,3)", _miner(2, 3))]


def _time(fn, repeat):
    best, result = None, None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        elapsed = time.perf_counter() - start
        best = elapsed if best is None else min(best, elapsed)
    return best, result


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--heavy", action="store_true")
    args = parser.parse_args()
    if not kernels.COMPILED_AVAILABLE:
        raise SystemExit("compiled kernels are not built; run `pip install -e .` first")
    # Warm corpus caches so both backends time only kernel work.
    all_posets(6)
    workloads = WORKLOADS + (HEAVY if args.heavy else [])
    print(f"{'workload':<28}{'python s':>10}{'cython s':>10}{'speedup':>9}")
    for name, fn in workloads:
        with kernels.using_backend("python"):
            t_py, r_py = _time(fn, 1 if "miner" in name else args.repeat)
        with kernels.using_backend("cython"):
            t_c, r_c = _time(fn, args.repeat)
        if r_py != r_c:
            raise SystemExit(f"{name}: backends disagree ({r_py!r} vs {r_c!r})")
        print(f"{name:<28}{t_py:>10.3f}{t_c:>10.3f}{t_py / t_c:>8.1f}x")


if __name__ == "__main__":
    main()
