"""Time the compiled float kernel against the pure-Python one on random lifted words.

    python benchmarks/bench_kernel.py --spec 0,2,2,3 --words 2000 --length 40

Both kernels must return bit-identical (mid, rad) pairs; the script exits
nonzero otherwise.
"""
import argparse
import random
import sys
import time
from array import array

from circorder import _kernel_py
from circorder.cover import trivial_cover
from circorder.lift import Lift
from circorder.pingpong import build_configuration
from circorder.words import GroupSpec

try:
    from circorder import _kernel
except ImportError:
    _kernel = None


def best_of(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--spec", default="0,2,2,3")
    ap.add_argument("--words", type=int, default=2000)
    ap.add_argument("--length", type=int, default=40)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)

    if _kernel is None:
        print("compiled kernel not built; run `pip install -e . --no-build-isolation` with Cython available")
        return 1
    spec = GroupSpec.parse(args.spec)
    config = build_configuration(spec)
    lift = Lift(config.system, trivial_cover(spec).letter_extras())
    params = lift._fparams
    rng = random.Random(args.seed)
    nl = config.system.nletters
    words = [array("i", [rng.randrange(nl) for _ in range(args.length)]) for _ in range(args.words)]
    x0 = float(config.angle(config.xe(1), 64).mid)

    t_py, r_py = best_of(lambda: _kernel_py.eval_many(params, words, x0, 0.0), args.repeat)
    t_c, r_c = best_of(lambda: _kernel.eval_many(params, words, x0, 0.0), args.repeat)
    same = r_py == r_c
    ev = args.words * args.length
    print(f"spec {spec}: {args.words} words x {args.length} letters, best of {args.repeat}")
    print(f"  python    {t_py * 1e3:9.2f} ms  {ev / t_py / 1e6:7.3f} M letters/s")
    print(f"  compiled  {t_c * 1e3:9.2f} ms  {ev / t_c / 1e6:7.3f} M letters/s")
    print(f"  speedup   {t_py / t_c:9.1f}x")
    print(f"  results bit-identical: {same}")
    return 0 if same else 1


if __name__ == "__main__":
    sys.exit(main())
