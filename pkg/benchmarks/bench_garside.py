"""Compare the compiled and pure-Python normal form kernels.

    python benchmarks/bench_garside.py [--words 2000] [--strands 8] [--length 40]
"""

import argparse
import random
import time

from hildenkit.braid import garside, normal_form, random_word
from hildenkit.braid import _garside_py


def compiled_kernel():
    try:
        from hildenkit.braid import _garside
    except ImportError:
        return None
    return _garside


def time_kernel(kernel, words, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        for w in words:
            normal_form(w, kernel)
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--words", type=int, default=2000)
    ap.add_argument("--strands", type=int, default=8)
    ap.add_argument("--length", type=int, default=40)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    rng = random.Random(args.seed)
    words = [random_word(rng, rng.randint(2, args.strands), rng.randint(0, args.length)) for _ in range(args.words)]
    print(f"default kernel: {garside.KERNEL}")
    py = time_kernel(_garside_py, words, args.repeat)
    print(f"python    {py:8.3f} s  ({args.words / py:10.0f} words/s)")
    comp = compiled_kernel()
    if comp is None:
        print("compiled  not built")
        return
    if any(normal_form(w, comp) != normal_form(w, _garside_py) for w in words):
        raise SystemExit("kernels disagree")
    c = time_kernel(comp, words, args.repeat)
    print(f"compiled  {c:8.3f} s  ({args.words / c:10.0f} words/s)")
    print(f"speedup   {py / c:8.1f}x")


if __name__ == "__main__":
    main()
