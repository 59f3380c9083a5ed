"""Compiled versus pure-Python kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]

Times the pair-BFS behind minimal equivalence queries and the word runner
behind membership queries on the shipped fixtures and on random machines.
"""
import argparse
import random
import time

from docalearn import kernels
from docalearn.assembly import ocl
from docalearn.oracle import Teacher
from docalearn.profiles import load_profile
from docalearn.testkit import load_fixture, random_doca


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def bfs_cases():
    profile = load_profile("desk-small")
    for name in ("anbn", "primematch", "leadmatch"):
        target = load_fixture(name).target
        learned, _ = ocl(Teacher(target), profile)
        yield f"meq {name} vs learned, L=192", learned, target, 192
    # no final states: nothing is ever distinguished, so the whole
    # configuration-pair space up to the bound is explored
    a = random_doca(8, seed=1, reset_prob=0.05, final_prob=0.0)
    b = random_doca(8, seed=2, reset_prob=0.05, final_prob=0.0)
    yield "full pair space, random 8x8, L=150", a, b, 150


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if kernels.BACKEND != "cython":
        print("compiled kernels unavailable; run `pip install --no-build-isolation -e .` first")
        return 1
    print(f"{'case':<42}{'cython s':>11}{'python s':>11}{'speedup':>9}")
    for label, m1, m2, bound in bfs_cases():
        syms = m1.alphabet.symbols
        t1, t2 = kernels.compile_machine(m1, syms), kernels.compile_machine(m2, syms)
        s1, s2 = t1.index[m1.initial], t2.index[m2.initial]
        times = {}
        answers = set()
        for be in ("cython", "python"):
            times[be], out = best_of(lambda: kernels.distinguish(
                t1, s1, 0, t2, s2, 0, len(syms), bound, backend=be), args.repeat)
            answers.add(None if out is None else tuple(out))
        assert len(answers) == 1, "backends disagree"
        print(f"{label:<42}{times['cython']:>11.4f}{times['python']:>11.4f}"
              f"{times['python'] / times['cython']:>8.1f}x")

    target = load_fixture("leadmatch").target
    syms = target.alphabet.symbols
    table = kernels.compile_machine(target, syms)
    rng = random.Random(0)
    words = [[rng.randrange(len(syms)) for _ in range(rng.randrange(1, 60))]
             for _ in range(20000)]
    start = table.index[target.initial]
    times = {}
    for be in ("cython", "python"):
        run = kernels.runner(table, len(syms), backend=be)
        times[be], _ = best_of(lambda: [run.accepts(start, 0, w) for w in words], args.repeat)
    label = "runner leadmatch, 20000 words"
    print(f"{label:<42}{times['cython']:>11.4f}{times['python']:>11.4f}"
          f"{times['python'] / times['cython']:>8.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
