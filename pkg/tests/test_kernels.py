import pytest
from hypothesis import given, strategies as st

from docalearn import kernels
from docalearn.testkit import random_doca

needs_c = pytest.mark.skipif(kernels.BACKEND != "cython", reason="compiled kernels not built")


def tables(a, b):
    syms = a.alphabet.symbols
    return kernels.compile_machine(a, syms), kernels.compile_machine(b, syms), len(syms)


def test_backend_is_reported():
    assert kernels.BACKEND in ("cython", "python")


@needs_c
@given(st.integers(1, 5), st.integers(0, 10 ** 6), st.floats(0, 0.3), st.integers(0, 12))
def test_distinguish_backends_agree(n, seed, reset, bound):
    a = random_doca(n, seed=seed, reset_prob=reset)
    b = random_doca(n, seed=seed + 11, reset_prob=reset)
    t1, t2, k = tables(a, b)
    s1, s2 = t1.index[a.initial], t2.index[b.initial]
    got = [kernels.distinguish(t1, s1, 0, t2, s2, 0, k, bound, backend=be)
           for be in ("cython", "python")]
    assert got[0] == got[1]


@needs_c
@given(st.integers(1, 5), st.integers(0, 10 ** 6), st.lists(st.sampled_from("ab"), max_size=30))
def test_runner_backends_agree(n, seed, word):
    d = random_doca(n, seed=seed, reset_prob=0.2)
    t = kernels.compile_machine(d, d.alphabet.symbols)
    idx = [d.alphabet.index(a) for a in word]
    s = t.index[d.initial]
    c_run = kernels.runner(t, 2, backend="cython")
    p_run = kernels.runner(t, 2, backend="python")
    assert c_run.run(s, 0, idx) == p_run.run(s, 0, idx)
    assert p_run.accepts(s, 0, idx) == d.accepts(word)


def test_python_runner_matches_simulation(leadmatch):
    t = kernels.compile_machine(leadmatch, leadmatch.alphabet.symbols)
    r = kernels.runner(t, 3, backend="python")
    for w in leadmatch.alphabet.words(6):
        idx = [leadmatch.alphabet.index(a) for a in w]
        assert r.accepts(t.index[leadmatch.initial], 0, idx) == leadmatch.accepts(w)
