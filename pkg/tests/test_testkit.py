import re

import pytest

from docalearn.automata import RESET, Configuration
from docalearn.oracle import min_distinguishing_word
from docalearn.testkit import (all_fixtures, brute_factorizations, brute_language,
                               fixture_names, load_fixture, random_doca, random_mdoca)


def test_fixture_names():
    assert fixture_names() == ["anbn", "primematch", "leadmatch", "allaccept", "stressor"]
    with pytest.raises(KeyError):
        load_fixture("nope")


def test_fixtures_validate():
    for fx in all_fixtures():
        assert not fx.target.validate(), fx.name
        assert fx.bound >= 8


def test_fixture_sizes():
    sizes = {fx.name: fx.target.size for fx in all_fixtures()}
    assert sizes["anbn"] == 5
    assert sizes["primematch"] == 8
    assert sizes["allaccept"] == 2


def test_random_doca_deterministic():
    assert random_doca(3, seed=9, reset_prob=0.2) == random_doca(3, seed=9, reset_prob=0.2)
    assert random_mdoca(3, 2, seed=9) == random_mdoca(3, 2, seed=9)


def test_no_resets_when_prob_zero():
    d = random_doca(4, seed=1, reset_prob=0.0)
    assert all(e != RESET for _, e in d.delta.values())


def test_random_sweep_validates():
    for seed in range(1000):
        assert not random_doca(3, seed=seed, reset_prob=0.2).validate()


def test_random_doca_rejects_empty():
    with pytest.raises(ValueError):
        random_doca(0)


def test_brute_language_examples(anbn, primematch):
    assert brute_language(anbn, 6) == {tuple("ab"), tuple("aabb"), tuple("aaabbb")}
    assert brute_language(primematch, 7) == {("a", "a", "𝔭₂", "b", "a"),
                                             ("a", "a", "a", "𝔭₃", "b", "b", "a")}
    empty = random_doca(1, seed=0, final_prob=0.0)
    assert brute_language(empty, 5) == set()


def test_brute_language_guard(primematch):
    with pytest.raises(ValueError):
        brute_language(primematch, 12)


def primematch_member(w):
    w = list(w)
    for i, p in ((2, "𝔭₂"), (3, "𝔭₃")):
        if p in w:
            k = w.index(p)
            n = k
            if n >= 1 and n % i == 0 and w == ["a"] * n + [p] + ["b"] * (n - 1) + ["a"]:
                return True
    return False


def test_primematch_against_definition(primematch):
    for w in primematch.alphabet.words(8):
        assert primematch.accepts(w) == primematch_member(w), w


LEAD = re.compile(r"(a*)(b*)c(a*)(b*)c")


def leadmatch_member(w):
    m = LEAD.fullmatch("".join(w))
    return bool(m) and len(m[1]) > len(m[2]) and len(m[3]) == len(m[4])


def test_leadmatch_against_definition(leadmatch):
    for w in leadmatch.alphabet.words(10):
        assert leadmatch.accepts(w) == leadmatch_member(w), w


def test_anbn_against_definition(anbn):
    for w in anbn.alphabet.words(12):
        s = "".join(w)
        n = len(s) // 2
        assert anbn.accepts(w) == (n >= 1 and s == "a" * n + "b" * n)


def test_allaccept():
    d = load_fixture("allaccept").target
    assert len(brute_language(d, 10)) == 2 ** 11 - 1


def test_primematch_caption():
    pm = load_fixture("primematch").target
    assert min_distinguishing_word(pm, Configuration("q1", 6), pm, Configuration("q3", 6), 20) is None
    assert min_distinguishing_word(pm, Configuration("q1", 3), pm, Configuration("q3", 3), 20)


def test_oracle_agreement_all_fixtures():
    for fx in all_fixtures():
        lang = brute_language(fx.target, 6)
        for w in fx.target.alphabet.words(6):
            assert fx.target.accepts(w) == (w in lang)


def test_brute_factorizations_cover_word():
    word = tuple("xabababz")
    facts = brute_factorizations(word, 1, 2)
    assert ((), ("x",), 1, word[1:]) not in facts
    assert (("x",), ("a", "b"), 3, ("z",)) in facts
    for x, y, r, z in facts:
        assert x + y * r + z == word and r >= 2
