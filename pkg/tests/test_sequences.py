import pytest

from docalearn.geometry import partition_by_bounds
from docalearn.sequences import (SequenceError, enumerate_candidates, factorizations,
                                 sequence_states, split_bound)
from docalearn.testkit import brute_factorizations, is_d_winning

from test_geometry import chain_dfa


def test_split_bound():
    assert split_bound(1) == 4
    assert split_bound(2) == 20


def test_factorizations_are_maximal_and_ordered():
    facts = factorizations(tuple("aaaab"), 1)
    assert facts[0] == ((), ("a",), 4, ("b",))
    for x, y, r, z in facts:
        assert r >= 2
        assert x + y * r + z == tuple("aaaab")
        assert z[:len(y)] != y
    keys = [(len(y), len(x)) for x, y, _, _ in facts]
    assert keys == sorted(keys)


def test_factorizations_agree_with_brute_force():
    word = tuple("abababbabab")
    for n in (1, 2):
        mine = {(x, y) for x, y, _, _ in factorizations(word, n)}
        brute = {(x, y) for x, y, _, _ in brute_factorizations(word, n, 2 * n)}
        assert mine == brute


def test_chain_candidates():
    dfa = chain_dfa(12)
    part = partition_by_bounds(dfa, 4, 10)
    cands = enumerate_candidates(dfa, part, "c4", 1, l=3)
    seq = cands[0]
    assert (seq.x, seq.y, seq.r, seq.z) == ((), ("a",), 4, ())
    assert seq.states == tuple(f"c{i}" for i in range(2, 10))
    assert seq.state(0) == "c4"
    assert seq.dump(dfa.alphabet) == "p0=c4 x= y=a r=4 z="
    with pytest.raises(IndexError):
        seq.state(99)
    with pytest.raises(SequenceError):
        enumerate_candidates(dfa, part, "c1", 1, l=3)


def test_candidates_match_brute_force_on_learned(learned, desk_small):
    for item in learned.values():
        for n, res in enumerate(item.results, start=1):
            l = desk_small.lsize(n)
            for p in res.partition.brd:
                cands = enumerate_candidates(res.dfa, res.partition, p, n, l=l)
                w = res.partition.lexmin_words[p]
                brute = {sequence_states(res.dfa, x, y, r, z, -2 * n, l + 2 * n)
                         for x, y, r, z in brute_factorizations(w, n, 2 * n)}
                assert {c.states for c in cands} == brute
                assert all(c.states[2 * n] == p for c in cands)


def test_some_candidate_is_d_winning(learned, desk_small):
    for item in learned.values():
        target = item.fixture.target
        for n, res in enumerate(item.results, start=1):
            for p in res.partition.brd:
                cands = enumerate_candidates(res.dfa, res.partition, p, n, desk_small)
                assert any(is_d_winning(c, target, d) for c in cands
                           for d in range(1, n * n + 1)), (item.fixture.name, n, p)
