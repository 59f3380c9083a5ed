import itertools

import pytest
from hypothesis import given, strategies as st

from docalearn.automata import dfa_as_doca
from docalearn.lstar import LStar, LearnerError, ObservationTable, learn_behavioral_dfa
from docalearn.oracle import Teacher, find_counterexample
from docalearn.testkit import load_fixture, random_doca


def table_invariants(table):
    assert table.is_prefix_closed()
    assert table.is_suffix_closed()
    for u in table.prefixes:
        for a in (None,) + tuple(table.alphabet):
            v = u if a is None else u + (a,)
            for e in table.suffixes:
                assert v + e in table.entries


@given(st.integers(1, 4), st.integers(0, 10 ** 6), st.sampled_from([4, 6, 8]))
def test_hypothesis_agrees_up_to_k(n, seed, k):
    target = random_doca(n, seed=seed, reset_prob=0.15)
    learner = LStar(Teacher(target, 3 * k), k)
    h = learner.run()
    assert h.is_complete()
    assert find_counterexample(dfa_as_doca(h), target, k) is None
    assert learner.meq_count <= h.size + 1
    table_invariants(learner.table)


def test_anbn_behavioral_dfa(anbn):
    h = learn_behavioral_dfa(Teacher(anbn, 30), 10)
    for w in anbn.alphabet.words(10):
        assert h.accepts(w) == anbn.accepts(w)
    # a^i for i <= 5 must be told apart, plus the dead state
    assert h.size >= 7


def test_counterexamples_grow_the_table(primematch):
    learner = LStar(Teacher(primematch, 20), 8)
    learner.run()
    for ce in learner.counterexamples:
        assert all(ce[:i] in learner.table._prefix_set for i in range(len(ce) + 1))
    assert len(learner.hypotheses) == learner.meq_count


def test_stops_on_long_counterexample(anbn):
    # a bounded run must not chase counterexamples beyond k
    learner = LStar(Teacher(anbn, 40), 4)
    h = learner.run()
    assert all(len(ce) <= 4 for ce in learner.counterexamples)
    assert find_counterexample(dfa_as_doca(h), anbn, 4) is None


def test_k_must_be_positive(anbn):
    with pytest.raises(ValueError):
        LStar(Teacher(anbn), 0)


def test_state_ids_are_stable(anbn):
    a = learn_behavioral_dfa(Teacher(anbn, 30), 8)
    b = learn_behavioral_dfa(Teacher(anbn, 30), 8)
    assert a == b
    assert all(q.startswith("h") and len(q) >= 7 for q in a.states)


class LyingTeacher:
    """Returns a counterexample the hypothesis already classifies right."""

    def __init__(self, target):
        self.inner = Teacher(target)
        self.alphabet = target.alphabet

    def membership(self, w):
        return self.inner.membership(w)

    def minimal_equivalence_query(self, hyp):
        return ()


def test_bogus_counterexample_raises(anbn):
    with pytest.raises(LearnerError):
        LStar(LyingTeacher(anbn), 4).run()


def test_observation_table_close_and_consistency(anbn):
    t = ObservationTable(Teacher(anbn))
    t.stabilise()
    assert not t.close()
    assert not t.make_consistent()
    table_invariants(t)


def test_every_minimal_dfa_can_split_one_configuration():
    # every smallest DFA that agrees with the stressor on words of length <= 4
    # sends bba and bbab to different states, although both reach (t1, 2)
    target = load_fixture("stressor").target
    k = 4
    words = list(target.alphabet.words(k))
    acc = {w: target.accepts(w) for w in words}
    assert target.run("bba") == target.run("bbab")

    def agreeing(size):
        for trans in itertools.product(range(size), repeat=2 * size):
            for fin in itertools.product((False, True), repeat=size):
                def run(w, trans=trans):
                    q = 0
                    for a in w:
                        q = trans[2 * q + (a == "b")]
                    return q
                if all(fin[run(w)] == acc[w] for w in words):
                    yield run
    assert not any(True for s in (1, 2) for _ in agreeing(s))
    minimal = list(agreeing(3))
    assert len(minimal) == 2
    assert all(run(tuple("bba")) != run(tuple("bbab")) for run in minimal)
    h = learn_behavioral_dfa(Teacher(target, 12), k)
    assert h.size == 3
