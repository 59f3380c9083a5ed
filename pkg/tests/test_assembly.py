import re

import pytest

from docalearn.assembly import (AssemblyError, OCLError, border_color, check_restricted_equiv,
                                construct_oca, ir_copy, neg_copy, ocl, restricted_length_bound,
                                union)
from docalearn.automata import Doca
from docalearn.geometry import configuration_lexmin
from docalearn.oracle import Teacher, find_counterexample
from docalearn.profiles import load_profile, reference_profile
from docalearn.testkit import brute_language, brute_restricted_violation, load_fixture


def test_names():
    assert ir_copy("h1") == "h1'"
    assert neg_copy("h1", "h2") == "h1@h2"
    assert border_color("h2") == "[h2]"


def test_restricted_bound(desk_small):
    assert restricted_length_bound(desk_small, 2) == 25
    p = reference_profile()
    assert restricted_length_bound(p, 1) == p.f(p.docasize(1))


def test_allaccept_at_n1():
    t = Teacher(load_fixture("allaccept").target)
    machine, stats = ocl(t, load_profile("desk-small"))
    assert stats["n_final"] == 1 and stats["meq"] <= 2


def test_outputs_are_certified(learned):
    for item in learned.values():
        fresh = Teacher(item.fixture.target, 2 * item.teacher.ce_length_bound)
        assert fresh.minimal_equivalence_query(item.machine) is None
        assert brute_language(item.machine, 8) == brute_language(item.fixture.target, 8)


def test_stats_schema(learned):
    for item in learned.values():
        st = item.stats
        assert {"n_final", "mq", "meq", "colors_per_border", "candidates_tried"} <= set(st)
        assert st["per_n"][-1]["counterexample"] is None
        assert st["states"] == item.machine.size


def test_stressor_needs_a_second_candidate(learned):
    st = learned["stressor"].stats
    assert max(st["candidates_tried"].values()) >= 2


def test_partials_pass_the_gate(learned):
    for item in learned.values():
        for res in item.results:
            for partial in res.partials.values():
                assert partial.report.holds


def test_size_accounting(learned):
    for item in learned.values():
        for n, res in enumerate(item.results, start=1):
            for partial in res.partials.values():
                k = len(partial.coloring.colors)
                assert k <= n ** 3
                assert len(partial.neg) <= 2 * n * k


def split(name, m):
    found = re.fullmatch(r"__(.*)%(\d+)", name)
    return (found[1], int(found[2])) if found else (name, 0)


def test_counter_zero_discipline(learned):
    for item in learned.values():
        m = 2 * len(item.results)
        res = item.final
        copies = {ir_copy(q) for q in res.partition.ir}
        for p, partial in res.partials.items():
            copies |= {neg_copy(q, p) for q in partial.neg}
        borders = {border_color(q) for q in res.partition.brd}
        machine = item.machine
        for conf in configuration_lexmin(machine, 12):
            base, r = split(conf.state, m)
            if base in copies:
                assert conf.counter * m + r == 0, conf
        # the initial region hands over to border colors at counter zero
        for (q, t, a), (q2, e) in machine.delta.items():
            if q in copies and q.endswith("'") and q2 in borders:
                assert t == 0 and e == 0


def test_union_conflict():
    a = Doca(("a",), ["p"], "p", [], {("p", 0, "a"): ("p", 1)})
    b = Doca(("a",), ["p"], "p", [], {("p", 0, "a"): ("p", 0)})
    with pytest.raises(AssemblyError):
        union([a, b], a.alphabet, "p")
    assert union([a, a], a.alphabet, "p").delta == a.delta


def test_n_max_exceeded():
    t = Teacher(load_fixture("anbn").target)
    with pytest.raises(OCLError) as info:
        ocl(t, load_profile("desk-small"), n_max=1)
    assert info.value.last_counterexample is not None
    assert len(info.value.per_n) == 1


def test_construct_is_deterministic(desk_small):
    target = load_fixture("anbn").target
    a = construct_oca(Teacher(target), 2, desk_small).machine
    b = construct_oca(Teacher(target), 2, desk_small).machine
    assert a == b


def test_restricted_equiv_accepts_built_partials(learned, desk_small):
    item = learned["anbn"]
    res = item.final
    brd = {q: border_color(q) for q in res.partition.brd}
    for p, partial in res.partials.items():
        rep = check_restricted_equiv(partial.machine, res.dfa, p, brd, res.partition, 25)
        assert rep.holds and rep.witness is None
        assert brute_restricted_violation(partial.machine, res.dfa, p, brd, res.partition, 8) is None
