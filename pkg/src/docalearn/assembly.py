"""Partial machines per border state, the restricted-equivalence check,
their union, and the outer learning loop."""
from __future__ import annotations

import time
from dataclasses import dataclass, field

from .automata import RESET, Configuration, Doca, MDoca, mdoca_to_doca
from .coloring import Coloring, Failure, color
from .geometry import partition as make_partition
from .lstar import LStar
from .sequences import enumerate_candidates


class AssemblyError(RuntimeError):
    """Internal invariant broken while assembling a machine."""


class OCLError(RuntimeError):
    def __init__(self, message, last_counterexample=None, per_n=None):
        super().__init__(message)
        self.last_counterexample = last_counterexample
        self.per_n = per_n or []


def border_color(q) -> str:
    return f"[{q}]"


def ir_copy(q) -> str:
    return f"{q}'"


def neg_copy(q, p) -> str:
    return f"{q}@{p}"


def restricted_length_bound(profile, n: int) -> int:
    """Word-length bound for the restricted-equivalence check.

    Desk profiles use half the gap between the border and polytwo: a state
    reached from the border must still be identified correctly by a DFA that
    is only faithful up to polytwo, which needs room for a separating suffix.
    """
    if profile.name == "reference":
        return profile.f(profile.docasize(n))
    return (profile.polytwo(n) - profile.polyone(n)) // 2


@dataclass
class PartialDoca:
    border: str
    machine: Doca
    coloring: Coloring
    neg: frozenset
    source: MDoca
    report: "RestrictedEquivReport"

    @property
    def start(self) -> str:
        return self.coloring.clr0


@dataclass(frozen=True)
class RestrictedEquivReport:
    holds: bool
    witness: tuple | None = None
    clause: str | None = None
    detail: str = ""


def _map_fn(partition, neg, p, brdclr):
    def mp(q):
        if q in partition.ir:
            return ir_copy(q)
        if q in partition.brd:
            return brdclr[q]
        if q in neg:
            return neg_copy(q, p)
        return None
    return mp


def build_partial(dfa, n: int, seq, brdclr: dict, partition, col: Coloring):
    """The 2n-counter machine around one coloring, before conversion."""
    p = seq.center
    m = 2 * n
    neg = frozenset(col.h(c, j) for c in col.colors for j in range(-m, 0)) & partition.roi
    IN = partition.ir | neg
    INB = IN | partition.brd
    mp = _map_fn(partition, neg, p, brdclr)
    step = dfa.step_state
    delta = {}
    for r in sorted(IN | {p}, key=partition.lexmin_words.get):
        for a in dfa.alphabet:
            q = step(r, a)
            if q in INB:
                delta[(mp(r), 0, a)] = (mp(q), 0)
            elif r in neg:
                pick = next(((c, k) for k in range(m + 1) for c in col.colors
                             if col.h(c, k) == q), None)
                if pick is not None:
                    delta[(mp(r), 0, a)] = pick
    # the border's own zero-test moves above take precedence at clr0
    for key, val in col.delta.items():
        delta.setdefault(key, val)
    for (c, a), q in col.resets.items():
        for t in range(m + 1):
            delta.setdefault((c, t, a), (mp(q), RESET))
    for (c1, a), (c2, k) in col.decrements.items():
        for j in range(k):
            target = mp(col.h(c2, j - k))
            if target is not None:
                delta.setdefault((c1, j, a), (target, -j))
    states = list(col.colors)
    for q in sorted(INB, key=partition.lexmin_words.get):
        s = mp(q)
        if s not in states:
            states.append(s)
    finals = set(col.finals) | {mp(q) for q in INB if q in dfa.finals}
    return MDoca(dfa.alphabet, states, mp(dfa.initial), finals, delta, m=m), neg


def partial_oca(dfa, n: int, seq, brdclr: dict, partition, profile=None,
                length_bound: int | None = None, trace=None):
    """A partial DOCA for the border ``seq.center`` or a :class:`Failure`."""
    col = color(dfa, n, seq, brdclr, partition, trace=trace)
    if not col:
        return col
    source, neg = build_partial(dfa, n, seq, brdclr, partition, col)
    doca = mdoca_to_doca(source)
    keep = doca.reachable_states([doca.initial, col.clr0])
    doca = doca.restrict(keep)
    if length_bound is None:
        length_bound = restricted_length_bound(profile, n)
    report = check_restricted_equiv(doca, dfa, seq.center, brdclr, partition, length_bound)
    if not report.holds:
        return Failure(f"restricted equivalence fails ({report.clause}: {report.detail})")
    return PartialDoca(seq.center, doca, col, neg, source, report)


def check_restricted_equiv(partial, dfa, p, brdclr: dict, partition, length_bound: int,
                           start=None) -> RestrictedEquivReport:
    """Both clauses of restricted equivalence for words up to ``length_bound``;
    the witness is the length-lex first violating word."""
    start = partial.initial if start is None else start
    clr_p = brdclr[p]
    fin_a, fin_b = dfa.finals, partial.finals
    symbols = list(dfa.alphabet)

    # clause 1: partial from (brdclr(p), 0) against the DFA from p
    root = (Configuration(clr_p, 0), p)
    seen = {root}
    layer = [(root, ())]
    for depth in range(length_bound + 1):
        nxt = []
        for (conf, q), u in layer:
            if (conf.state in fin_b) != (q in fin_a):
                return RestrictedEquivReport(False, u, "1b",
                                             f"{conf.state} vs {q} disagree on acceptance")
            if depth == length_bound:
                continue
            for a in symbols:
                c2 = partial.step(conf, a)
                if c2 is None:
                    if q not in partition.brd or q == p or conf.state != brdclr[q]:
                        return RestrictedEquivReport(
                            False, u + (a,), "1c",
                            f"partial stuck in {conf.state} while the DFA is in {q}")
                    continue
                pair = (c2, dfa.step_state(q, a))
                if pair not in seen:
                    seen.add(pair)
                    if (c2.state in fin_b) != (pair[1] in fin_a):
                        return RestrictedEquivReport(False, u + (a,), "1b",
                                                     f"{c2.state} vs {pair[1]} disagree on acceptance")
                    nxt.append((pair, u + (a,)))
        layer = nxt
        if not layer:
            break

    # clause 2: runs of the DFA that stay inside ir and p
    inside = partition.ir | {p}
    root = (dfa.initial, Configuration(start, 0))
    if dfa.initial not in inside:
        return RestrictedEquivReport(True)
    seen = {root}
    layer = [(root, ())]
    for depth in range(length_bound + 1):
        nxt = []
        for (q, conf), u in layer:
            acc = conf is not None and conf.state in fin_b
            if acc != (q in fin_a):
                return RestrictedEquivReport(False, u, "2a",
                                             f"DFA state {q} and partial {conf} disagree")
            if q == p and (conf is None or conf.state != clr_p):
                return RestrictedEquivReport(False, u, "2b",
                                             f"DFA reaches {p} but the partial is in {conf}")
            if depth == length_bound:
                continue
            for a in symbols:
                q2 = dfa.step_state(q, a)
                if q2 not in inside:
                    continue
                c2 = None if conf is None else partial.step(conf, a)
                pair = (q2, c2)
                if pair not in seen:
                    seen.add(pair)
                    nxt.append((pair, u + (a,)))
        layer = nxt
        if not layer:
            break
    return RestrictedEquivReport(True)


def ir_copy_machine(dfa, partition, brdclr) -> Doca:
    """The initial region as a counter-free DOCA, border states as stubs."""
    delta = {}
    states = []
    for q in sorted(partition.ir, key=partition.lexmin_words.get):
        states.append(ir_copy(q))
        for a in dfa.alphabet:
            q2 = dfa.step_state(q, a)
            if q2 in partition.ir:
                tgt = ir_copy(q2)
            elif q2 in partition.brd:
                tgt = brdclr[q2]
            else:
                continue
            delta[(ir_copy(q), 0, a)] = (tgt, 0)
    states += [brdclr[q] for q in sorted(partition.brd, key=partition.lexmin_words.get)]
    finals = {ir_copy(q) for q in partition.ir if q in dfa.finals}
    finals |= {brdclr[q] for q in partition.brd if q in dfa.finals}
    return Doca(dfa.alphabet, states, ir_copy(dfa.initial), finals, delta)


def union(parts, alphabet, initial) -> Doca:
    states, finals, delta = [], set(), {}
    seen = set()
    for part in parts:
        for q in part.states:
            if q not in seen:
                seen.add(q)
                states.append(q)
        finals |= set(part.finals)
        for key, val in part.delta.items():
            old = delta.setdefault(key, val)
            if old != val:
                raise AssemblyError(f"conflicting transitions for {key}: {old} vs {val}")
    return Doca(alphabet, states, initial, finals, delta)


@dataclass
class ConstructResult:
    machine: Doca
    dfa: object
    partition: object
    partials: dict = field(default_factory=dict)
    colors_per_border: dict = field(default_factory=dict)
    candidates_tried: dict = field(default_factory=dict)
    failures: dict = field(default_factory=dict)


def construct_oca(teacher, n: int, profile, learner: LStar | None = None,
                  length_bound: int | None = None) -> ConstructResult:
    """Learn the behavioral DFA at polytwo(n) and fold it into a DOCA."""
    k = profile.polytwo(n)
    if learner is None:
        learner = LStar(teacher, k)
    learner.k = k
    dfa = learner.run()
    part = make_partition(dfa, profile, n)
    borders = sorted(part.brd, key=lambda q: dfa.alphabet.key(part.lexmin_words[q]))
    brdclr = {q: border_color(q) for q in borders}
    if length_bound is None:
        length_bound = restricted_length_bound(profile, n)
    l = profile.lsize(n)
    result = ConstructResult(None, dfa, part)
    for p in borders:
        tried, seen, reasons = 0, set(), []
        for seq in enumerate_candidates(dfa, part, p, n, l=l):
            if seq.states in seen:
                continue
            seen.add(seq.states)
            tried += 1
            res = partial_oca(dfa, n, seq, brdclr, part, length_bound=length_bound)
            if res:
                result.partials[p] = res
                result.colors_per_border[p] = len(res.coloring.colors)
                break
            reasons.append(res.reason)
        result.candidates_tried[p] = tried
        if p not in result.partials:
            result.failures[p] = reasons
    base = ir_copy_machine(dfa, part, brdclr)
    parts = [base] + [result.partials[p].machine for p in borders if p in result.partials]
    result.machine = union(parts, dfa.alphabet, base.initial).complete()
    return result


def ocl(teacher, profile, n_max: int = 6, length_bound: int | None = None, log=None,
        results: list | None = None):
    """Increase the size guess until the teacher accepts; (machine, stats).

    ``results`` collects the :class:`ConstructResult` of every round."""
    learner = None
    per_n = []
    ce = None
    t0 = time.perf_counter()
    for n in range(1, n_max + 1):
        if learner is None:
            learner = LStar(teacher, profile.polytwo(n))
        res = construct_oca(teacher, n, profile, learner=learner, length_bound=length_bound)
        if results is not None:
            results.append(res)
        ce = teacher.minimal_equivalence_query(res.machine)
        info = {"n": n, "dfa_states": res.dfa.size, "borders": len(res.partition.brd),
                "colors_per_border": dict(res.colors_per_border),
                "candidates_tried": dict(res.candidates_tried),
                "machine_states": res.machine.size,
                "counterexample": None if ce is None else list(ce)}
        per_n.append(info)
        if log is not None:
            log(info)
        if ce is None:
            stats = {"n_final": n, "mq": teacher.mq_count, "meq": teacher.meq_count,
                     "colors_per_border": info["colors_per_border"],
                     "candidates_tried": info["candidates_tried"],
                     "states": res.machine.size,
                     "seconds": round(time.perf_counter() - t0, 3),
                     "per_n": per_n}
            return res.machine, stats
    raise OCLError(f"no equivalent machine found for n <= {n_max}; last counterexample "
                   f"{ce!r}", ce, per_n)
