"""Fixtures, random machines and brute-force oracles."""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .automata import RESET, AutomatonError, Doca, MDoca
from . import serialization

LANGUAGE_GUARD = 10 ** 7


@dataclass(frozen=True)
class Fixture:
    name: str
    target: Doca
    description: str
    bound: int = 12


_DESCRIPTIONS = {
    "anbn": ("a^n b^n for n >= 1", 12),
    "primematch": ("a^n p_i b^(n-1) a where i in {2,3} divides n", 14),
    "leadmatch": ("a^m b^n c a^k b^k c with m > n (uses reset)", 12),
    "allaccept": ("every word, 2 states", 12),
    "stressor": ("random 3-state DOCA whose first candidate sequence fails", 12),
}

FIXTURE_NAMES = tuple(_DESCRIPTIONS)


def fixture_names():
    return [n for n in FIXTURE_NAMES
            if resources.files("docalearn.fixtures").joinpath(n + ".json").is_file()]


@lru_cache(maxsize=None)
def load_fixture(name: str) -> Fixture:
    res = resources.files("docalearn.fixtures").joinpath(name + ".json")
    if not res.is_file():
        raise KeyError(f"no fixture named {name!r}")
    target = serialization.loads(res.read_text(encoding="utf-8"))
    desc, bound = _DESCRIPTIONS.get(name, ("", 12))
    return Fixture(name, target, desc, bound)


def all_fixtures():
    return [load_fixture(n) for n in fixture_names()]


def _effect(rng, lo, hi, reset_prob):
    if reset_prob and rng.random() < reset_prob:
        return RESET
    return rng.randint(lo, hi)


def random_doca(n_states: int, alphabet=("a", "b"), seed=0, reset_prob: float = 0.0,
                final_prob: float = 0.5) -> Doca:
    """Total DOCA with uniformly drawn transitions; reproducible from ``seed``."""
    if n_states < 1:
        raise ValueError("n_states must be >= 1")
    rng = random.Random(seed)
    states = [f"s{i}" for i in range(n_states)]
    finals = [q for q in states if rng.random() < final_prob]
    delta = {}
    for q in states:
        for t in (0, 1):
            for a in alphabet:
                lo = 0 if t == 0 else -1
                delta[(q, t, a)] = (rng.choice(states), _effect(rng, lo, 1, reset_prob))
    return Doca(alphabet, states, states[0], finals, delta)


def random_mdoca(n_states: int, m: int, alphabet=("a", "b"), seed=0,
                 reset_prob: float = 0.0) -> MDoca:
    rng = random.Random(seed)
    states = [f"s{i}" for i in range(n_states)]
    finals = [q for q in states if rng.random() < 0.5]
    delta = {}
    for q in states:
        for t in range(m + 1):
            for a in alphabet:
                lo = -t if t < m else -m
                delta[(q, t, a)] = (rng.choice(states), _effect(rng, lo, m, reset_prob))
    return MDoca(alphabet, states, states[0], finals, delta, m=m)


def brute_language(machine, max_len: int) -> set:
    """Every accepted word of length <= max_len, by plain simulation."""
    k = len(machine.alphabet)
    total = sum(k ** i for i in range(max_len + 1))
    if total > LANGUAGE_GUARD:
        raise ValueError(f"refusing to enumerate {total} words (limit {LANGUAGE_GUARD})")
    return {w for w in machine.alphabet.words(max_len) if machine.accepts(w)}


def brute_min_distinguishing(m1, m2, max_len: int, conf1=None, conf2=None):
    """Length-lex first word on which the machines disagree, by enumeration."""
    conf1 = conf1 or m1.initial_configuration()
    conf2 = conf2 or m2.initial_configuration()
    for w in m1.alphabet.words(max_len):
        if m1.accepts_from(conf1, w) != m2.accepts_from(conf2, w):
            return w
    return None


def brute_factorizations(word, n: int, min_r: int):
    """All (x, y, r, z) with word = x y^r z, y non-empty, r >= min_r and
    |x|, |y|, |z| <= 2n(n^2+1)."""
    word = tuple(word)
    cap = 2 * n * (n * n + 1)
    out = []
    L = len(word)
    for i in range(min(cap, L) + 1):
        for j in range(1, min(cap, L - i) + 1):
            y = word[i:i + j]
            for r in range(max(min_r, 1), (L - i) // j + 1):
                if word[i:i + r * j] != y * r:
                    break
                z = word[i + r * j:]
                if len(z) <= cap:
                    out.append((word[:i], y, r, z))
    return out


def is_d_winning(seq, target, d: int) -> bool:
    """True iff the witness words x y^(r+i) z of ``seq`` reach configurations
    (s, c + i*d) of ``target`` for one state s, over the whole index range."""
    confs = []
    for j in seq.indices():
        conf = target.run(seq.word(j))
        if conf is None:
            return False
        confs.append(conf)
    s, c0 = confs[0]
    lo = seq.lo
    return all(q == s and c == c0 + (j - lo) * d
               for j, (q, c) in zip(seq.indices(), confs))


def check_machine(machine):
    problems = machine.validate()
    if problems:
        raise AutomatonError("; ".join(problems))
    return machine


def restricted_violation_on(word, partial, dfa, p, brdclr: dict, partition, start=None):
    """The restricted-equivalence clause ("1" or "2") that ``word`` violates,
    or None, by replaying the word alone."""
    from .automata import Configuration
    start = partial.initial if start is None else start
    fin_a, fin_b = dfa.finals, partial.finals
    word = tuple(word)

    def clause1():
        conf, q = Configuration(brdclr[p], 0), p
        if (conf.state in fin_b) != (q in fin_a):
            return True
        for a in word:
            c2 = partial.step(conf, a)
            if c2 is None:
                return not (q in partition.brd and q != p and conf.state == brdclr[q])
            conf, q = c2, dfa.step_state(q, a)
            if (conf.state in fin_b) != (q in fin_a):
                return True
        return False

    def clause2():
        inside = partition.ir | {p}
        q, conf = dfa.initial, Configuration(start, 0)
        if q not in inside:
            return False
        for i in range(len(word) + 1):
            if i:
                q = dfa.step_state(q, word[i - 1])
                if q not in inside:
                    return False
                conf = None if conf is None else partial.step(conf, word[i - 1])
            acc = conf is not None and conf.state in fin_b
            if acc != (q in fin_a) or (q == p and (conf is None or conf.state != brdclr[p])):
                return True
        return False

    if clause1():
        return "1"
    if clause2():
        return "2"
    return None


def brute_restricted_violation(partial, dfa, p, brdclr: dict, partition, max_len: int,
                               start=None):
    """Length-lex first word violating restricted equivalence, by replaying
    every word of length <= max_len separately (no state sharing).  Clause 1
    is searched before clause 2."""
    words = list(dfa.alphabet.words(max_len))
    for clause in ("1", "2"):
        for w in words:
            if restricted_violation_on(w, partial, dfa, p, brdclr, partition, start) == clause:
                return w
    return None


def mutants(machine):
    """Single-final-flag flips, then single-transition retargets (each move
    sent to the next state in declaration order), as (label, machine)."""
    states = list(machine.states)
    for q in states:
        yield f"final {q}", type(machine)(machine.alphabet, states, machine.initial,
                                          set(machine.finals) ^ {q}, machine.delta)
    for key, (q2, e) in machine.delta.items():
        alt = states[(states.index(q2) + 1) % len(states)]
        delta = dict(machine.delta)
        delta[key] = (alt, e)
        yield f"move {key} -> {alt}", type(machine)(machine.alphabet, states, machine.initial,
                                                    machine.finals, delta)


def dead_states(machine) -> set:
    """States with no path to a final state in the underlying graph (counter
    ignored, so this under-approximates the truly dead configurations)."""
    back = {}
    for (q, *_), target in machine.delta.items():
        q2 = target[0] if isinstance(target, tuple) else target
        back.setdefault(q2, set()).add(q)
    live = set(machine.finals)
    stack = list(live)
    while stack:
        for q in back.get(stack.pop(), ()):
            if q not in live:
                live.add(q)
                stack.append(q)
    return set(machine.states) - live


def exhaustive_agreement(m1, m2, max_len: int):
    """(first disagreement or None, number of words simulated).

    Every word of length <= max_len is covered: a prefix is cut only when
    both runs are blocked or sit in dead states, where all extensions are
    rejected by both machines."""
    dead1, dead2 = dead_states(m1), dead_states(m2)
    symbols = list(m1.alphabet)
    visited = 0
    stack = [((), m1.initial_configuration(), m2.initial_configuration())]
    while stack:
        w, c1, c2 = stack.pop()
        visited += 1
        a1 = c1 is not None and c1.state in m1.finals
        a2 = c2 is not None and c2.state in m2.finals
        if a1 != a2:
            return w, visited
        if len(w) == max_len:
            continue
        if (c1 is None or c1.state in dead1) and (c2 is None or c2.state in dead2):
            continue
        for a in reversed(symbols):
            stack.append((w + (a,),
                          None if c1 is None else m1.step(c1, a),
                          None if c2 is None else m2.step(c2, a)))
    return None, visited
