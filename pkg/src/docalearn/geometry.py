"""Lexicographically minimal witnesses and the region partition of a DFA."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .automata import Configuration


def lexmin_witnesses(dfa) -> dict:
    """state -> length-lex smallest word reaching it from the initial state."""
    best = {dfa.initial: ()}
    queue = deque([dfa.initial])
    while queue:
        q = queue.popleft()
        w = best[q]
        for a in dfa.alphabet:
            q2 = dfa.step_state(q, a)
            if q2 not in best:
                best[q2] = w + (a,)
                queue.append(q2)
    return best


@dataclass(frozen=True)
class RegionPartition:
    ir: frozenset
    brd: frozenset
    roi: frozenset
    lexmin_words: dict = field(compare=False)
    polyone: int = 0
    polytwo: int = 0

    def region(self, q):
        for name in ("ir", "brd", "roi"):
            if q in getattr(self, name):
                return name
        return None

    def regions(self) -> dict:
        out = {q: "ir" for q in self.ir}
        out.update({q: "brd" for q in self.brd})
        out.update({q: "roi" for q in self.roi})
        return out


def partition_by_bounds(dfa, polyone: int, polytwo: int, lexmin=None) -> RegionPartition:
    lexmin = lexmin_witnesses(dfa) if lexmin is None else lexmin
    ir, brd, roi = set(), set(), set()
    for q, w in lexmin.items():
        k = len(w)
        if k < polyone:
            ir.add(q)
        elif k == polyone:
            brd.add(q)
        elif k < polytwo:
            roi.add(q)
    return RegionPartition(frozenset(ir), frozenset(brd), frozenset(roi), lexmin, polyone, polytwo)


def partition(dfa, profile, n: int) -> RegionPartition:
    return partition_by_bounds(dfa, profile.polyone(n), profile.polytwo(n))


def configuration_lexmin(doca, max_depth: int) -> dict:
    """Configuration -> lexmin word, over all configurations reachable with
    words of length <= max_depth."""
    start = doca.initial_configuration()
    best = {start: ()}
    frontier = [start]
    for _ in range(max_depth):
        nxt = []
        for conf in frontier:
            w = best[conf]
            for a in doca.alphabet:
                c2 = doca.step(conf, a)
                if c2 is not None and c2 not in best:
                    best[c2] = w + (a,)
                    nxt.append(c2)
        frontier = nxt
        if not frontier:
            break
    return best


def lexmin_length_bound(n: int, counter: int) -> int:
    return n * counter + n * (n * n + 1)


def check_lexmin_length_bound(doca, max_counter: int, n: int | None = None) -> list:
    """Configurations with counter <= max_counter whose lexmin is too long.

    The search runs to twice the largest bound, so a configuration that is
    reachable only beyond its bound is reported as long as it appears within
    that horizon.
    """
    n = doca.size if n is None else n
    horizon = 2 * lexmin_length_bound(n, max_counter)
    lexmin = configuration_lexmin(doca, horizon)
    out = []
    for conf, w in lexmin.items():
        if conf.counter <= max_counter and len(w) >= lexmin_length_bound(n, conf.counter):
            out.append(f"{conf}: |lexmin| = {len(w)} >= {lexmin_length_bound(n, conf.counter)}")
    return out


def pump(doca, x, y, r: int, z, k: int):
    """Configuration reached by x y^(r+k) z, or None when r + k < 0."""
    if r + k < 0:
        return None
    return doca.run(tuple(x) + tuple(y) * (r + k) + tuple(z))


def lexmin_form(doca, conf: Configuration, word, K: int, n: int | None = None,
                ks=None, max_d: int | None = None):
    """First factorization x y^r z of ``word`` (the lexmin of ``conf``) meeting
    the length, repetition and pumping conditions, with its period d."""
    from .testkit import brute_factorizations
    n = doca.size if n is None else n
    max_d = n * n if max_d is None else max_d
    ks = range(-K, 4) if ks is None else ks
    for x, y, r, z in brute_factorizations(word, n, K):
        for d in range(1, max_d + 1):
            if all(pump(doca, x, y, r, z, k) == conf + k * d for k in ks
                   if conf.counter + k * d >= 0):
                return x, y, r, z, d
    return None
