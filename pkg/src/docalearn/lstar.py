"""Angluin's L* with a length-bounded stopping rule.

Learning stops once the teacher says yes or returns a counterexample longer
than ``k``: the teacher always returns the minimal counterexample, so a long
one certifies agreement on every word of length <= k.
"""
from __future__ import annotations

import hashlib

from .automata import Dfa, dfa_as_doca


class LearnerError(RuntimeError):
    pass


class ObservationTable:
    """Prefix set S, suffix set E and the membership answers behind them."""

    def __init__(self, teacher):
        self.teacher = teacher
        self.alphabet = teacher.alphabet
        self.prefixes = [()]
        self._prefix_set = {()}
        self.suffixes = [()]
        self.entries = {}
        self._rows = {}

    def mq(self, word) -> bool:
        word = tuple(word)
        v = self.entries.get(word)
        if v is None:
            v = self.entries[word] = self.teacher.membership(word)
        return v

    def row(self, u) -> tuple:
        r = self._rows.get(u, ())
        if len(r) < len(self.suffixes):
            r = r + tuple(self.mq(u + e) for e in self.suffixes[len(r):])
            self._rows[u] = r
        return r

    def add_prefix(self, u) -> bool:
        u = tuple(u)
        if u in self._prefix_set:
            return False
        self.prefixes.append(u)
        self._prefix_set.add(u)
        return True

    def add_suffix(self, e) -> bool:
        e = tuple(e)
        if e in self.suffixes:
            return False
        self.suffixes.append(e)
        return True

    def fill(self):
        for u in self.prefixes:
            self.row(u)
            for a in self.alphabet:
                self.row(u + (a,))

    def close(self) -> bool:
        """Promote unmatched one-letter extensions; False when already closed."""
        rows = {self.row(u) for u in self.prefixes}
        changed = False
        i = 0
        while i < len(self.prefixes):
            u = self.prefixes[i]
            for a in self.alphabet:
                r = self.row(u + (a,))
                if r not in rows:
                    rows.add(r)
                    self.add_prefix(u + (a,))
                    changed = True
            i += 1
        return changed

    def make_consistent(self) -> bool:
        """Add one separating suffix a.e; False when consistent."""
        groups = {}
        for u in self.prefixes:
            groups.setdefault(self.row(u), []).append(u)
        for members in groups.values():
            first = members[0]
            for other in members[1:]:
                for a in self.alphabet:
                    r1, r2 = self.row(first + (a,)), self.row(other + (a,))
                    if r1 != r2:
                        i = next(i for i, (x, y) in enumerate(zip(r1, r2)) if x != y)
                        self.add_suffix((a,) + self.suffixes[i])
                        return True
        return False

    def is_prefix_closed(self) -> bool:
        return all(u[:i] in self._prefix_set for u in self.prefixes for i in range(len(u)))

    def is_suffix_closed(self) -> bool:
        es = set(self.suffixes)
        return () in es and all(e[i:] in es for e in self.suffixes for i in range(len(e)))

    def stabilise(self):
        self.fill()
        while self.close() or self.make_consistent():
            pass

    def state_ids(self) -> dict:
        """row -> stable id derived from the row bits."""
        ids = {}
        used = set()
        for u in sorted(self.prefixes, key=self.alphabet.key):
            r = self.row(u)
            if r in ids:
                continue
            digest = hashlib.blake2b("".join("1" if b else "0" for b in r).encode(),
                                     digest_size=8).hexdigest()
            size = 6
            while "h" + digest[:size] in used:
                size += 1
            ids[r] = "h" + digest[:size]
            used.add(ids[r])
        return ids

    def hypothesis(self) -> Dfa:
        ids = self.state_ids()
        delta = {}
        finals = set()
        for u in self.prefixes:
            q = ids[self.row(u)]
            if self.mq(u):
                finals.add(q)
            for a in self.alphabet:
                delta[(q, a)] = ids[self.row(u + (a,))]
        states = sorted(set(ids.values()), key=list(ids.values()).index)
        return Dfa(self.alphabet, states, ids[self.row(())], finals, delta)


def counterexample_to_table(table: ObservationTable, ce) -> ObservationTable:
    ce = tuple(ce)
    for i in range(len(ce) + 1):
        table.add_prefix(ce[:i])
    table.fill()
    return table


class LStar:
    """One bounded L* run; keeps the hypotheses and counterexamples seen."""

    def __init__(self, teacher, k: int):
        if k < 1:
            raise ValueError("k must be >= 1")
        self.teacher = teacher
        self.k = k
        self.table = ObservationTable(teacher)
        self.meq_count = 0
        self.counterexamples = []
        self.hypotheses = []

    def run(self) -> Dfa:
        table = self.table
        while True:
            table.stabilise()
            hyp = table.hypothesis()
            self.hypotheses.append(hyp)
            self.meq_count += 1
            ce = self.teacher.minimal_equivalence_query(dfa_as_doca(hyp))
            if ce is None or len(ce) > self.k:
                return hyp
            ce = tuple(ce)
            if hyp.accepts(ce) == table.mq(ce):
                raise LearnerError(f"teacher returned {ce!r} but hypothesis and MQ agree on it")
            self.counterexamples.append(ce)
            counterexample_to_table(table, ce)


def learn_behavioral_dfa(teacher, k: int) -> Dfa:
    """A complete DFA agreeing with the teacher's target on all words of length <= k."""
    return LStar(teacher, k).run()
