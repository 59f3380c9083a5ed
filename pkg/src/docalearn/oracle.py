"""Teacher: membership queries and minimal-counterexample equivalence queries."""
from __future__ import annotations

import threading
import time
from collections import defaultdict
from dataclasses import dataclass, field

from . import kernels
from .automata import AutomatonError, Configuration, Dfa

DEFAULT_CE_CAP = 96


@dataclass
class QueryStats:
    mq_count: int = 0
    meq_count: int = 0
    max_ce_length: int = 0
    wall_time: dict = field(default_factory=lambda: defaultdict(float))

    def as_dict(self) -> dict:
        return {"mq": self.mq_count, "meq": self.meq_count,
                "max_ce_length": self.max_ce_length,
                "wall_time": dict(self.wall_time)}


def _shared_symbols(m1, m2):
    if set(m1.alphabet.symbols) != set(m2.alphabet.symbols):
        raise AutomatonError("machines must share an alphabet")
    return m1.alphabet.symbols


def min_distinguishing_word(m1, conf1: Configuration, m2, conf2: Configuration,
                            max_len: int, dedup: bool = True, backend: str | None = None):
    """Length-lex smallest word of length <= max_len accepted from exactly one
    of the two configurations, or ``None``.  Symbol order is ``m1``'s."""
    if max_len < 0:
        raise ValueError("max_len must be non-negative")
    symbols = _shared_symbols(m1, m2)
    t1 = kernels.compile_machine(m1, symbols)
    t2 = kernels.compile_machine(m2, symbols)
    c1 = 0 if isinstance(m1, Dfa) else conf1.counter
    c2 = 0 if isinstance(m2, Dfa) else conf2.counter
    try:
        s1, s2 = t1.index[conf1.state], t2.index[conf2.state]
    except KeyError as exc:
        raise AutomatonError(f"unknown state {exc.args[0]!r}") from None
    found = kernels.distinguish(t1, s1, c1, t2, s2, c2, len(symbols), max_len,
                                dedup=dedup, backend=backend)
    if found is None:
        return None
    return tuple(symbols[a] for a in found)


def find_counterexample(m1, m2, max_len: int, **kw):
    return min_distinguishing_word(m1, m1.initial_configuration(),
                                   m2, m2.initial_configuration(), max_len, **kw)


def default_ce_bound(profile, target_size: int, cap: int = DEFAULT_CE_CAP) -> int:
    """profile.f(docasize(|target|)) capped by ``cap``."""
    return min(profile.f(profile.docasize(target_size)), cap)


class TeacherError(RuntimeError):
    pass


class Teacher:
    """Answers queries about a hidden target DOCA.  Safe to share across threads."""

    def __init__(self, target, ce_length_bound: int = DEFAULT_CE_CAP, transcript=None):
        if ce_length_bound < 1:
            raise ValueError("ce_length_bound must be positive")
        self._target = target
        self.alphabet = target.alphabet
        self.ce_length_bound = ce_length_bound
        self.stats = QueryStats()
        self.transcript = transcript
        self._lock = threading.Lock()
        symbols = target.alphabet.symbols
        table = kernels.compile_machine(target, symbols)
        self._sym = {a: i for i, a in enumerate(symbols)}
        self._runner = kernels.runner(table, len(symbols))
        self._start = table.index[target.initial]

    @property
    def mq_count(self) -> int:
        return self.stats.mq_count

    @property
    def meq_count(self) -> int:
        return self.stats.meq_count

    @property
    def target_size(self) -> int:
        return self._target.size

    def _log(self, line: str):
        if self.transcript is not None:
            self.transcript.write(line + "\n")

    def membership(self, word) -> bool:
        word = self.alphabet.check_word(word)
        answer = self._runner.accepts(self._start, 0, [self._sym[a] for a in word])
        with self._lock:
            self.stats.mq_count += 1
            self._log(f"MQ {' '.join(word)} -> {int(answer)}")
        return answer

    def minimal_equivalence_query(self, hypothesis):
        """``None`` for yes, otherwise the minimal counterexample word."""
        t0 = time.perf_counter()
        ce = find_counterexample(hypothesis, self._target, self.ce_length_bound)
        if ce is not None:
            # the kernel answer is re-checked by direct simulation
            assert hypothesis.accepts(ce) != self._target.accepts(ce), ce
        with self._lock:
            self.stats.meq_count += 1
            self.stats.wall_time["meq"] += time.perf_counter() - t0
            if ce is not None:
                self.stats.max_ce_length = max(self.stats.max_ce_length, len(ce))
            self._log("MEQ -> OK" if ce is None else f"MEQ -> CE {' '.join(ce)}")
        return ce


def membership(teacher: Teacher, word) -> bool:
    return teacher.membership(word)


def minimal_equivalence_query(teacher: Teacher, hypothesis):
    return teacher.minimal_equivalence_query(hypothesis)
