"""Deterministic one-counter automata, m-counter variants and DFAs.

All machines are immutable value objects.  Transition maps may be partial
(the assembly stage builds fragments); ``step`` returns ``None`` when a
partial machine has no move, which callers treat as "no run".
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Iterator, Mapping, Sequence, Union

RESET = "reset"
ZERO, POS = 0, 1

# generated state ids use this prefix so they never collide with user ids
GEN_PREFIX = "__"
SINK = GEN_PREFIX + "sink"

Word = tuple  # tuple of symbol strings


class AutomatonError(ValueError):
    """Raised on malformed machines or inputs that do not fit a machine."""


@dataclass(frozen=True)
class Alphabet:
    symbols: tuple

    def __post_init__(self):
        syms = tuple(self.symbols)
        object.__setattr__(self, "symbols", syms)
        if not syms:
            raise AutomatonError("alphabet must be non-empty")
        if len(set(syms)) != len(syms):
            raise AutomatonError("alphabet symbols must be distinct")
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(syms)})

    def __iter__(self):
        return iter(self.symbols)

    def __len__(self):
        return len(self.symbols)

    def __contains__(self, sym):
        return sym in self._index

    def index(self, sym: str) -> int:
        try:
            return self._index[sym]
        except KeyError:
            raise AutomatonError(f"unknown symbol {sym!r}") from None

    def key(self, word: Sequence[str]):
        """Sort key realising the length-first lexicographic order."""
        return (len(word), tuple(self.index(s) for s in word))

    def words(self, max_len: int, min_len: int = 0) -> Iterator[Word]:
        """All words with ``min_len <= |w| <= max_len`` in length-lex order."""
        for n in range(min_len, max_len + 1):
            yield from product(self.symbols, repeat=n)

    def check_word(self, word: Sequence[str]) -> Word:
        word = tuple(word)
        for s in word:
            if s not in self._index:
                raise AutomatonError(f"symbol {s!r} not in alphabet {list(self.symbols)}")
        return word

    @property
    def single_char(self) -> bool:
        return all(len(s) == 1 for s in self.symbols)


@dataclass(frozen=True, order=True)
class Configuration:
    state: str
    counter: int = 0

    def __post_init__(self):
        if self.counter < 0:
            raise AutomatonError(f"negative counter in configuration ({self.state}, {self.counter})")

    def __add__(self, k: int) -> "Configuration":
        return Configuration(self.state, self.counter + k)

    def __iter__(self):
        yield self.state
        yield self.counter

    def __repr__(self):
        return f"({self.state},{self.counter})"


def _as_alphabet(alphabet) -> Alphabet:
    return alphabet if isinstance(alphabet, Alphabet) else Alphabet(tuple(alphabet))


@dataclass(frozen=True)
class CounterMachine:
    """Shared carrier for DOCAs (m = 1) and m-DOCAs.

    ``delta`` maps ``(state, test, symbol)`` to ``(state, effect)`` where the
    test is ``min(counter, m)`` and the effect is an int or ``RESET``.
    """

    alphabet: Alphabet
    states: tuple
    initial: str
    finals: frozenset
    delta: Mapping
    m: int = 1
    autocompleted: bool = field(default=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "alphabet", _as_alphabet(self.alphabet))
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "finals", frozenset(self.finals))
        object.__setattr__(self, "delta", dict(self.delta))
        object.__setattr__(self, "_state_set", frozenset(self.states))
        if len(self._state_set) != len(self.states):
            raise AutomatonError("duplicate state ids")
        if self.m < 1:
            raise AutomatonError("m must be a positive integer")

    @property
    def kind(self) -> str:
        return "doca" if type(self) is Doca else "mdoca"

    def __len__(self):
        return len(self.states)

    @property
    def size(self) -> int:
        return len(self.states)

    def test(self, counter: int) -> int:
        return counter if counter < self.m else self.m

    def is_complete(self) -> bool:
        return all(
            (q, t, a) in self.delta
            for q in self.states
            for t in range(self.m + 1)
            for a in self.alphabet
        )

    def initial_configuration(self) -> Configuration:
        return Configuration(self.initial, 0)

    def step(self, conf: Configuration, symbol: str):
        """One transition; ``None`` when a partial machine has no move."""
        q, n = conf
        if q not in self._state_set:
            raise AutomatonError(f"unknown state {q!r}")
        if symbol not in self.alphabet:
            raise AutomatonError(f"unknown symbol {symbol!r}")
        move = self.delta.get((q, self.test(n), symbol))
        if move is None:
            return None
        q2, eff = move
        if eff == RESET:
            return Configuration(q2, 0)
        if n + eff < 0:
            raise AutomatonError(f"counter below zero on ({q}, {n}) --{symbol}-->")
        return Configuration(q2, n + eff)

    def run_from(self, conf: Configuration, word: Iterable[str]):
        for a in word:
            conf = self.step(conf, a)
            if conf is None:
                return None
        return conf

    def run(self, word: Iterable[str]):
        return self.run_from(self.initial_configuration(), word)

    def trace(self, word: Iterable[str], conf: Configuration | None = None) -> list:
        """Every intermediate configuration, starting with ``conf``."""
        conf = self.initial_configuration() if conf is None else conf
        out = [conf]
        for a in word:
            conf = self.step(conf, a)
            if conf is None:
                break
            out.append(conf)
        return out

    def accepts_from(self, conf: Configuration, word: Iterable[str]) -> bool:
        end = self.run_from(conf, word)
        return end is not None and end.state in self.finals

    def accepts(self, word: Iterable[str]) -> bool:
        return self.accepts_from(self.initial_configuration(), word)

    def tests(self):
        return range(self.m + 1)

    def validate(self) -> list:
        problems = []
        if self.initial not in self._state_set:
            problems.append(f"initial state {self.initial!r} not a state")
        for f in self.finals - self._state_set:
            problems.append(f"final state {f!r} not a state")
        for (q, t, a), (q2, eff) in self.delta.items():
            if q not in self._state_set or q2 not in self._state_set:
                problems.append(f"transition ({q}, {t}, {a}) uses unknown state")
            if a not in self.alphabet:
                problems.append(f"transition ({q}, {t}, {a}) uses unknown symbol")
            if not (isinstance(t, int) and 0 <= t <= self.m):
                problems.append(f"transition ({q}, {t}, {a}) has bad test value")
                continue
            if eff == RESET:
                continue
            if not isinstance(eff, int) or abs(eff) > self.m:
                problems.append(f"transition ({q}, {t}, {a}) has effect {eff!r} outside [-{self.m},{self.m}]")
            elif t < self.m and t + eff < 0:
                problems.append(f"transition ({q}, {_test_name(self, t)}, {a}) drives the counter below zero")
        for q in self.states:
            for t in self.tests():
                for a in self.alphabet:
                    if (q, t, a) not in self.delta:
                        problems.append(f"missing transition ({q}, {_test_name(self, t)}, {a})")
        if self.autocompleted:
            problems.append(f"auto-completed: missing transitions routed to {SINK!r}")
        return problems

    def reachable_states(self, roots=None) -> set:
        """States reachable in the transition graph (counter ignored)."""
        roots = [self.initial] if roots is None else list(roots)
        succ = {}
        for (q, _t, _a), (q2, _e) in self.delta.items():
            succ.setdefault(q, set()).add(q2)
        seen = set(roots)
        stack = list(roots)
        while stack:
            q = stack.pop()
            for q2 in succ.get(q, ()):
                if q2 not in seen:
                    seen.add(q2)
                    stack.append(q2)
        return seen

    def restrict(self, keep) -> "CounterMachine":
        keep = set(keep)
        return type(self)(**{
            **self._fields(),
            "states": tuple(q for q in self.states if q in keep),
            "finals": self.finals & keep,
            "delta": {k: v for k, v in self.delta.items() if k[0] in keep and v[0] in keep},
        })

    def _fields(self) -> dict:
        d = dict(alphabet=self.alphabet, states=self.states, initial=self.initial,
                 finals=self.finals, delta=self.delta, autocompleted=self.autocompleted)
        if type(self) is MDoca:
            d["m"] = self.m
        return d

    def complete(self) -> "CounterMachine":
        """Route every missing transition to a fresh non-final sink (effect 0)."""
        if self.is_complete():
            return self
        sink = SINK
        while sink in self._state_set:
            sink += "_"
        states = self.states + (sink,)
        delta = dict(self.delta)
        for q in states:
            for t in self.tests():
                for a in self.alphabet:
                    delta.setdefault((q, t, a), (sink, 0))
        return type(self)(**{**self._fields(), "states": states, "delta": delta,
                             "autocompleted": True})

    def with_initial(self, initial: str) -> "CounterMachine":
        return type(self)(**{**self._fields(), "initial": initial})


def _test_name(machine, t) -> str:
    if machine.m == 1:
        return "zero" if t == 0 else "pos"
    return str(t)


class Doca(CounterMachine):
    """DOCA: zero test, effects in {-1, 0, +1, reset}."""

    def __init__(self, alphabet, states, initial, finals, delta, autocompleted=False, m=1):
        if m != 1:
            raise AutomatonError("a Doca has m = 1")
        super().__init__(alphabet, states, initial, finals, delta, 1, autocompleted)


class MDoca(CounterMachine):
    """m-DOCA: tests 0..m (m meaning ">= m"), effects in [-m, m] or reset."""


@dataclass(frozen=True)
class Dfa:
    alphabet: Alphabet
    states: tuple
    initial: str
    finals: frozenset
    delta: Mapping
    autocompleted: bool = field(default=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "alphabet", _as_alphabet(self.alphabet))
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "finals", frozenset(self.finals))
        object.__setattr__(self, "delta", dict(self.delta))
        object.__setattr__(self, "_state_set", frozenset(self.states))
        if len(self._state_set) != len(self.states):
            raise AutomatonError("duplicate state ids")

    kind = "dfa"

    def __len__(self):
        return len(self.states)

    @property
    def size(self) -> int:
        return len(self.states)

    def is_complete(self) -> bool:
        return all((q, a) in self.delta for q in self.states for a in self.alphabet)

    def step_state(self, q: str, symbol: str) -> str:
        try:
            return self.delta[(q, symbol)]
        except KeyError:
            if q not in self._state_set:
                raise AutomatonError(f"unknown state {q!r}") from None
            if symbol not in self.alphabet:
                raise AutomatonError(f"unknown symbol {symbol!r}") from None
            raise AutomatonError(f"missing transition ({q}, {symbol})") from None

    def run_state(self, word: Iterable[str], start: str | None = None) -> str:
        q = self.initial if start is None else start
        for a in word:
            q = self.step_state(q, a)
        return q

    # counter-machine interface, counter always 0
    def initial_configuration(self) -> Configuration:
        return Configuration(self.initial, 0)

    def step(self, conf: Configuration, symbol: str):
        return Configuration(self.step_state(conf.state, symbol), 0)

    def run_from(self, conf, word):
        return Configuration(self.run_state(word, conf.state), 0)

    def run(self, word):
        return Configuration(self.run_state(word), 0)

    def accepts_from(self, conf, word) -> bool:
        return self.run_state(word, conf.state) in self.finals

    def accepts(self, word) -> bool:
        return self.run_state(word) in self.finals

    def validate(self) -> list:
        problems = []
        if self.initial not in self._state_set:
            problems.append(f"initial state {self.initial!r} not a state")
        for f in self.finals - self._state_set:
            problems.append(f"final state {f!r} not a state")
        for (q, a), q2 in self.delta.items():
            if q not in self._state_set or q2 not in self._state_set:
                problems.append(f"transition ({q}, {a}) uses unknown state")
            if a not in self.alphabet:
                problems.append(f"transition ({q}, {a}) uses unknown symbol")
        for q in self.states:
            for a in self.alphabet:
                if (q, a) not in self.delta:
                    problems.append(f"missing transition ({q}, {a})")
        if self.autocompleted:
            problems.append(f"auto-completed: missing transitions routed to {SINK!r}")
        return problems

    def complete(self) -> "Dfa":
        if self.is_complete():
            return self
        sink = SINK
        while sink in self._state_set:
            sink += "_"
        states = self.states + (sink,)
        delta = dict(self.delta)
        for q in states:
            for a in self.alphabet:
                delta.setdefault((q, a), sink)
        return Dfa(self.alphabet, states, self.initial, self.finals, delta, autocompleted=True)


Machine = Union[Doca, MDoca, Dfa]


def step(machine: Machine, conf: Configuration, symbol: str):
    return machine.step(conf, symbol)


def run(machine: Machine, word: Iterable[str]):
    return machine.run(word)


def accepts(machine: Machine, word: Iterable[str]) -> bool:
    return machine.accepts(word)


def validate(machine: Machine) -> list:
    return machine.validate()


def dfa_as_doca(dfa: Dfa) -> Doca:
    """The DFA as a counter machine that never touches its counter."""
    delta = {}
    for (q, a), q2 in dfa.delta.items():
        delta[(q, ZERO, a)] = (q2, 0)
        delta[(q, POS, a)] = (q2, 0)
    return Doca(dfa.alphabet, dfa.states, dfa.initial, dfa.finals, delta)


def remainder_state(q: str, r: int) -> str:
    return q if r == 0 else f"{GEN_PREFIX}{q}%{r}"


def mdoca_to_doca(machine: CounterMachine) -> Doca:
    """Equivalent DOCA for an m-DOCA.

    A counter value v is stored as ``v mod m`` in the control state and
    ``v div m`` on the counter; each step carries -1, 0 or +1.  With quotient
    zero the stored remainder is the exact counter value, otherwise the
    m-DOCA sees its "at least m" test.  Remainder-0 copies keep the original
    state ids.
    """
    if type(machine) is Doca:
        return machine
    m = machine.m
    states = [remainder_state(q, r) for q in machine.states for r in range(m)]
    finals = {remainder_state(q, r) for q in machine.finals for r in range(m)}
    delta = {}
    for q in machine.states:
        for r in range(m):
            src = remainder_state(q, r)
            for a in machine.alphabet:
                for doca_test, m_test in ((ZERO, r), (POS, m)):
                    move = machine.delta.get((q, m_test, a))
                    if move is None:
                        continue
                    q2, eff = move
                    if eff == RESET:
                        delta[(src, doca_test, a)] = (q2, RESET)
                        continue
                    carry, r2 = divmod(r + eff, m)
                    if doca_test == ZERO and carry < 0:
                        raise AutomatonError(
                            f"m-DOCA transition ({q}, {m_test}, {a}) drives the counter below zero")
                    delta[(src, doca_test, a)] = (remainder_state(q2, r2), carry)
    return Doca(machine.alphabet, states, machine.initial, finals, delta)


def format_word(word, alphabet) -> str:
    """Space-free when every symbol is one character, else comma-separated."""
    alphabet = _as_alphabet(alphabet)
    return ("" if alphabet.single_char else ",").join(word)


def parse_word(text: str, alphabet) -> Word:
    alphabet = _as_alphabet(alphabet)
    text = text.strip()
    if not text:
        return ()
    if "," in text or not alphabet.single_char:
        return alphabet.check_word(s.strip() for s in text.split(","))
    return alphabet.check_word(tuple(text))
