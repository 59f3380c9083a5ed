"""Coloring: parallel BFS over a candidate sequence, folded into a 2n-counter machine.

A color stands for a whole sequence of DFA states indexed by [-2n, l+2n];
``h(c, i)`` is the DFA state that color ``c`` represents at counter ``i``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .automata import MDoca


@dataclass(frozen=True)
class Failure:
    reason: str

    def __bool__(self):
        return False


@dataclass
class Coloring:
    n: int
    l: int
    colors: list
    rows: dict
    delta: dict
    finals: set
    clr0: str
    alphabet: object
    resets: dict          # (color, symbol) -> ir state every row lands on
    decrements: dict      # (color, symbol) -> (color, k) for decrement moves

    @property
    def m(self) -> int:
        return 2 * self.n

    def h(self, color, i: int):
        return self.rows[color][i + 2 * self.n]

    def machine(self) -> MDoca:
        return MDoca(self.alphabet, self.colors, self.clr0, self.finals, self.delta, m=self.m)


def _shift_matches(rows, colors, q, lo_off, l, shifts):
    """First (color, shift) with q[i] == h(color, i + shift) on [0, l]."""
    window = q[lo_off:lo_off + l + 1]
    for k in shifts:
        for c in colors:
            row = rows[c]
            if row[lo_off + k:lo_off + k + l + 1] == window:
                return c, k
    return None


def color(dfa, n: int, seq, brdclr: dict, partition, trace=None, budget: int | None = None):
    """Run the coloring from ``seq``; a :class:`Coloring` or a :class:`Failure`."""
    if seq.n != n or len(seq.states) != seq.hi - seq.lo + 1:
        raise ValueError("candidate sequence does not match n")
    budget = n ** 3 if budget is None else budget
    l = seq.l
    off = 2 * n
    p0 = seq.center
    clr0 = brdclr[p0]
    if seq.state(0) != p0:
        raise ValueError("candidate sequence is not centered at its border state")
    rows = {clr0: tuple(seq.states)}
    colors = [clr0]
    queue = deque([clr0])
    step = dfa.step_state
    symbols = list(dfa.alphabet)
    succ = {}
    counter = 0
    while queue:
        if len(colors) > budget:
            return Failure(f"more than {budget} colors")
        c = queue.popleft()
        for a in symbols:
            q = tuple(step(s, a) for s in rows[c])
            succ[(c, a)] = q
            core = set(q[off:off + l + 1])
            if len(core) == 1 and next(iter(core)) in partition.ir:
                if trace is not None:
                    trace.append(f"COLOR {c} SYM {a} -> RESET")
                continue
            hit = _shift_matches(rows, colors, q, off, l, range(-off, off + 1))
            if hit is not None:
                if trace is not None:
                    trace.append(f"COLOR {c} SYM {a} -> MATCH {hit[0]} shift {hit[1]}")
                continue
            counter += 1
            c2 = f"c{counter}@{p0}"
            colors.append(c2)
            rows[c2] = q
            queue.append(c2)
            if trace is not None:
                trace.append(f"COLOR {c} SYM {a} -> NEW {c2}")
    if len(colors) > budget:
        return Failure(f"more than {budget} colors")

    delta, resets, decrements = {}, {}, {}
    m = 2 * n
    for c1 in colors:
        for a in symbols:
            q = succ[(c1, a)]
            core = set(q[off:off + l + 1])
            if len(core) == 1 and next(iter(core)) in partition.ir:
                resets[(c1, a)] = next(iter(core))
                continue
            hit = _shift_matches(rows, colors, q, off, l, range(0, m + 1))
            if hit is not None:
                c2, k = hit
                for t in range(m + 1):
                    delta[(c1, t, a)] = (c2, k)
                continue
            hit = _shift_matches(rows, colors, q, off, l, [-k for k in range(1, m + 1)])
            if hit is not None:
                c2, k = hit[0], -hit[1]
                decrements[(c1, a)] = (c2, k)
                for t in range(k, m + 1):
                    delta[(c1, t, a)] = (c2, -k)
    finals = {c for c in colors if any(s in dfa.finals for s in rows[c])}
    return Coloring(n, l, colors, rows, delta, finals, clr0, dfa.alphabet, resets, decrements)


def check_color_spec(col: Coloring, dfa, partition) -> list:
    """Violations of the coloring guarantees (collapse-or-shift, transition
    faithfulness, index-uniform finals, color budget)."""
    out = []
    n, l, off = col.n, col.l, 2 * col.n
    machine = col.machine()
    from .automata import Configuration
    for c in col.colors:
        for a in dfa.alphabet:
            q = tuple(dfa.step_state(s, a) for s in col.rows[c])
            core = set(q[off:off + l + 1])
            if len(core) == 1 and next(iter(core)) in partition.ir:
                continue
            ok = False
            for c2 in col.colors:
                for j in range(-off, off + 1):
                    if all(q[i + off] == col.h(c2, i + j) for i in range(l + 1)):
                        if all(machine.step(Configuration(c, i), a) == Configuration(c2, i + j)
                               for i in range(l + 1) if i + j >= 0):
                            ok = True
                            break
                if ok:
                    break
            if not ok:
                out.append(f"collapse-or-shift fails for ({c}, {a})")
        for i in range(l + 1):
            for a in dfa.alphabet:
                nxt = machine.step(Configuration(c, i), a)
                if nxt is None or nxt.state not in col.rows or not 0 <= nxt.counter <= l:
                    continue
                if dfa.step_state(col.h(c, i), a) != col.h(nxt.state, nxt.counter):
                    out.append(f"transition ({c},{i}) --{a}--> {nxt} not mirrored in the DFA")
        fin = [s in dfa.finals for s in col.rows[c]]
        if (c in col.finals) != any(fin) or any(fin) != all(fin):
            out.append(f"finals of color {c} are not index-uniform")
    if len(col.colors) > n ** 3:
        out.append(f"{len(col.colors)} colors exceed n^3 = {n ** 3}")
    return out
