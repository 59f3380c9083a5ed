"""Candidate sequences centered at a border state."""
from __future__ import annotations

from dataclasses import dataclass

from .automata import format_word


class SequenceError(ValueError):
    pass


@dataclass(frozen=True)
class CandidateSequence:
    """states[j] = dfa(x y^(r+j) z) for j in [-2n, l+2n]."""

    center: str
    x: tuple
    y: tuple
    r: int
    z: tuple
    n: int
    l: int
    states: tuple

    @property
    def lo(self) -> int:
        return -2 * self.n

    @property
    def hi(self) -> int:
        return self.l + 2 * self.n

    def indices(self):
        return range(self.lo, self.hi + 1)

    def state(self, j: int):
        if not self.lo <= j <= self.hi:
            raise IndexError(j)
        return self.states[j - self.lo]

    def word(self, j: int) -> tuple:
        return self.x + self.y * (self.r + j) + self.z

    def dump(self, alphabet) -> str:
        return (f"p0={self.center} x={format_word(self.x, alphabet)} "
                f"y={format_word(self.y, alphabet)} r={self.r} z={format_word(self.z, alphabet)}")


def split_bound(n: int) -> int:
    return 2 * n * (n * n + 1)


def factorizations(word, n: int):
    """(x, y, r, z) with word = x y^r z, y non-empty, r >= 2n maximal for the
    pair (x, y) and |x|, |y|, |z| <= 2n(n^2+1); |y| ascending, then |x|."""
    word = tuple(word)
    L = len(word)
    cap = split_bound(n)
    out = []
    for j in range(1, min(cap, L) + 1):
        for i in range(0, min(cap, L - j) + 1):
            y = word[i:i + j]
            r = 1
            while word[i + r * j:i + (r + 1) * j] == y:
                r += 1
            z = word[i + r * j:]
            if r >= 2 * n and len(z) <= cap:
                out.append((word[:i], y, r, z))
    return out


def sequence_states(dfa, x, y, r, z, lo, hi) -> tuple:
    q = dfa.run_state(x + y * (r + lo))
    out = []
    for _ in range(lo, hi + 1):
        out.append(dfa.run_state(z, q))
        q = dfa.run_state(y, q)
    return tuple(out)


def enumerate_candidates(dfa, partition, p0, n: int, profile=None, l: int | None = None) -> list:
    if p0 not in partition.brd:
        raise SequenceError(f"{p0!r} is not a border state")
    if l is None:
        l = profile.lsize(n)
    w = partition.lexmin_words[p0]
    out = []
    for x, y, r, z in factorizations(w, n):
        states = sequence_states(dfa, x, y, r, z, -2 * n, l + 2 * n)
        out.append(CandidateSequence(p0, x, y, r, z, n, l, states))
    return out
