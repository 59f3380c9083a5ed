"""Kernel selection and machine-to-table compilation.

The compiled extension is used when it imports; ``DOCALEARN_PURE=1`` forces
the pure-Python twin.
"""
from __future__ import annotations

import os
from dataclasses import dataclass

from . import _pykernels
from .automata import RESET, Dfa, dfa_as_doca

RESET_CODE = _pykernels.RESET_CODE

BACKEND = "python"
_distinguish = _pykernels.distinguish
_Runner = _pykernels.Runner
if not os.environ.get("DOCALEARN_PURE"):
    try:
        from . import _ckernels
    except ImportError:  # extension not built
        pass
    else:
        BACKEND = "cython"
        _distinguish = _ckernels.distinguish
        _Runner = _ckernels.Runner


@dataclass(frozen=True)
class Table:
    """Flat integer tables for one machine over a fixed symbol order."""

    index: dict
    names: tuple
    m: int
    nxt: list
    eff: list
    fin: list


def compile_machine(machine, symbols) -> Table:
    if isinstance(machine, Dfa):
        machine = dfa_as_doca(machine)
    names = tuple(machine.states)
    index = {q: i for i, q in enumerate(names)}
    sym_index = {a: i for i, a in enumerate(symbols)}
    m = machine.m
    nsyms = len(symbols)
    size = len(names) * (m + 1) * nsyms
    nxt = [-1] * size
    eff = [0] * size
    for (q, t, a), (q2, e) in machine.delta.items():
        i = (index[q] * (m + 1) + t) * nsyms + sym_index[a]
        nxt[i] = index[q2]
        eff[i] = RESET_CODE if e == RESET else e
    fin = [q in machine.finals for q in names]
    return Table(index, names, m, nxt, eff, fin)


def distinguish(t1: Table, s1: int, c1: int, t2: Table, s2: int, c2: int,
                nsyms: int, max_len: int, dedup: bool = True, backend: str | None = None):
    fn = _distinguish
    if backend == "python":
        fn = _pykernels.distinguish
    elif backend == "cython":
        from . import _ckernels
        fn = _ckernels.distinguish
    return fn(t1.nxt, t1.eff, t1.fin, t1.m, t2.nxt, t2.eff, t2.fin, t2.m, nsyms,
              s1, c1, s2, c2, max_len, dedup)


def runner(table: Table, nsyms: int, backend: str | None = None):
    cls = _Runner
    if backend == "python":
        cls = _pykernels.Runner
    elif backend == "cython":
        from . import _ckernels
        cls = _ckernels.Runner
    return cls(table.nxt, table.eff, table.fin, table.m, nsyms)
