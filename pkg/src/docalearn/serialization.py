"""JSON automaton format and Graphviz DOT export."""
from __future__ import annotations

import json
from pathlib import Path

from .automata import RESET, AutomatonError, Dfa, Doca, MDoca, POS, ZERO


def _test_to_json(machine, t):
    if machine.kind == "doca":
        return "zero" if t == ZERO else "pos"
    return t


def _test_from_json(kind, m, raw):
    if kind == "doca":
        if raw in ("zero", 0):
            return ZERO
        if raw in ("pos", 1):
            return POS
        raise AutomatonError(f"bad DOCA test {raw!r}")
    if isinstance(raw, int) and 0 <= raw <= m:
        return raw
    if raw == "zero":
        return 0
    raise AutomatonError(f"bad m-DOCA test {raw!r}")


def to_dict(machine) -> dict:
    d = {"type": machine.kind}
    if machine.kind == "mdoca":
        d["m"] = machine.m
    d["alphabet"] = list(machine.alphabet)
    d["states"] = list(machine.states)
    d["initial"] = machine.initial
    d["finals"] = [q for q in machine.states if q in machine.finals]
    trans = []
    if isinstance(machine, Dfa):
        for (q, a), q2 in machine.delta.items():
            trans.append({"from": q, "symbol": a, "to": q2})
    else:
        for (q, t, a), (q2, e) in machine.delta.items():
            trans.append({"from": q, "test": _test_to_json(machine, t), "symbol": a,
                          "to": q2, "effect": e})
    d["transitions"] = trans
    return d


def from_dict(d: dict, autocomplete: bool = True):
    kind = d.get("type")
    try:
        alphabet = d["alphabet"]
        states = d["states"]
        initial = d["initial"]
        finals = d.get("finals", [])
        raw = d.get("transitions", [])
    except KeyError as exc:
        raise AutomatonError(f"missing field {exc.args[0]!r}") from None
    if kind == "dfa":
        delta = {}
        for t in raw:
            key = (t["from"], t["symbol"])
            if key in delta and delta[key] != t["to"]:
                raise AutomatonError(f"nondeterministic transition {key}")
            delta[key] = t["to"]
        machine = Dfa(alphabet, states, initial, finals, delta)
    elif kind in ("doca", "mdoca"):
        m = int(d.get("m", 1)) if kind == "mdoca" else 1
        delta = {}
        for t in raw:
            eff = t.get("effect", 0)
            if eff != RESET and not isinstance(eff, int):
                raise AutomatonError(f"bad effect {eff!r}")
            key = (t["from"], _test_from_json(kind, m, t.get("test", "zero")), t["symbol"])
            if key in delta and delta[key] != (t["to"], eff):
                raise AutomatonError(f"nondeterministic transition {key}")
            delta[key] = (t["to"], eff)
        if kind == "doca":
            machine = Doca(alphabet, states, initial, finals, delta)
        else:
            machine = MDoca(alphabet, states, initial, finals, delta, m=m)
    else:
        raise AutomatonError(f"unknown automaton type {kind!r}")
    if autocomplete and not machine.is_complete():
        machine = machine.complete()
    return machine


def dumps(machine, indent=None) -> str:
    return json.dumps(to_dict(machine), indent=indent, ensure_ascii=False)


def loads(text: str, autocomplete: bool = True):
    return from_dict(json.loads(text), autocomplete=autocomplete)


def load(path, autocomplete: bool = True):
    return loads(Path(path).read_text(encoding="utf-8"), autocomplete=autocomplete)


def save(machine, path):
    Path(path).write_text(dumps(machine, indent=1) + "\n", encoding="utf-8")


REGION_FILL = {"ir": "gray", "brd": "black", "roi": "white"}


def _q(s) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(machine, regions=None, name="automaton") -> str:
    """DOT text.  ``regions`` maps state -> "ir" | "brd" | "roi" for tinting."""
    lines = [f"digraph {_q(name)} {{", "  rankdir=LR;", '  __start [shape=point];']
    for q in machine.states:
        attrs = ["shape=doublecircle" if q in machine.finals else "shape=circle"]
        region = (regions or {}).get(q)
        if region:
            attrs.append(f"style=filled fillcolor={REGION_FILL[region]}")
            if region == "brd":
                attrs.append("fontcolor=white")
        lines.append(f"  {_q(q)} [{' '.join(attrs)}];")
    lines.append(f"  __start -> {_q(machine.initial)};")
    edges = {}
    if isinstance(machine, Dfa):
        for (q, a), q2 in machine.delta.items():
            edges.setdefault((q, q2), []).append(a)
    else:
        for (q, t, a), (q2, e) in machine.delta.items():
            tname = _test_to_json(machine, t)
            eff = "r" if e == RESET else f"{e:+d}"
            edges.setdefault((q, q2), []).append(f"{a}[{tname}]/{eff}")
    for (q, q2), labels in edges.items():
        lines.append(f"  {_q(q)} -> {_q(q2)} [label={_q(', '.join(labels))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
