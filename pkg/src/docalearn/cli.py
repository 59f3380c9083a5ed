"""Command-line entry point: ``docalearn <command> ...``.

Exit codes: 0 success, 1 not equivalent (``equiv``) or rejected (``run``),
2 usage or validation errors.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import protocol, serialization
from .assembly import OCLError, ocl
from .automata import AutomatonError, Dfa, format_word, parse_word
from .geometry import configuration_lexmin, lexmin_witnesses, partition
from .oracle import DEFAULT_CE_CAP, Teacher, default_ce_bound, find_counterexample
from .profiles import ProfileError, load_profile, validate_profile
from .testkit import random_doca

log = logging.getLogger("docalearn")


class UsageError(Exception):
    pass


def _write(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _load_machine(path):
    try:
        return serialization.load(path)
    except FileNotFoundError:
        raise UsageError(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON ({exc.msg})") from None


def _warn_profile(profile, n_max):
    bad = {n: len(validate_profile(profile, n)) for n in range(1, n_max + 1)}
    bad = {n: k for n, k in bad.items() if k}
    if bad:
        log.warning("profile %s violates the size inequalities (n: count) %s",
                    profile.name, bad)


def _learn(teacher, profile, args):
    _warn_profile(profile, args.n_max)
    results = []
    try:
        machine, stats = ocl(teacher, profile, n_max=args.n_max,
                             length_bound=args.restricted_bound,
                             log=lambda info: log.info("n=%s %s", info["n"], info),
                             results=results)
    except OCLError as exc:
        print(f"error: {exc}", file=sys.stderr)
        for info in exc.per_n:
            print(json.dumps(info), file=sys.stderr)
        return 1
    _write(args.out, serialization.dumps(machine, indent=2) + "\n")
    if args.stats:
        _write(args.stats, json.dumps(stats, indent=2) + "\n")
    if args.dot:
        last = results[-1]
        _write(args.dot, serialization.to_dot(last.dfa, last.partition.regions(), "behavioral"))
    return 0


def cmd_learn(args):
    profile = load_profile(args.profile)
    if args.teacher.startswith("tcp:"):
        host, _, port = args.teacher[4:].rpartition(":")
        if not port.isdigit():
            raise UsageError("--teacher tcp:HOST:PORT expected")
        teacher = protocol.connect(host or "127.0.0.1", int(port))
        try:
            return _learn(teacher, profile, args)
        finally:
            teacher.close()
    target = _load_machine(args.teacher)
    bound = args.ce_bound or default_ce_bound(profile, target.size, args.ce_cap)
    return _learn(Teacher(target, bound), profile, args)


def cmd_minimize(args):
    args.teacher = args.machine
    return cmd_learn(args)


def cmd_equiv(args):
    m1, m2 = _load_machine(args.a), _load_machine(args.b)
    ce = find_counterexample(m1, m2, args.bound)
    if ce is None:
        print("OK")
        return 0
    print("CE " + format_word(ce, m1.alphabet))
    return 1


def cmd_run(args):
    machine = _load_machine(args.machine)
    word = parse_word(args.word, machine.alphabet)
    conf = machine.run(word)
    ok = conf is not None and conf.state in machine.finals
    where = "no run" if conf is None else f"({conf.state}, {conf.counter})"
    print(f"{'accept' if ok else 'reject'} {where}")
    return 0 if ok else 1


def cmd_lexmin(args):
    machine = _load_machine(args.machine)
    if isinstance(machine, Dfa):
        table = lexmin_witnesses(machine)
        rows = [(q, w) for q, w in table.items()]
    else:
        table = configuration_lexmin(machine, args.depth)
        rows = [(f"({c.state},{c.counter})", w) for c, w in table.items()]
    rows.sort(key=lambda r: machine.alphabet.key(r[1]))
    for name, w in rows:
        print(f"{name}\t{len(w)}\t{format_word(w, machine.alphabet) or 'ε'}")
    return 0


def cmd_gen_random(args):
    if args.states < 1:
        raise UsageError("--states must be >= 1")
    if not 0 <= args.reset_prob <= 1:
        raise UsageError("--reset-prob must lie in [0, 1]")
    alphabet = args.alphabet.split(",") if "," in args.alphabet else list(args.alphabet)
    doca = random_doca(args.states, tuple(alphabet), seed=args.seed, reset_prob=args.reset_prob)
    _write(args.out, serialization.dumps(doca, indent=2) + "\n")
    return 0


def cmd_export_dot(args):
    machine = _load_machine(args.machine)
    regions = None
    if args.regions:
        if not isinstance(machine, Dfa):
            raise UsageError("--regions applies to DFAs only")
        name, _, n = args.regions.rpartition(",")
        if not name or not n.isdigit():
            raise UsageError("--regions PROFILE,N expected")
        regions = partition(machine, load_profile(name), int(n)).regions()
    _write(args.out, serialization.to_dot(machine, regions, Path(args.machine).stem))
    return 0


def cmd_serve_teacher(args):
    target = _load_machine(args.machine)
    teacher = Teacher(target, args.ce_bound)
    server = protocol.make_server(teacher, args.host, args.port)
    host, port = server.server_address[:2]
    print(f"serving on {host}:{port}", flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="docalearn",
                                 description="Learn and inspect one-counter automata.")
    ap.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    def learn_opts(p):
        p.add_argument("--profile", default="desk-small", help="profile name or JSON file")
        p.add_argument("--n-max", type=int, default=6)
        p.add_argument("--ce-bound", type=int, default=None,
                       help="teacher counterexample bound (default f(docasize) capped)")
        p.add_argument("--ce-cap", type=int, default=DEFAULT_CE_CAP,
                       help="hard cap on the default counterexample bound")
        p.add_argument("--restricted-bound", type=int, default=None,
                       help="word-length bound of the restricted-equivalence check")
        p.add_argument("--out", default="-")
        p.add_argument("--stats")
        p.add_argument("--dot", help="DOT of the final behavioral DFA")

    p = sub.add_parser("learn", help="learn a DOCA from a teacher")
    p.add_argument("--teacher", required=True, help="target JSON or tcp:HOST:PORT")
    learn_opts(p)
    p.set_defaults(fn=cmd_learn)

    p = sub.add_parser("minimize", help="relearn a machine through an in-process teacher")
    p.add_argument("machine")
    learn_opts(p)
    p.set_defaults(fn=cmd_minimize)

    p = sub.add_parser("equiv", help="bounded equivalence check")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--bound", type=int, required=True)
    p.set_defaults(fn=cmd_equiv)

    p = sub.add_parser("run", help="run a machine on a word")
    p.add_argument("machine")
    p.add_argument("word", nargs="?", default="")
    p.set_defaults(fn=cmd_run)

    p = sub.add_parser("lexmin", help="length-lex minimal witnesses")
    p.add_argument("machine")
    p.add_argument("--depth", type=int, default=8, help="search depth for counter machines")
    p.set_defaults(fn=cmd_lexmin)

    p = sub.add_parser("gen-random", help="random DOCA as JSON")
    p.add_argument("--states", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--reset-prob", type=float, default=0.0)
    p.add_argument("--alphabet", default="ab")
    p.add_argument("--out", default="-")
    p.set_defaults(fn=cmd_gen_random)

    p = sub.add_parser("export-dot", help="Graphviz DOT export")
    p.add_argument("machine")
    p.add_argument("--regions", help="PROFILE,N: tint DFA regions")
    p.add_argument("--out", default="-")
    p.set_defaults(fn=cmd_export_dot)

    p = sub.add_parser("serve-teacher", help="answer the line protocol over TCP")
    p.add_argument("machine")
    p.add_argument("--port", type=int, required=True)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--ce-bound", type=int, default=DEFAULT_CE_CAP)
    p.set_defaults(fn=cmd_serve_teacher)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.fn(args)
    except (UsageError, AutomatonError, ProfileError, protocol.ProtocolError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
