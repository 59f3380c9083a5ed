"""Line protocol for remote teachers.

One request per line, UTF-8:

    MQ <symbols>        -> YES | NO
    EQ <json machine>   -> OK | CE <symbols>
    STATS               -> MQ=<n> MEQ=<n>
    ALPHABET            -> <symbols>
    BYE                 -> closes the session

Symbols are space-separated.  A single token made of one-character symbols
is also accepted, so ``MQ aabb`` works for single-character alphabets.
Malformed requests get ``ERR <reason>`` and the session continues.
"""
from __future__ import annotations

import io
import json
import socket
import socketserver
import threading

from . import serialization
from .automata import AutomatonError

PEQ_UNSUPPORTED = "ERR PEQ is reserved but not supported"


class ProtocolError(RuntimeError):
    pass


def _parse_symbols(rest: str, alphabet):
    tokens = rest.split()
    if len(tokens) == 1 and tokens[0] not in alphabet and alphabet.single_char:
        tokens = list(tokens[0])
    return alphabet.check_word(tokens)


def handle_line(teacher, line: str):
    """The reply to one request line, or ``None`` for BYE."""
    line = line.rstrip("\r\n")
    verb, _, rest = line.partition(" ")
    verb = verb.upper()
    try:
        if verb == "MQ":
            return "YES" if teacher.membership(_parse_symbols(rest, teacher.alphabet)) else "NO"
        if verb == "EQ":
            hyp = serialization.from_dict(json.loads(rest))
            ce = teacher.minimal_equivalence_query(hyp)
            return "OK" if ce is None else ("CE " + " ".join(ce)).rstrip()
        if verb == "STATS":
            return f"MQ={teacher.mq_count} MEQ={teacher.meq_count}"
        if verb == "ALPHABET":
            return " ".join(teacher.alphabet.symbols)
        if verb == "PEQ":
            return PEQ_UNSUPPORTED
        if verb == "BYE":
            return None
        return f"ERR unknown verb {verb!r}" if verb else "ERR empty request"
    except (AutomatonError, ValueError, KeyError, TypeError) as exc:
        return "ERR " + " ".join(str(exc).split())


def serve(teacher, rfile, wfile):
    """Answer requests from ``rfile`` on ``wfile`` until EOF or BYE.

    Both streams are text streams."""
    for line in rfile:
        reply = handle_line(teacher, line)
        if reply is None:
            break
        wfile.write(reply + "\n")
        wfile.flush()


class RemoteTeacher:
    """Client side: presents a protocol endpoint as a teacher."""

    def __init__(self, rfile, wfile, closer=None):
        self._r, self._w = rfile, wfile
        self._closer = closer
        self._lock = threading.Lock()
        from .automata import Alphabet
        self.alphabet = Alphabet(tuple(self._ask("ALPHABET").split()))

    def _ask(self, request: str) -> str:
        with self._lock:
            self._w.write(request + "\n")
            self._w.flush()
            reply = self._r.readline()
        if not reply:
            raise ProtocolError("connection closed by teacher")
        reply = reply.rstrip("\r\n")
        if reply.startswith("ERR"):
            raise ProtocolError(reply[4:] or "unspecified error")
        return reply

    def membership(self, word) -> bool:
        word = self.alphabet.check_word(word)
        reply = self._ask(("MQ " + " ".join(word)).rstrip() if word else "MQ ")
        if reply not in ("YES", "NO"):
            raise ProtocolError(f"unexpected reply {reply!r}")
        return reply == "YES"

    def minimal_equivalence_query(self, hypothesis):
        reply = self._ask("EQ " + serialization.dumps(hypothesis))
        if reply == "OK":
            return None
        if reply == "CE" or reply.startswith("CE "):
            return self.alphabet.check_word(reply[3:].split())
        raise ProtocolError(f"unexpected reply {reply!r}")

    def stats(self) -> dict:
        return {k.lower(): int(v) for k, v in
                (part.split("=") for part in self._ask("STATS").split())}

    @property
    def mq_count(self) -> int:
        return self.stats()["mq"]

    @property
    def meq_count(self) -> int:
        return self.stats()["meq"]

    def close(self):
        try:
            with self._lock:
                self._w.write("BYE\n")
                self._w.flush()
        except (OSError, ValueError):
            pass
        if self._closer is not None:
            self._closer()


def client(rfile, wfile) -> RemoteTeacher:
    return RemoteTeacher(rfile, wfile)


def connect(host: str, port: int, timeout: float | None = 60.0) -> RemoteTeacher:
    sock = socket.create_connection((host, port), timeout=timeout)
    rfile = sock.makefile("r", encoding="utf-8", newline="\n")
    wfile = sock.makefile("w", encoding="utf-8", newline="\n")

    def closer():
        rfile.close()
        wfile.close()
        sock.close()
    return RemoteTeacher(rfile, wfile, closer)


def make_server(teacher, host: str = "127.0.0.1", port: int = 0):
    """A TCP server answering one client at a time; ``server_address``
    holds the bound port."""

    class Handler(socketserver.StreamRequestHandler):
        def handle(self):
            rfile = io.TextIOWrapper(self.rfile, encoding="utf-8", newline="\n")
            wfile = io.TextIOWrapper(self.wfile, encoding="utf-8", newline="\n",
                                     write_through=True)
            try:
                serve(teacher, rfile, wfile)
            finally:
                rfile.detach()
                wfile.detach()

    socketserver.TCPServer.allow_reuse_address = True
    return socketserver.TCPServer((host, port), Handler)
