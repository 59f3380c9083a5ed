"""Polynomial profiles: the size and length functions that drive the pipeline.

A profile is six integer functions of the size guess m.  Each is either a
coefficient list (constant term first) or an arithmetic expression over
``m`` and the other five functions, e.g. ``"f((m+1)^2 * polyzero(m))"``.
"""
from __future__ import annotations

import ast
import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

FUNCTIONS = ("f", "polyzero", "polyone", "polytwo", "lsize", "docasize")


class ProfileError(ValueError):
    pass


_BINOPS = {ast.Add: lambda a, b: a + b, ast.Mult: lambda a, b: a * b,
           ast.Pow: lambda a, b: a ** b}


def _check_expr(node, names):
    """Reject anything outside + * ^, integers, m and profile calls."""
    if isinstance(node, ast.Expression):
        return _check_expr(node.body, names)
    if isinstance(node, ast.BinOp):
        if type(node.op) not in _BINOPS:
            raise ProfileError(f"operator {type(node.op).__name__} not allowed")
        _check_expr(node.left, names)
        _check_expr(node.right, names)
    elif isinstance(node, ast.Constant):
        if not isinstance(node.value, int) or isinstance(node.value, bool):
            raise ProfileError(f"only integer literals allowed, got {node.value!r}")
    elif isinstance(node, ast.Name):
        if node.id != "m":
            raise ProfileError(f"unknown variable {node.id!r}")
    elif isinstance(node, ast.Call):
        if not isinstance(node.func, ast.Name) or node.func.id not in names:
            raise ProfileError("only calls to profile functions are allowed")
        if len(node.args) != 1 or node.keywords:
            raise ProfileError(f"{node.func.id} takes exactly one argument")
        _check_expr(node.args[0], names)
    else:
        raise ProfileError(f"unsupported syntax {type(node).__name__}")


def parse_expr(text: str):
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise ProfileError(f"bad expression {text!r}: {exc.msg}") from None
    _check_expr(tree, FUNCTIONS)
    return tree


def _eval(node, m, profile):
    if isinstance(node, ast.Expression):
        return _eval(node.body, m, profile)
    if isinstance(node, ast.BinOp):
        return _BINOPS[type(node.op)](_eval(node.left, m, profile), _eval(node.right, m, profile))
    if isinstance(node, ast.Constant):
        return node.value
    if isinstance(node, ast.Name):
        return m
    return getattr(profile, node.func.id)(_eval(node.args[0], m, profile))


@dataclass(frozen=True)
class Poly:
    coeffs: tuple

    def __call__(self, m, profile=None):
        return sum(c * m ** i for i, c in enumerate(self.coeffs))

    def to_json(self):
        return {"kind": "poly", "coeffs": list(self.coeffs)}


@dataclass(frozen=True)
class Expr:
    text: str
    tree: object = field(compare=False, repr=False, default=None)

    def __post_init__(self):
        object.__setattr__(self, "tree", parse_expr(self.text))

    def __call__(self, m, profile=None):
        return _eval(self.tree, m, profile)

    def to_json(self):
        return {"kind": "expr", "text": self.text}


def _as_fn(spec):
    if isinstance(spec, (Poly, Expr)):
        return spec
    if isinstance(spec, int):
        return Poly((spec,))
    if isinstance(spec, str):
        return Expr(spec)
    if isinstance(spec, (list, tuple)):
        spec = {"kind": "poly", "coeffs": list(spec)}
    if isinstance(spec, dict):
        kind = spec.get("kind")
        if kind == "poly":
            coeffs = spec.get("coeffs")
            if not coeffs or not all(isinstance(c, int) for c in coeffs):
                raise ProfileError("poly needs a non-empty integer coefficient list")
            return Poly(tuple(coeffs))
        if kind == "expr":
            return Expr(spec["text"])
    raise ProfileError(f"cannot read function spec {spec!r}")


class PolynomialProfile:
    """The tuple (f, polyzero, polyone, polytwo, lsize, docasize)."""

    def __init__(self, name, **fns):
        missing = set(FUNCTIONS) - set(fns)
        if missing:
            raise ProfileError(f"profile {name!r} lacks {sorted(missing)}")
        self.name = name
        self._fns = {k: _as_fn(fns[k]) for k in FUNCTIONS}
        self._depth = 0

    def _call(self, key, m):
        if self._depth > 50:
            raise ProfileError(f"profile {self.name!r} has cyclic definitions")
        self._depth += 1
        try:
            value = self._fns[key](m, self)
        finally:
            self._depth -= 1
        return int(value)

    def f(self, m):
        return self._call("f", m)

    def polyzero(self, m):
        return self._call("polyzero", m)

    def polyone(self, m):
        return self._call("polyone", m)

    def polytwo(self, m):
        return self._call("polytwo", m)

    def lsize(self, m):
        return self._call("lsize", m)

    def docasize(self, m):
        return self._call("docasize", m)

    def values(self, m) -> dict:
        return {k: getattr(self, k)(m) for k in FUNCTIONS}

    def to_json(self) -> dict:
        return {"name": self.name, **{k: self._fns[k].to_json() for k in FUNCTIONS}}

    @classmethod
    def from_json(cls, data: dict):
        if "name" not in data:
            raise ProfileError("profile needs a name")
        return cls(data["name"], **{k: data.get(k) for k in FUNCTIONS if k in data})

    def __repr__(self):
        return f"PolynomialProfile({self.name!r})"


def reference_profile(f="m^4") -> PolynomialProfile:
    """The full-size polynomials (f defaults to m^4; any f >= m^4 works)."""
    return PolynomialProfile(
        "reference",
        f=f,
        polyzero="12*(m+1)^10",
        polyone="3*(m+1)^4",
        polytwo="f((m+1)^2 * polyzero(m))",
        lsize="(m+1)^4 * f(polyzero(m))",
        docasize="polyzero(m)",
    )


def builtin_names():
    root = resources.files("docalearn.profile_data")
    return ["reference"] + sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def load_profile(name_or_path) -> PolynomialProfile:
    if name_or_path == "reference":
        return reference_profile()
    path = Path(str(name_or_path))
    if path.suffix == ".json" and path.exists():
        return PolynomialProfile.from_json(json.loads(path.read_text(encoding="utf-8")))
    res = resources.files("docalearn.profile_data").joinpath(f"{name_or_path}.json")
    if not res.is_file():
        raise ProfileError(f"unknown profile {name_or_path!r} (built in: {builtin_names()})")
    return PolynomialProfile.from_json(json.loads(res.read_text(encoding="utf-8")))


def validate_profile(profile: PolynomialProfile, n: int) -> list:
    """Names of the three size inequalities that fail at ``n`` (exact arithmetic)."""
    m = n
    p1, p2, l = profile.polyone(m), profile.polytwo(m), profile.lsize(m)
    fz = profile.f(profile.polyzero(m))
    out = []
    lhs = Fraction(p1, m) - (m * m + 1)
    if not lhs > (3 * m + 1) * m * m + 1:
        out.append(f"polyone(m)/m - (m^2+1) > (3m+1)m^2+1 fails at m={m}: "
                   f"{lhs} <= {(3 * m + 1) * m * m + 1}")
    lhs = 2 * m * (l + 2 * m) * (m * m + 1)
    if not lhs <= p2 - p1:
        out.append(f"2m(lsize+2m)(m^2+1) <= polytwo(m) - polyone(m) fails at m={m}: "
                   f"{lhs} > {p2 - p1}")
    lhs = Fraction(l - 2 * m, 2 * m)
    if not lhs > fz:
        out.append(f"(lsize-2m)/2m > f(polyzero(m)) fails at m={m}: {lhs} <= {fz}")
    return out
