"""Admissible curves ``alpha(s) = (s, y(s), z(s), w(s))`` of G4."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .core import GPoint4
from .errors import CurveFormatError, ParseError
from .expr import (FUNCTIONS, VARIABLE, Expr, eval_jet, eval_real, free_params, parse_expr,
                   to_source)
from .jets import Jet, jet_var


@dataclass(frozen=True)
class Domain:
    lo: float
    hi: float
    samples: int

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ValueError("domain bounds must be finite")
        if not self.lo < self.hi:
            raise ValueError(f"empty domain [{self.lo}, {self.hi}]")
        if self.samples < 2:
            raise ValueError(f"need at least 2 samples, got {self.samples}")

    def grid(self) -> list[float]:
        """Uniform grid including both endpoints."""
        return [float(x) for x in np.linspace(self.lo, self.hi, self.samples)]


DEFAULT_DOMAIN = Domain(0.0, 2.0 * math.pi, 256)


@dataclass(frozen=True)
class Curve:
    """Curve given by expressions for its three spatial components.

    The first component is always the parameter itself, which makes every
    curve admissible (Galilean unit speed) by construction.
    """

    name: str
    y: Expr
    z: Expr
    w: Expr
    params: Mapping[str, float] = field(default_factory=dict)
    domain: Domain = DEFAULT_DOMAIN

    def __post_init__(self):
        object.__setattr__(self, "params", dict(self.params))
        for key in self.params:
            if key == VARIABLE or key in FUNCTIONS:
                raise ValueError(f"parameter name {key!r} is reserved")
        missing = (free_params(self.y) | free_params(self.z) | free_params(self.w)) - set(self.params)
        if missing:
            raise ValueError(f"unbound parameters: {sorted(missing)}")

    @classmethod
    def from_strings(cls, name: str, y: str, z: str, w: str,
                     params: Mapping[str, float] | None = None,
                     domain: Domain = DEFAULT_DOMAIN) -> Curve:
        params = dict(params or {})
        return cls(name, parse_expr(y, params), parse_expr(z, params),
                   parse_expr(w, params), params, domain)

    def point(self, s: float) -> GPoint4:
        s = float(s)
        return GPoint4(s, eval_real(self.y, s, self.params),
                       eval_real(self.z, s, self.params), eval_real(self.w, s, self.params))

    def spatial_jets(self, s: float) -> tuple[Jet, Jet, Jet]:
        x = jet_var(float(s))
        return (eval_jet(self.y, x, self.params), eval_jet(self.z, x, self.params),
                eval_jet(self.w, x, self.params))

    def jets(self, s: float) -> tuple[Jet, Jet, Jet, Jet]:
        return (jet_var(float(s)),) + self.spatial_jets(s)


def curve_point(c: Curve, s: float) -> GPoint4:
    return c.point(s)


def curve_jet(c, s: float) -> tuple[Jet, Jet, Jet, Jet]:
    return c.jets(s)


@dataclass(frozen=True)
class HelixFamily:
    """``y = a cos(ps)``, ``z = a sin(ps)``, ``w = q s^2 / 2``."""

    a: float
    p: float
    q: float

    def __post_init__(self):
        if self.a == 0 or self.p == 0:
            raise ValueError("helix needs a != 0 and p != 0")

    def curve(self, domain: Domain = DEFAULT_DOMAIN, name: str | None = None) -> Curve:
        return Curve.from_strings(
            name or f"helix({self.a:g},{self.p:g},{self.q:g})",
            "a*cos(p*s)", "a*sin(p*s)", "q*s^2/2",
            {"a": self.a, "p": self.p, "q": self.q}, domain)


def helix(a: float, p: float, q: float, domain: Domain = DEFAULT_DOMAIN) -> Curve:
    return HelixFamily(a, p, q).curve(domain)


# --------------------------------------------------------------------------
# curve-spec files

_REQUIRED = ("name", "y", "z", "w")


def _parse_domain(text: str, line: int) -> Domain:
    parts = [p.strip() for p in text.split(":")]
    if len(parts) != 3:
        raise CurveFormatError("domain must be 'lo : hi : samples'", line)
    try:
        lo, hi = float(parts[0]), float(parts[1])
        n = int(parts[2])
    except ValueError:
        raise CurveFormatError(f"bad domain {text!r}", line) from None
    try:
        return Domain(lo, hi, n)
    except ValueError as err:
        raise CurveFormatError(str(err), line) from None


def _build(block: dict, start: int) -> Curve:
    for key in _REQUIRED:
        if key not in block["keys"]:
            raise CurveFormatError(f"[curve] block missing key {key!r}", start)
    params = block["params"]
    exprs = {}
    for key in ("y", "z", "w"):
        text, line = block["keys"][key]
        try:
            exprs[key] = parse_expr(text, params)
        except ParseError as err:
            raise CurveFormatError(f"{key}: {err}", line) from None
    domain = DEFAULT_DOMAIN
    if "domain" in block["keys"]:
        text, line = block["keys"]["domain"]
        domain = _parse_domain(text, line)
    try:
        return Curve(block["keys"]["name"][0], exprs["y"], exprs["z"], exprs["w"],
                     params, domain)
    except ValueError as err:
        raise CurveFormatError(str(err), start) from None


def load_curve_spec(text: str) -> list[Curve]:
    """Parse a curve-spec file into curves.

    One ``[curve]`` header per curve, then ``key = value`` lines for
    ``name``, ``y``, ``z``, ``w``, optional ``domain = lo : hi : samples`` and
    any number of ``param NAME = VALUE``. ``#`` starts a comment.
    """
    curves = []
    block = None
    start = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line == "[curve]":
            if block is not None:
                curves.append(_build(block, start))
            block = {"keys": {}, "params": {}}
            start = lineno
            continue
        if block is None:
            raise CurveFormatError("content before the first [curve] header", lineno)
        if "=" not in line:
            raise CurveFormatError(f"expected 'key = value', got {line!r}", lineno)
        key, value = (part.strip() for part in line.split("=", 1))
        if key.startswith("param ") or key.startswith("param\t"):
            pname = key[len("param"):].strip()
            if not pname.isidentifier():
                raise CurveFormatError(f"bad parameter name {pname!r}", lineno)
            try:
                block["params"][pname] = float(value)
            except ValueError:
                raise CurveFormatError(f"parameter {pname} needs a number, got {value!r}",
                                       lineno) from None
        elif key in ("name", "y", "z", "w", "domain"):
            if key in block["keys"]:
                raise CurveFormatError(f"duplicate key {key!r}", lineno)
            block["keys"][key] = (value, lineno)
        else:
            raise CurveFormatError(f"unknown key {key!r}", lineno)
    if block is not None:
        curves.append(_build(block, start))
    return curves


def dump_curve_spec(curves: list[Curve]) -> str:
    """Inverse of :func:`load_curve_spec` (expressions in canonical form)."""
    out = []
    for c in curves:
        out += ["[curve]", f"name = {c.name}", f"y = {to_source(c.y)}",
                f"z = {to_source(c.z)}", f"w = {to_source(c.w)}"]
        out += [f"param {k} = {v!r}" for k, v in c.params.items()]
        out.append(f"domain = {c.domain.lo!r} : {c.domain.hi!r} : {c.domain.samples}")
        out.append("")
    return "\n".join(out)


__all__ = ["Curve", "Domain", "HelixFamily", "helix", "curve_point", "curve_jet",
           "load_curve_spec", "dump_curve_spec", "DEFAULT_DOMAIN"]
