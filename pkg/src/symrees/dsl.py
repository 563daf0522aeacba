"""Line-oriented input language for rings, ideals, polynomials and families.

    # comments run to the end of the line
    ring X Y Z
    ideal I = X*Y, Y*Z, X*Z
    poly f = X - 2/3*Y^2
    family F = [I, I] sat m         # m: the ideal of all variables
    family G = [I] sat f            # or any list of poly / ideal names

``ring`` must come first and exactly once.  Names are unique across kinds.
An ``ideal`` accepts monomials only (``1`` and ``0`` stand for the unit and
zero ideal); use ``poly`` for sums and coefficients.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .ideal import MonomialIdeal, RingCtx, SparsePoly, format_monomial, format_poly
from .saturation import IdealFamily, maximal_ideal_gens

_TOKEN = re.compile(
    r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<int>\d+)|(?P<sym>[=,\[\]^*+\-/])|(?P<bad>\S))"
)
MAXIMAL = "m"
KEYWORDS = {"ring", "ideal", "poly", "family", "sat"}


class ParseError(ValueError):
    def __init__(self, line: int, col: int, reason: str):
        super().__init__(f"{line}:{col}: {reason}")
        self.line = line
        self.col = col
        self.reason = reason


@dataclass
class Workspace:
    ring: RingCtx
    ideals: dict[str, MonomialIdeal] = field(default_factory=dict)
    polys: dict[str, SparsePoly] = field(default_factory=dict)
    families: dict[str, IdealFamily] = field(default_factory=dict)
    # Source form of each family: member ideal names and J names (("m",) for the maximal ideal).
    family_specs: dict[str, tuple[tuple[str, ...], tuple[str, ...]]] = field(default_factory=dict)
    order: list[str] = field(default_factory=list)

    def names(self) -> set[str]:
        return set(self.ideals) | set(self.polys) | set(self.families)

    def ideal(self, name: str) -> MonomialIdeal:
        if name not in self.ideals:
            raise KeyError(f"no ideal named {name!r}")
        return self.ideals[name]

    def family(self, name: str) -> IdealFamily:
        if name not in self.families:
            raise KeyError(f"no family named {name!r}")
        return self.families[name]


class _Line:
    """Token cursor over one source line."""

    def __init__(self, text: str, lineno: int):
        self.lineno = lineno
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None or m.end() == pos:
                break
            kind = m.lastgroup
            if kind is None:
                break
            col = m.start(kind) + 1
            if kind == "bad":
                raise ParseError(lineno, col, f"unexpected character {m.group(kind)!r}")
            self.tokens.append((kind, m.group(kind), col))
            pos = m.end()
        self.end_col = len(text.rstrip()) + 1
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else ("eol", "", self.end_col)

    def col(self) -> int:
        return self.peek()[2]

    def error(self, reason: str, col: int | None = None) -> ParseError:
        return ParseError(self.lineno, self.col() if col is None else col, reason)

    def take(self, kind: str, value: str | None = None):
        tok = self.peek()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = repr(value) if value is not None else kind
            got = "end of line" if tok[0] == "eol" else repr(tok[1])
            raise self.error(f"expected {want}, got {got}")
        self.i += 1
        return tok

    def accept(self, kind: str, value: str | None = None):
        tok = self.peek()
        if tok[0] == kind and (value is None or tok[1] == value):
            self.i += 1
            return tok
        return None

    def done(self):
        if self.peek()[0] != "eol":
            raise self.error(f"unexpected {self.peek()[1]!r}")


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0]


def parse_workspace(text: str) -> Workspace:
    ws: Workspace | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _Line(_strip_comment(raw), lineno)
        if not line.tokens:
            continue
        kind, word, col = line.take("name")
        if ws is None:
            if word != "ring":
                raise ParseError(lineno, col, "the first declaration must be 'ring'")
            ws = Workspace(_parse_ring(line))
            continue
        if word == "ring":
            raise ParseError(lineno, col, "'ring' may only be declared once")
        if word not in ("ideal", "poly", "family"):
            raise ParseError(lineno, col, f"unknown declaration {word!r}")
        _, name, name_col = line.take("name")
        if name in KEYWORDS or name == MAXIMAL or name in ws.ring.var_names:
            raise ParseError(lineno, name_col, f"{name!r} is reserved")
        if name in ws.names():
            raise ParseError(lineno, name_col, f"duplicate name {name!r}")
        line.take("sym", "=")
        if word == "ideal":
            ws.ideals[name] = _parse_ideal(line, ws.ring)
        elif word == "poly":
            ws.polys[name] = _parse_poly(line, ws.ring)
        else:
            members, j_names, family = _parse_family(line, ws)
            ws.families[name] = family
            ws.family_specs[name] = (members, j_names)
        line.done()
        ws.order.append(name)
    if ws is None:
        raise ParseError(1, 1, "missing 'ring' declaration")
    return ws


def _parse_ring(line: _Line) -> RingCtx:
    names = []
    while line.peek()[0] == "name":
        _, v, col = line.take("name")
        if v in KEYWORDS or v == MAXIMAL:
            raise line.error(f"{v!r} cannot be a variable name", col)
        if v in names:
            raise line.error(f"duplicate variable {v!r}", col)
        names.append(v)
    if not names:
        raise line.error("'ring' needs at least one variable")
    line.done()
    return RingCtx(tuple(names))


def _parse_factors(line: _Line, ring: RingCtx, exp: list[int]):
    """``VAR('^'INT)? ('*' VAR('^'INT)?)*`` accumulated into ``exp``."""
    while True:
        tok = line.peek()
        if tok[0] != "name":
            raise line.error("expected a variable")
        line.take("name")
        if tok[1] not in ring.var_names:
            raise line.error(f"unknown variable {tok[1]!r}", tok[2])
        k = 1
        if line.accept("sym", "^"):
            k = int(line.take("int")[1])
        exp[ring.var_names.index(tok[1])] += k
        if not line.accept("sym", "*"):
            return


def _parse_ideal(line: _Line, ring: RingCtx) -> MonomialIdeal:
    gens = []
    zero = False
    while True:
        tok = line.peek()
        if tok[0] == "int":
            line.take("int")
            nxt = line.peek()
            alone = nxt[0] == "eol" or nxt[:2] == ("sym", ",")
            if not alone or tok[1] not in ("0", "1"):
                raise line.error("coefficients are not allowed in ideal generators", tok[2])
            if tok[1] == "1":
                gens.append(ring.zero_exponent())
            else:
                zero = True
        else:
            exp = [0] * ring.num_vars
            _parse_factors(line, ring, exp)
            gens.append(tuple(exp))
        nxt = line.peek()
        if nxt[0] == "sym" and nxt[1] in "+-":
            raise line.error("sums are not allowed in ideal generators (use 'poly')")
        if not line.accept("sym", ","):
            break
    if zero and gens:
        raise line.error("'0' cannot be combined with other generators")
    return MonomialIdeal(ring, gens)


def _parse_coefficient(line: _Line) -> Fraction:
    num = int(line.take("int")[1])
    if line.accept("sym", "/"):
        col = line.col()
        den = int(line.take("int")[1])
        if den == 0:
            raise line.error("zero denominator", col)
        return Fraction(num, den)
    return Fraction(num)


def _parse_poly(line: _Line, ring: RingCtx) -> SparsePoly:
    start_col = line.col()
    terms = []
    sign = 1
    if line.accept("sym", "-"):
        sign = -1
    else:
        line.accept("sym", "+")
    while True:
        coeff = Fraction(1)
        exp = [0] * ring.num_vars
        if line.peek()[0] == "int":
            coeff = _parse_coefficient(line)
            if line.accept("sym", "*"):
                _parse_factors(line, ring, exp)
        else:
            _parse_factors(line, ring, exp)
        terms.append((tuple(exp), sign * coeff))
        if line.accept("sym", "+"):
            sign = 1
        elif line.accept("sym", "-"):
            sign = -1
        else:
            break
    f = SparsePoly(ring, terms)
    if f.is_zero():
        raise line.error("polynomial is zero", start_col)
    return f


def _parse_names(line: _Line, sep: str | None) -> list[tuple[str, int]]:
    out = [line.take("name")[1:]]
    while True:
        if sep is not None:
            if not line.accept("sym", sep):
                return out
            out.append(line.take("name")[1:])
        else:
            if line.peek()[0] != "name":
                return out
            out.append(line.take("name")[1:])


def _parse_family(line: _Line, ws: Workspace):
    line.take("sym", "[")
    members = []
    for name, col in _parse_names(line, ","):
        if name not in ws.ideals:
            raise line.error(f"unknown ideal {name!r}", col)
        members.append(name)
    line.take("sym", "]")
    line.take("name", "sat")
    j_names = []
    j_gens: list[SparsePoly] = []
    for name, col in _parse_names(line, None):
        if name == MAXIMAL:
            j_gens.extend(maximal_ideal_gens(ws.ring))
        elif name in ws.polys:
            j_gens.append(ws.polys[name])
        elif name in ws.ideals:
            ideal = ws.ideals[name]
            if ideal.is_zero():
                raise line.error(f"ideal {name!r} is zero", col)
            j_gens.extend(SparsePoly.monomial(ws.ring, g) for g in ideal.gens)
        else:
            raise line.error(f"unknown identifier {name!r}", col)
        j_names.append(name)
    family = IdealFamily(ws.ring, tuple(ws.ideals[n] for n in members), tuple(j_gens))
    return tuple(members), tuple(j_names), family


# ---------------------------------------------------------------------------
# Printing
# ---------------------------------------------------------------------------

def format_ideal_gens(ideal: MonomialIdeal) -> str:
    if ideal.is_zero():
        return "0"
    return ", ".join(format_monomial(g, ideal.ring) for g in reversed(ideal.gens))


def format_workspace(ws: Workspace) -> str:
    lines = ["ring " + " ".join(ws.ring.var_names)]
    for name in ws.order:
        if name in ws.ideals:
            lines.append(f"ideal {name} = {format_ideal_gens(ws.ideals[name])}")
        elif name in ws.polys:
            lines.append(f"poly {name} = {format_poly(ws.polys[name])}")
        else:
            members, j_names = ws.family_specs[name]
            lines.append(f"family {name} = [{', '.join(members)}] sat {' '.join(j_names)}")
    return "\n".join(lines) + "\n"
