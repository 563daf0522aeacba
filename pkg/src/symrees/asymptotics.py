"""Torsion lengths, length tables and exact polynomial / quasi-polynomial fits."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Mapping, Sequence

import numpy as np

from .exact import solve
from .ideal import DomainError, MonomialIdeal, MultiIndex, format_rational, multi_power
from .saturation import IdealFamily, SaturationPlan, build_plan, saturate_certified, saturate_planned

INFINITE = math.inf


class PreconditionError(ValueError):
    """Inputs violate an operation's precondition (e.g. too few samples)."""


# ---------------------------------------------------------------------------
# Counting
# ---------------------------------------------------------------------------

def _membership(points: np.ndarray, ideal: MonomialIdeal) -> np.ndarray:
    if ideal.is_zero():
        return np.zeros(len(points), dtype=bool)
    gens = np.asarray(ideal.gens, dtype=np.int64)
    inside = np.zeros(len(points), dtype=bool)
    for g in gens:
        inside |= (points >= g).all(axis=1)
    return inside


def count_quotient(big: MonomialIdeal, small: MonomialIdeal) -> int | float:
    """Number of monomials in ``big`` but not in ``small`` (``INFINITE`` if unbounded).

    All generators have coordinates at most ``B``, so membership in either
    ideal is unchanged by raising a coordinate already equal to ``B_i``.  A
    difference point on that boundary therefore starts an infinite ray, and
    otherwise every difference point lies in the box ``prod [0, B_i]``.
    """
    if not small.issubset(big):
        raise PreconditionError("the smaller ideal is not contained in the larger one")
    d = big.ring.num_vars
    bound = [max([g[i] for g in big.gens + small.gens], default=0) for i in range(d)]
    points = np.indices([b + 1 for b in bound]).reshape(d, -1).T
    diff = _membership(points, big) & ~_membership(points, small)
    if not diff.any():
        return 0
    on_boundary = (points[diff] == np.asarray(bound)).any(axis=1)
    if on_boundary.any():
        return INFINITE
    return int(diff.sum())


# ---------------------------------------------------------------------------
# Length tables
# ---------------------------------------------------------------------------

@dataclass
class LengthTable:
    r: int
    values: dict[MultiIndex, int | float]

    @property
    def domain(self) -> list[MultiIndex]:
        return sorted(self.values)

    def is_finite_at(self, n: MultiIndex) -> bool:
        return self.values[n] != INFINITE

    def ray(self, direction: Sequence[int]) -> dict[int, int | float]:
        """Values at ``t * direction`` for every ``t`` present in the table."""
        out = {}
        for n, v in self.values.items():
            t = _ray_parameter(n, direction)
            if t is not None:
                out[t] = v
        return dict(sorted(out.items()))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([f"n_{i + 1}" for i in range(self.r)] + ["value"])
        for n in self.domain:
            v = self.values[n]
            w.writerow(list(n) + ["INF" if v == INFINITE else v])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> LengthTable:
        rows = list(csv.reader(io.StringIO(text)))
        if not rows:
            raise ValueError("empty table")
        header, body = rows[0], [r for r in rows[1:] if r]
        r = len(header) - 1
        if r < 1 or header[-1] != "value":
            raise ValueError(f"bad table header {header}")
        values = {}
        for row in body:
            if len(row) != r + 1:
                raise ValueError(f"bad table row {row}")
            values[tuple(int(x) for x in row[:r])] = INFINITE if row[-1] == "INF" else int(row[-1])
        return cls(r, values)


def _ray_parameter(n: Sequence[int], direction: Sequence[int]) -> int | None:
    t = None
    for a, w in zip(n, direction):
        if w == 0:
            if a:
                return None
            continue
        if a % w:
            return None
        if t is None:
            t = a // w
        elif t != a // w:
            return None
    return t


def torsion_length(family: IdealFamily, n: Sequence[int], plan: SaturationPlan | None = None) -> int | float:
    n = tuple(n)
    sat = saturate_planned(plan, family, n) if plan is not None else saturate_certified(family, n)
    return count_quotient(sat, multi_power(family.ideals, n))


def length_table(
    family: IdealFamily,
    grid: Sequence[MultiIndex],
    mode: str = "torsion",
    other: IdealFamily | None = None,
) -> LengthTable:
    """Tabulate torsion lengths (``mode="torsion"``) or quotient lengths.

    In ``"quotient"`` mode ``other`` is the family of larger ideals
    ``J_i ⊇ I_i`` and the value at ``n`` is the colength of ``I^n`` in
    ``J^n``.
    """
    grid = [tuple(n) for n in grid]
    values: dict[MultiIndex, int | float] = {}
    if mode == "torsion":
        family.require_j()
        plan = build_plan(family)
        for n in grid:
            values[n] = torsion_length(family, n, plan)
    elif mode == "quotient":
        if other is None or other.r != family.r:
            raise PreconditionError("quotient mode needs a second family of the same arity")
        for small, big in zip(family.ideals, other.ideals):
            if not small.issubset(big):
                raise PreconditionError(f"{small} is not contained in {big}")
        for n in grid:
            values[n] = count_quotient(multi_power(other.ideals, n), multi_power(family.ideals, n))
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return LengthTable(family.r, values)


def epsilon_estimate(family: IdealFamily, t_max: int) -> list[Fraction]:
    """The sequence ``d! L(t,...,t) / t^d`` for ``t = 1..t_max``."""
    d = family.ring.num_vars
    plan = build_plan(family)
    out = []
    for t in range(1, t_max + 1):
        value = torsion_length(family, (t,) * family.r, plan)
        if value == INFINITE:
            raise DomainError(f"torsion length is infinite at t={t}")
        out.append(Fraction(math.factorial(d) * value, t ** d))
    return out


def closed_form_2d(family: IdealFamily, n: Sequence[int]) -> MonomialIdeal:
    """Saturation by ``(X, Y)`` in two variables: the principal ideal of minimal exponents."""
    ring = family.ring
    if ring.num_vars != 2:
        raise PreconditionError("the closed form needs exactly two variables")
    if not (family.j_is_monomial() and family.j_monomial_ideal() == ring.maximal_ideal()):
        raise PreconditionError("the closed form needs J = (X, Y)")
    x_exp = y_exp = 0
    for ideal, k in zip(family.ideals, n):
        if ideal.is_zero():
            raise DomainError("zero ideal in the family")
        x_exp += k * min(g[0] for g in ideal.gens)
        y_exp += k * min(g[1] for g in ideal.gens)
    return MonomialIdeal(ring, [(x_exp, y_exp)])


# ---------------------------------------------------------------------------
# Numerical polynomials and fitting
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NumericalPolynomial:
    """Rational polynomial in ``r`` variables, ``coeffs`` keyed by exponent tuples."""

    r: int
    coeffs: tuple[tuple[tuple[int, ...], Fraction], ...]

    @classmethod
    def from_dict(cls, r: int, coeffs: Mapping[tuple[int, ...], object]) -> NumericalPolynomial:
        items = sorted((tuple(e), Fraction(c)) for e, c in coeffs.items() if Fraction(c) != 0)
        return cls(r, tuple(items))

    @property
    def degree(self) -> int:
        """Total degree; the zero polynomial counts as constant (degree 0)."""
        return max((sum(e) for e, _ in self.coeffs), default=0)

    def leading_coefficients(self) -> dict[tuple[int, ...], Fraction]:
        top = self.degree
        return {e: c for e, c in self.coeffs if sum(e) == top}

    def __call__(self, *n) -> Fraction:
        if len(n) == 1 and isinstance(n[0], (tuple, list)):
            n = tuple(n[0])
        total = Fraction(0)
        for e, c in self.coeffs:
            term = c
            for x, k in zip(n, e):
                term *= Fraction(x) ** k
            total += term
        return total

    def variable_names(self) -> list[str]:
        return ["n"] if self.r == 1 else [f"n_{i + 1}" for i in range(self.r)]

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        names = self.variable_names()
        ordered = sorted(self.coeffs, key=lambda t: (-sum(t[0]), tuple(-k for k in t[0])))
        parts = []
        for idx, (e, c) in enumerate(ordered):
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            mag = abs(c)
            if not mono:
                body = format_rational(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{format_rational(mag)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append(("-" if sign == "-" else "") + body if idx == 0 else f" {sign} {body}")
        return "".join(parts)

    def to_json_obj(self) -> dict:
        return {
            "r": self.r,
            "degree": self.degree,
            "coefficients": [{"exponent": list(e), "value": format_rational(c)} for e, c in self.coeffs],
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> NumericalPolynomial:
        return cls.from_dict(obj["r"], {tuple(t["exponent"]): Fraction(t["value"]) for t in obj["coefficients"]})


def _interpolate(points: Sequence[tuple[int, ...]], values: Sequence[int], max_degree: int, r: int):
    monos = [e for e in product(range(max_degree + 1), repeat=r)]
    rows = [[Fraction(1) * math.prod(p ** k for p, k in zip(pt, e)) for e in monos] for pt in points]
    sol = solve(rows, [Fraction(v) for v in values])
    if sol is None:
        return None
    return NumericalPolynomial.from_dict(r, dict(zip(monos, sol)))


def fit_polynomial(
    table: LengthTable,
    max_degree: int,
    start: int | None = None,
    holdout: int | None = None,
) -> NumericalPolynomial | None:
    """Exact fit of total degree at most ``max_degree`` with hold-out validation.

    The polynomial is interpolated on the box ``[start, start + max_degree]^r``
    and must then reproduce every other table entry with all coordinates at
    least ``start``.  ``start`` defaults to ``max_degree + 1``.  The table has
    to reach ``holdout`` (default ``max_degree + 2``) points past the fitting
    box along each axis.  Returns None when no such polynomial exists.
    """
    r = table.r
    start = max_degree + 1 if start is None else start
    holdout = max_degree + 2 if holdout is None else holdout
    fit_hi = start + max_degree
    need_hi = fit_hi + holdout
    fit_box = list(product(range(start, fit_hi + 1), repeat=r))
    missing = [n for n in fit_box if n not in table.values]
    for axis in range(r):
        probe = tuple(need_hi if i == axis else start for i in range(r))
        if probe not in table.values:
            missing.append(probe)
    if missing:
        raise PreconditionError(
            f"grid too small: need every point of [{start}, {need_hi}]^{r} along the axes "
            f"(degree {max_degree} box plus {holdout} hold-out points); missing e.g. {missing[0]}"
        )
    if any(not table.is_finite_at(n) for n in fit_box):
        raise PreconditionError("table is infinite inside the fitting box")
    poly = _interpolate(fit_box, [table.values[n] for n in fit_box], max_degree, r)
    if poly is None or poly.degree > max_degree:
        return None
    fit_set = set(fit_box)
    for n, v in table.values.items():
        if n in fit_set or min(n) < start:
            continue
        if v == INFINITE or poly(n) != v:
            return None
    return poly


@dataclass(frozen=True)
class QuasiPolynomial:
    """One polynomial in ``t`` per residue class of ``t`` modulo ``period``."""

    period: int
    pieces: tuple[NumericalPolynomial, ...]
    validated_points: int = field(default=0, compare=False)

    @property
    def degree(self) -> int:
        return max(p.degree for p in self.pieces)

    def __call__(self, t: int) -> Fraction:
        return self.pieces[t % self.period](t)

    def __str__(self) -> str:
        if self.period == 1:
            return str(self.pieces[0])
        return "; ".join(f"t = {i} mod {self.period}: {str(p).replace('n', 't')}" for i, p in enumerate(self.pieces))

    def to_json_obj(self) -> dict:
        return {
            "period": self.period,
            "degree": self.degree,
            "validated_points": self.validated_points,
            "pieces": [p.to_json_obj() for p in self.pieces],
        }


def fit_quasipolynomial_ray(
    values: Mapping[int, int | float] | Sequence[int],
    max_period: int,
    max_degree: int,
    start: int = 0,
) -> QuasiPolynomial | None:
    """Smallest-period quasi-polynomial reproducing ``values`` for ``t >= start``.

    ``values`` maps ``t`` to a value (a plain sequence is read as ``t = 0,
    1, ...``).  For each period ``p`` every residue class is interpolated on
    its first ``max_degree + 1`` samples and validated on the rest; at least
    one held-out point per class is required.
    """
    if not isinstance(values, Mapping):
        values = dict(enumerate(values))
    ts = sorted(t for t in values if t >= start)
    if len(ts) < (max_degree + 2) * max_period:
        raise PreconditionError(
            f"need at least {(max_degree + 2) * max_period} samples from t = {start}, got {len(ts)}"
        )
    for p in range(1, max_period + 1):
        pieces = []
        held_out = 0
        for c in range(p):
            cls_ts = [t for t in ts if t % p == c]
            if len(cls_ts) < max_degree + 2:
                break
            fit_ts, rest = cls_ts[: max_degree + 1], cls_ts[max_degree + 1:]
            if any(values[t] == INFINITE for t in cls_ts):
                break
            poly = _interpolate([(t,) for t in fit_ts], [values[t] for t in fit_ts], max_degree, 1)
            if poly is None or any(poly(t) != values[t] for t in rest):
                break
            pieces.append(poly)
            held_out += len(rest)
        else:
            return QuasiPolynomial(p, tuple(pieces), held_out)
    return None


def fit_to_json(fit: NumericalPolynomial | QuasiPolynomial | None) -> str:
    obj = {"fit": None} if fit is None else fit.to_json_obj()
    return json.dumps(obj, sort_keys=True, indent=2)


# ---------------------------------------------------------------------------
# Degree bounds
# ---------------------------------------------------------------------------

@dataclass
class BoundsReport:
    """Degree assertions for a fitted torsion polynomial; status is PASS, FAIL or N/A."""

    degree: int
    spread: int
    dim: int
    checks: list[tuple[str, str, str]]

    @property
    def passed(self) -> bool:
        return all(status != "FAIL" for _, status, _ in self.checks)

    def render(self) -> str:
        lines = [f"degree = {self.degree}", f"spread = {self.spread}", f"dim = {self.dim}"]
        lines += [f"{name}: {status} ({witness})" for name, status, witness in self.checks]
        return "\n".join(lines) + "\n"


def check_bounds(
    family: IdealFamily | None,
    fit: NumericalPolynomial,
    spread: int | None = None,
    d: int | None = None,
) -> BoundsReport:
    """Compare a fitted degree with the dimension and the analytic spread of the product.

    (a) degree at most ``d``; (b) if ``spread <= d - 1``, degree at most
    ``spread - 1``; (c) if ``spread == d``, degree exactly ``d``.  Check (c)
    at finitely many sample points is a trend, not a proof.  Missing
    ``spread`` and ``d`` are computed from ``family``.
    """
    if spread is None or d is None:
        if family is None:
            raise PreconditionError("need a family to compute spread and dimension")
        from .geometry import analytic_spread

        d = family.ring.num_vars if d is None else d
        if spread is None:
            spread = analytic_spread(multi_power(family.ideals, (1,) * family.r))
    deg = fit.degree
    checks = [("a: degree <= dim", "PASS" if deg <= d else "FAIL", f"{deg} <= {d}")]
    if spread <= d - 1:
        checks.append(("b: degree <= spread - 1", "PASS" if deg <= spread - 1 else "FAIL", f"{deg} <= {spread - 1}"))
    else:
        checks.append(("b: degree <= spread - 1", "N/A", f"spread {spread} = dim"))
    if spread == d:
        checks.append(("c: degree == dim (trend)", "PASS" if deg == d else "FAIL", f"{deg} == {d}"))
    else:
        checks.append(("c: degree == dim (trend)", "N/A", f"spread {spread} < dim"))
    return BoundsReport(deg, spread, d, checks)
