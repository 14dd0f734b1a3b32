"""Exact verification of polynomial identities by grid evaluation.

A polynomial in several variables that vanishes on a Cartesian grid with more
points per variable than its degree in that variable is identically zero. Each
expression is held as a small :class:`PolyExpr` tree; its per-variable exponent
range is read off the tree and the grid is checked against it before any
evaluation happens. Laurent monomials (negative exponents) are allowed; for those
the grid must avoid 0 and exceed the width ``max - min`` of the exponent range.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .scalar import ZERO, GaussianRational, as_gaussian, format_scalar

__all__ = [
    "PolyExpr",
    "var",
    "const",
    "IdentityReport",
    "DegenerateDenominator",
    "GridTooSmall",
    "beta_closed_form",
    "verify_beta_recursion",
    "claim1_bracket",
    "claim1_k1_coefficient",
    "verify_claim1_linearity",
    "claim2_sides",
    "claim2_P",
    "claim2_Q",
    "claim2_R",
    "verify_claim2_identity",
    "verify_mu_constant",
]


# -- expression trees -----------------------------------------------------------


class PolyExpr:
    """Immutable expression over named variables with +, -, * and integer powers."""

    __slots__ = ("op", "args")

    def __init__(self, op: str, args: tuple):
        self.op = op
        self.args = args

    # construction sugar
    def __add__(self, other):
        return PolyExpr("+", (self, _lift(other)))

    def __radd__(self, other):
        return PolyExpr("+", (_lift(other), self))

    def __sub__(self, other):
        return PolyExpr("+", (self, -_lift(other)))

    def __rsub__(self, other):
        return PolyExpr("+", (_lift(other), -self))

    def __neg__(self):
        return PolyExpr("neg", (self,))

    def __mul__(self, other):
        return PolyExpr("*", (self, _lift(other)))

    def __rmul__(self, other):
        return PolyExpr("*", (_lift(other), self))

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("only integer powers")
        return PolyExpr("^", (self, n))

    def evaluate(self, env: Mapping[str, object]) -> GaussianRational:
        op, args = self.op, self.args
        if op == "const":
            return args[0]
        if op == "var":
            return as_gaussian(env[args[0]])
        if op == "+":
            return args[0].evaluate(env) + args[1].evaluate(env)
        if op == "neg":
            return -args[0].evaluate(env)
        if op == "*":
            return args[0].evaluate(env) * args[1].evaluate(env)
        return args[0].evaluate(env) ** args[1]

    def exponent_range(self, name: str) -> tuple[int, int]:
        """Bounds ``(lo, hi)`` on the exponent of ``name`` over all monomials."""
        op, args = self.op, self.args
        if op == "const":
            return (0, 0)
        if op == "var":
            return (1, 1) if args[0] == name else (0, 0)
        if op == "neg":
            return args[0].exponent_range(name)
        if op == "+":
            (l1, h1), (l2, h2) = args[0].exponent_range(name), args[1].exponent_range(name)
            return (min(l1, l2), max(h1, h2))
        if op == "*":
            (l1, h1), (l2, h2) = args[0].exponent_range(name), args[1].exponent_range(name)
            return (l1 + l2, h1 + h2)
        lo, hi = args[0].exponent_range(name)
        n = args[1]
        return (lo * n, hi * n) if n >= 0 else (hi * n, lo * n)

    def degree_width(self, name: str) -> int:
        """Points needed minus one: ``hi`` for a polynomial, ``hi - lo`` if ``lo < 0``."""
        lo, hi = self.exponent_range(name)
        return hi - min(lo, 0)

    def is_laurent(self, name: str) -> bool:
        return self.exponent_range(name)[0] < 0

    def variables(self) -> frozenset[str]:
        if self.op == "var":
            return frozenset({self.args[0]})
        if self.op == "const":
            return frozenset()
        out = frozenset()
        for a in self.args:
            if isinstance(a, PolyExpr):
                out |= a.variables()
        return out

    def __repr__(self):
        op, args = self.op, self.args
        if op == "const":
            return format_scalar(args[0])
        if op == "var":
            return args[0]
        if op == "neg":
            return f"-({args[0]!r})"
        if op == "^":
            return f"({args[0]!r})^{args[1]}"
        return f"({args[0]!r} {op} {args[1]!r})"


def var(name: str) -> PolyExpr:
    return PolyExpr("var", (name,))


def const(x) -> PolyExpr:
    return PolyExpr("const", (as_gaussian(x),))


def _lift(x) -> PolyExpr:
    return x if isinstance(x, PolyExpr) else const(x)


# -- reports ----------------------------------------------------------------------


class DegenerateDenominator(ArithmeticError):
    def __init__(self, point: Mapping[str, object], factor: str):
        self.point = dict(point)
        self.factor = factor
        super().__init__(f"{factor} vanishes at {_fmt_point(point)}")


class GridTooSmall(ValueError):
    pass


def _fmt_point(point: Mapping[str, object]) -> dict:
    return {k: format_scalar(as_gaussian(v)) for k, v in point.items()}


@dataclass
class IdentityReport:
    name: str
    grid_size: int
    degree_bound: dict
    passed: bool
    first_failure: dict | None = None
    details: dict = field(default_factory=dict)

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "grid_size": self.grid_size,
            "degree_bound": self.degree_bound,
            "first_failure": self.first_failure,
            "details": self.details,
        }


def _check_grid(exprs: Sequence[PolyExpr], grid: Mapping[str, Sequence], handled=()) -> dict:
    """Per-variable exponent width of ``exprs``; raises if a grid axis is too short.

    Variables in ``handled`` are covered by the caller (e.g. interpolated).
    """
    bounds = {}
    for name, values in grid.items():
        width = max(e.degree_width(name) for e in exprs)
        points = set(map(as_gaussian, values))
        if any(e.is_laurent(name) for e in exprs) and ZERO in points:
            raise GridTooSmall(f"{name}: negative powers need a grid without 0")
        if len(points) <= width:
            raise GridTooSmall(f"{name}: {len(points)} points for degree bound {width}")
        bounds[name] = width
    for e in exprs:
        missing = e.variables() - grid.keys() - set(handled)
        if missing:
            raise GridTooSmall(f"no grid for {sorted(missing)}")
    return bounds


def _grid_points(grid: Mapping[str, Sequence]):
    names = list(grid)
    for values in itertools.product(*(grid[n] for n in names)):
        yield dict(zip(names, values))


# -- beta recursion -----------------------------------------------------------------

_alpha, _b1, _bm1 = var("alpha"), var("beta1"), var("betam1")


def beta_closed_form(m: int) -> PolyExpr:
    """``beta_m = (m+1)/2 alpha^(m-1) beta1 - (m-1)/2 alpha^(m+1) betam1``."""
    return const(Fraction(m + 1, 2)) * _alpha ** (m - 1) * _b1 - const(Fraction(m - 1, 2)) * _alpha ** (m + 1) * _bm1


def _beta_recursion_difference(m: int, n: int) -> PolyExpr:
    # (n - m) beta_{m+n} - (n beta_n alpha^m - m alpha^n beta_m)
    lhs = const(n - m) * beta_closed_form(m + n)
    rhs = const(n) * beta_closed_form(n) * _alpha**m - const(m) * _alpha**n * beta_closed_form(m)
    return lhs - rhs


def verify_beta_recursion(index_range: int) -> IdentityReport:
    """Closed-form beta_m satisfies the L_m/L_n recursion for ``|m|, |n| <= range``, ``m+n != 0``."""
    if index_range < 2:
        raise ValueError("range must be >= 2")
    pairs = [
        (m, n)
        for m in range(-index_range, index_range + 1)
        for n in range(-index_range, index_range + 1)
        if m + n != 0
    ]
    exprs = {p: _beta_recursion_difference(*p) for p in pairs}
    width = max(e.degree_width("alpha") for e in exprs.values())
    grid = {
        # nonzero alpha only: the expression is a Laurent polynomial
        "alpha": [GaussianRational(j, 1) for j in range(1, width + 2)],
        "beta1": [0, 1, GaussianRational(Fraction(-2, 3), 1)],
        "betam1": [0, 2, GaussianRational(1, Fraction(-5, 7))],
    }
    bounds = _check_grid(list(exprs.values()), grid)
    count = 0
    for (m, n), e in exprs.items():
        for pt in _grid_points(grid):
            count += 1
            val = e.evaluate(pt)
            if val:
                return IdentityReport(
                    "beta-recursion", count, bounds, False,
                    {"m": m, "n": n, "point": _fmt_point(pt), "residual": format_scalar(val)},
                    {"range": index_range, "pairs": len(pairs)},
                )
    return IdentityReport(
        "beta-recursion", count, bounds, True, None, {"range": index_range, "pairs": len(pairs)}
    )


# -- quintic linearity ----------------------------------------------------------------

_a, _k, _b, _mu, _c = var("a"), var("k"), var("b"), var("mu"), var("c")
_bl, _blp = var("b1"), var("b2")


def claim1_bracket() -> PolyExpr:
    """The bracketed quintic multiplying mu_{k,l}^{l'}, with b1 = b_l and b2 = b_l'."""
    s = _a + _k
    return (
        (s + _bl) * (s - _bl) * (s + 2 - 2 * _blp) * (s + 1 - _bl) * (s - 1 - _bl)
        - (s + _bl) * (s + 1 - 2 * _bl) * (s + 1 - _blp) * (s + 2 - _blp) * (s - 1 - _bl)
        - (s - 1 + _blp) * (s + 1 - 2 * _blp) * (s + 2 - _blp) * (s - _bl) * (s - 1 - _bl)
        + (s - 1 + _blp) * (s - 2 * _bl) * (s - _blp) * (s + 1 - _blp) * (s + 2 - _blp)
    )


def claim1_k1_coefficient() -> PolyExpr:
    """``-(b1+2-b2)(b1+1-b2)((b1+b2)(b1+b2-1) - 2 b2)``."""
    return -((_bl + 2 - _blp) * (_bl + 1 - _blp) * ((_bl + _blp) * (_bl + _blp - 1) - 2 * _blp))


def _interpolate(values: Sequence[GaussianRational]) -> list[GaussianRational]:
    """Coefficients of the polynomial through ``(j, values[j])``, ``j = 0..n-1``.

    Newton forward differences, then expansion of the falling-factorial basis.
    """
    n = len(values)
    diffs = [as_gaussian(v) for v in values]
    newton = [diffs[0]]
    for level in range(1, n):
        diffs = [diffs[i + 1] - diffs[i] for i in range(len(diffs) - 1)]
        newton.append(diffs[0] * Fraction(1, _factorial(level)))
    coeffs = [ZERO] * n
    basis = [GaussianRational(1)]  # coefficients of k(k-1)...(k-level+1)
    for level in range(n):
        for i, b in enumerate(basis):
            coeffs[i] = coeffs[i] + newton[level] * b
        nxt = [ZERO] * (len(basis) + 1)
        for i, b in enumerate(basis):
            nxt[i + 1] = nxt[i + 1] + b
            nxt[i] = nxt[i] - b * level
        basis = nxt
    return coeffs


def _factorial(n: int) -> int:
    out = 1
    for j in range(2, n + 1):
        out *= j
    return out


def _claim1_grid(points: int) -> dict:
    axis = [GaussianRational(Fraction(j, 3), Fraction(j * j % 5, 2)) for j in range(points)]
    return {
        "a": axis,
        "b1": [GaussianRational(Fraction(1, 2), Fraction(j - 3, 2)) + j for j in range(points)],
        "b2": [GaussianRational(Fraction(j, 2), Fraction(1, j + 1)) for j in range(points)],
    }


def verify_claim1_linearity(points: int = 7) -> IdentityReport:
    """The quintic is linear in k.

    For every ``(a, b1, b2)`` on the grid the polynomial in k is recovered exactly
    from its values at ``k = 0..deg_k``; the k^j coefficients for ``j >= 2`` must
    vanish and the k^1 coefficient must match :func:`claim1_k1_coefficient`.
    The constant term is reported, not asserted.
    """
    e = claim1_bracket()
    target = claim1_k1_coefficient()
    deg_k = e.exponent_range("k")[1]
    grid = _claim1_grid(points)
    # the k^j coefficients are polynomials in (a, b1, b2) of at most e's degree
    bounds = _check_grid([e, target], grid, handled=("k",))
    bounds["k"] = deg_k
    count = 0
    constant_terms = {}
    for pt in _grid_points(grid):
        vals = [e.evaluate({**pt, "k": j}) for j in range(deg_k + 1)]
        coeffs = _interpolate(vals)
        count += 1
        for j in range(2, deg_k + 1):
            if coeffs[j]:
                return IdentityReport(
                    "claim1", count, bounds, False,
                    {"point": _fmt_point(pt), "power": j, "coefficient": format_scalar(coeffs[j])},
                )
        want = target.evaluate(pt)
        if coeffs[1] != want:
            return IdentityReport(
                "claim1", count, bounds, False,
                {"point": _fmt_point(pt), "power": 1, "coefficient": format_scalar(coeffs[1]),
                 "expected": format_scalar(want)},
            )
        key = (pt["b1"], pt["b2"])
        constant_terms.setdefault(key, set()).add(coeffs[0])
    a_dependent = sum(1 for v in constant_terms.values() if len(v) > 1)
    return IdentityReport(
        "claim1", count, bounds, True, None,
        {"k_degree_checked": deg_k,
         "constant_term_depends_on_a": a_dependent > 0,
         "b_pairs_with_a_dependent_constant": a_dependent},
    )


# -- mu identity ----------------------------------------------------------------------


def _claim2_expr_P() -> PolyExpr:
    s = _a + _k
    return (
        (s - _b) * (s - 1 - _b) * (s + _b) * (s + 2 - 2 * _b) * (s + 1 - _b)
        - (s + 2 - _b) * (s - 1 - _b) * (s + _b) * (s + 1 - 2 * _b) * (s + 1 - _b)
        - (s - 1 + _b) * (s + 1 - 2 * _b) * (s + 2 - _b) * (s - _b) * (s - 1 - _b)
        + (s + 2 - _b) * (s - _b) * (s - 1 + _b) * (s - 2 * _b) * (s + 1 - _b)
    )


def _claim2_expr_Q() -> PolyExpr:
    s = _a + _k
    return (
        (s + 2 - _b) * (s - _b) * (s - 1 - _b)
        - (s - _b) * (s - 1 - _b) * (s + 2 - 2 * _b) * (s + _b)
        - (s + 2 - _b) * (s - 1 - _b) * (s + _b) * (s + 1 - 2 * _b)
        + 2 * (s + 2 - _b) * (s - _b) * (s - 1 + _b) * (s - 2 * _b)
    )


def _claim2_expr_R() -> PolyExpr:
    return (8 * _b - 8 * _b**2) * _k + 4 * _b + 8 * _a * _b - 12 * _b**2 + 8 * _b**3 - 8 * _a * _b**2


def _claim2_expr_cleared() -> PolyExpr:
    """D' times (I_0 display minus c), with mu_{k+1}, mu_{k-1}, mu_{k-2} cleared by hand.

    ``D' = (s-b)(s+2-b)(s-1-b)``; used only for its degree bounds.
    """
    s = _a + _k
    d_p1 = (s - _b) * (s - 1 - _b) * (_c + (s + 1 - _b) * _mu)
    d_m1 = (s + 2 - _b) * (s - 1 - _b) * ((s + 1 - _b) * _mu - _c)
    d_m2 = (s - _b) * (s + 2 - _b) * ((s + 1 - _b) * _mu - 2 * _c)
    dp = (s - _b) * (s + 2 - _b) * (s - 1 - _b)
    return (
        (s + _b) * ((s + 2 - 2 * _b) * d_p1 - (s + 1 - 2 * _b) * d_m1)
        - (s - 1 + _b) * ((s + 1 - 2 * _b) * _mu * dp - (s - 2 * _b) * d_m2)
        - _c * dp
    )


_P, _Q, _R, _CLEARED = _claim2_expr_P(), _claim2_expr_Q(), _claim2_expr_R(), _claim2_expr_cleared()


def claim2_P(a, b, k) -> GaussianRational:
    return _P.evaluate({"a": a, "b": b, "k": k})


def claim2_Q(a, b, k) -> GaussianRational:
    return _Q.evaluate({"a": a, "b": b, "k": k})


def claim2_R(a, b, k) -> GaussianRational:
    return _R.evaluate({"a": a, "b": b, "k": k})


def claim2_sides(a, b, k, mu, c, _pqr=None) -> tuple[GaussianRational, GaussianRational, GaussianRational]:
    """Three evaluations that must agree at any point with nonzero denominators.

    * substituted: run the mu recursion from ``mu_k`` to get ``mu_{k+1}``,
      ``mu_{k-1}``, ``mu_{k-2}``, plug them into the I_0 display, subtract c and
      multiply by ``D' = (s-b)(s+2-b)(s-1-b)``;
    * displayed: ``P mu_k - Q c`` from the printed expansion;
    * factored: ``R (mu_k - c)`` from the printed reduction.
    """
    a, b, k, mu, c = map(as_gaussian, (a, b, k, mu, c))
    s = a + k
    point = {"a": a, "b": b, "k": k, "mu": mu, "c": c}
    for name, d in (("a+k-b", s - b), ("a+k+2-b", s + 2 - b), ("a+k-1-b", s - 1 - b)):
        if not d:
            raise DegenerateDenominator(point, name)
    mu_p1 = (c + (s + 1 - b) * mu) / (s + 2 - b)
    mu_m1 = ((s + 1 - b) * mu - c) / (s - b)
    mu_m2 = ((s - b) * mu_m1 - c) / (s - 1 - b)
    display = (s + b) * ((s + 2 - 2 * b) * mu_p1 - (s + 1 - 2 * b) * mu_m1) - (s - 1 + b) * (
        (s + 1 - 2 * b) * mu - (s - 2 * b) * mu_m2
    )
    substituted = (display - c) * (s - b) * (s + 2 - b) * (s - 1 - b)
    p, q, r = _pqr if _pqr is not None else (_P.evaluate(point), _Q.evaluate(point), _R.evaluate(point))
    displayed = p * mu - q * c
    factored = r * (mu - c)
    return substituted, displayed, factored


def _claim2_default_grid(points: int) -> dict:
    # Im b != 0 keeps every (a + k + j - b) away from zero for real a, k.
    return {
        "a": [Fraction(j, 3) - 1 for j in range(points)],
        "b": [GaussianRational(Fraction(j, 2), Fraction(1, 1 + j)) for j in range(points)],
        "k": [j - points // 2 for j in range(points)],
        "mu": [GaussianRational(j, Fraction(j, 4)) for j in range(points)],
        "c": [GaussianRational(Fraction(3 - j, 2), 1) for j in range(points)],
    }


def _fresh_value(used: Sequence, start) -> GaussianRational:
    used = {as_gaussian(u) for u in used}
    cand = as_gaussian(start) + GaussianRational(Fraction(1, 7), Fraction(1, 11))
    while cand in used:
        cand = cand + GaussianRational(Fraction(1, 7), Fraction(1, 11))
    return cand


def verify_claim2_identity(points: int = 8, grid: Mapping[str, Sequence] | None = None) -> IdentityReport:
    """``D' * (display - c) == P mu - Q c == R (mu - c)`` on a full Cartesian grid.

    A grid value that makes a cleared denominator vanish is replaced by a fresh
    value and the sweep restarts; replacements are listed in the report.
    """
    grid = {k: list(v) for k, v in (grid or _claim2_default_grid(points)).items()}
    bounds = _check_grid([_P * _mu - _Q * _c, _R * (_mu - _c), _CLEARED], grid)
    replaced = []
    while True:
        try:
            count = 0
            cache = {}
            for pt in _grid_points(grid):
                count += 1
                key = (pt["a"], pt["b"], pt["k"])
                if key not in cache:
                    cache[key] = (_P.evaluate(pt), _Q.evaluate(pt), _R.evaluate(pt))
                sub, disp, fact = claim2_sides(**pt, _pqr=cache[key])
                if not (sub == disp == fact):
                    return IdentityReport(
                        "claim2", count, bounds, False,
                        {"point": _fmt_point(pt), "substituted": format_scalar(sub),
                         "displayed": format_scalar(disp), "factored": format_scalar(fact)},
                        {"replaced": replaced},
                    )
            break
        except DegenerateDenominator as exc:
            # the offending value is replaced on the axis of the variable that moves it off the locus
            for name in ("b", "a", "k"):
                old = exc.point[name]
                axis = grid[name]
                idx = [as_gaussian(v) for v in axis].index(as_gaussian(old))
                axis[idx] = _fresh_value(axis, old)
                replaced.append({"variable": name, "old": format_scalar(as_gaussian(old)),
                                 "new": format_scalar(axis[idx]), "factor": exc.factor})
                break
    k_coeff = {}
    for b in grid["b"]:
        r0 = claim2_R(0, b, 0)
        r1 = claim2_R(0, b, 1)
        k_coeff[format_scalar(as_gaussian(b))] = format_scalar(r1 - r0)
    return IdentityReport("claim2", count, bounds, True, None,
                          {"replaced": replaced, "k_coefficient_by_b": k_coeff})


# -- mu_k = c ---------------------------------------------------------------------------


def verify_mu_constant(a, b, c, k_range: int) -> IdentityReport:
    """Solve for ``mu_k`` (``|k| <= k_range``) two ways and confirm ``mu_k = c``.

    Route 1 propagates the I_0 relation ``(a+k+1-b) mu_k - (a+k-b) mu_{k-1} = c``
    outward from pinned values. A value is pinned where a coefficient of that
    relation vanishes, or else taken from ``P mu_k = Q c`` at the index of
    smallest ``|k|`` where P is nonzero. Gaps left by a vanishing coefficient are
    filled from ``P mu_k = Q c`` as well.
    Route 2 solves ``P mu_k = Q c`` independently at every k with ``P != 0``.
    """
    a, b, c = as_gaussian(a), as_gaussian(b), as_gaussian(c)
    if a.im != 0 or b.re != Fraction(1, 2):
        raise ValueError("need a real and Re b = 1/2")
    if k_range < 1:
        raise ValueError("k_range must be >= 1")
    lo, hi = -k_range - 2, k_range + 2
    ks = range(lo, hi + 1)

    def up(k):  # coefficient of mu_k in the relation at k
        return a + k + 1 - b

    def down(k):  # coefficient of mu_{k-1} in the relation at k
        return a + k - b

    mu: dict[int, GaussianRational] = {}
    pins = []
    for k in ks:
        if not down(k) and lo <= k <= hi:
            mu[k] = c / up(k)
            pins.append({"k": k, "rule": "a+k-b = 0"})
        if not up(k) and lo <= k - 1:
            mu[k - 1] = -c / down(k)
            pins.append({"k": k - 1, "rule": "a+k+1-b = 0"})

    def solve_direct(k):
        p = claim2_P(a, b, k)
        return claim2_Q(a, b, k) * c / p if p else None

    if not mu:
        seed = next(k for k in sorted(ks, key=lambda j: (abs(j), j)) if solve_direct(k) is not None)
        mu[seed] = solve_direct(seed)
        pins.append({"k": seed, "rule": "P mu = Q c"})

    changed = True
    while changed and len(mu) < len(ks):
        changed = False
        for k in ks:
            if k in mu:
                continue
            if k - 1 in mu and up(k):
                mu[k] = (c + down(k) * mu[k - 1]) / up(k)
            elif k + 1 in mu and down(k + 1):
                mu[k] = (up(k + 1) * mu[k + 1] - c) / down(k + 1)
            else:
                val = solve_direct(k)
                if val is None:
                    continue
                mu[k] = val
                pins.append({"k": k, "rule": "P mu = Q c"})
            changed = True

    count = 0
    for k in range(-k_range, k_range + 1):
        count += 1
        direct = solve_direct(k)
        got = mu.get(k)
        if got != c or (direct is not None and direct != c):
            return IdentityReport(
                "mu-constant", count, {}, False,
                {"k": k, "recursion": None if got is None else format_scalar(got),
                 "direct": None if direct is None else format_scalar(direct),
                 "c": format_scalar(c)},
                {"pins": pins},
            )
    return IdentityReport("mu-constant", count, {}, True, None,
                          {"pins": pins, "k_range": k_range})
