"""Unitarity of A_{a,b,c} under ``theta^+_{alpha,gamma}``, decided two ways.

* :func:`predicate_unitary` is the closed-form criterion
  ``a real, Re b = 1/2, c u = conj(c)`` with ``u = e^{i gamma}``.
* :func:`solve_gram` builds the contravariant form from scratch. The form is
  taken diagonal in the weight basis (L_0 is theta-fixed and has distinct real
  eigenvalues ``a + k`` when ``a`` is real), and ``<v_k, v_k> = g_k`` is pinned
  down by the contravariance equations of L_{+-1}, L_{+-2}, I_{+-1}, I_{+-2}.

The Hermitian form is linear in its first argument.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .algebra import CI, CL, CLI, Basis, VerificationReport
from .involutions import PlusType, apply, validate_params
from .modules import HVSeries, ModuleVector, act
from .scalar import ONE, GaussianRational, UnitPhase, as_gaussian, format_scalar

__all__ = [
    "PositiveDefinite",
    "Indefinite",
    "Inconsistent",
    "GramDiagonal",
    "GramEquation",
    "gram_equations",
    "solve_gram",
    "hermitian",
    "check_contravariance",
    "normalize_alpha",
    "predicate_unitary",
    "UnitarityVerdict",
    "decide_unitary",
    "ScanReport",
    "scan",
    "CSV_HEADER",
]


@dataclass(frozen=True)
class PositiveDefinite:
    pass


@dataclass(frozen=True)
class Indefinite:
    witness_k: int
    reason: str = ""


@dataclass(frozen=True)
class Inconsistent:
    witness_equation: str


@dataclass(frozen=True)
class GramEquation:
    """``lhs * g[hi] = rhs * g[lo]`` from generator ``gen`` applied to v_lo."""

    gen: str
    lo: int
    hi: int
    lhs: GaussianRational
    rhs: GaussianRational

    def holds(self, g: dict) -> bool:
        return self.lhs * g[self.hi] == self.rhs * g[self.lo]

    def __str__(self):
        return f"{self.gen} at k={self.lo}: ({self.lhs})*g[{self.hi}] = ({self.rhs})*g[{self.lo}]"


@dataclass
class GramDiagonal:
    window: tuple[int, int]
    entries: dict
    status: PositiveDefinite | Indefinite | Inconsistent
    equations: list = field(default_factory=list, repr=False)

    @property
    def positive_definite(self) -> bool:
        return isinstance(self.status, PositiveDefinite)

    def replay(self) -> bool:
        """Every non-degenerate equation used to build the entries still holds."""
        return all(eq.holds(self.entries) for eq in self.equations)

    def to_dict(self) -> dict:
        st = self.status
        if isinstance(st, PositiveDefinite):
            status = {"status": "positive_definite"}
        elif isinstance(st, Indefinite):
            status = {"status": "indefinite", "witness_k": st.witness_k, "reason": st.reason}
        else:
            status = {"status": "inconsistent", "witness_equation": st.witness_equation}
        return {
            "window": list(self.window),
            **status,
            "entries": {str(k): format_scalar(v) for k, v in sorted(self.entries.items())},
        }


def _check_inputs(spec, theta):
    if not isinstance(spec, HVSeries):
        raise TypeError("unitarity is decided for A_{a,b,c} (HVSeries) only")
    if not isinstance(theta, PlusType):
        raise TypeError("only theta^+ admits nontrivial unitary modules")
    validate_params(theta)


def gram_equations(spec: HVSeries, theta: PlusType, window: tuple[int, int]) -> list[GramEquation]:
    """Contravariance equations for n in {1, 2}, all k with k, k+n in the window.

    ``<L_n v_k, v_{k+n}> = <v_k, alpha^n L_{-n} v_{k+n}>`` gives
    ``(a+k+nb) g_{k+n} = alpha^n conj(a+k+n-nb) g_k``; the I_n analogue gives
    ``c g_{k+n} = alpha^n conj(u c) g_k``.
    """
    a, b, c = spec.a, spec.b, spec.c
    alpha = theta.alpha
    u = theta.phase.value
    lo, hi = window
    out = []
    for k in range(lo, hi + 1):
        for n in (1, 2):
            if k + n > hi:
                continue
            an = GaussianRational(alpha**n)
            out.append(GramEquation(f"L[{n}]", k, k + n, a + k + b * n,
                                    an * (a + k + n - b * n).conjugate()))
            out.append(GramEquation(f"I[{n}]", k, k + n, c, an * (u * c).conjugate()))
    return out


def _positive(z: GaussianRational) -> bool:
    return z.im == 0 and z.re > 0


def solve_gram(spec: HVSeries, theta: PlusType, window: tuple[int, int]) -> GramDiagonal:
    """Solve the diagonal contravariance equations on ``window``.

    Equations with both coefficients zero are skipped. Each connected component
    of the remaining constraint graph is normalised to ``g = 1`` at its index of
    smallest ``|k|`` (so ``g_0 = 1`` whenever 0 is in the window).
    """
    _check_inputs(spec, theta)
    lo, hi = window
    if hi - lo + 1 < 4:
        raise ValueError("window must contain at least 4 indices")
    eqs = gram_equations(spec, theta, window)
    live = [e for e in eqs if e.lhs or e.rhs]

    forced_zero = []
    edges: dict[int, list[tuple[int, GaussianRational]]] = {k: [] for k in range(lo, hi + 1)}
    ratio_eqs = []
    for e in live:
        if e.lhs and e.rhs:
            r = e.rhs / e.lhs  # g[hi] = r * g[lo]
            edges[e.lo].append((e.hi, r))
            edges[e.hi].append((e.lo, ONE / r))
            ratio_eqs.append((e, r))
        elif e.lhs:
            forced_zero.append((e.hi, e))
        else:
            forced_zero.append((e.lo, e))

    g: dict[int, GaussianRational] = {}
    for anchor in sorted(range(lo, hi + 1), key=lambda k: (abs(k), k)):
        if anchor in g:
            continue
        g[anchor] = ONE
        stack = [anchor]
        while stack:
            k = stack.pop()
            for j, r in edges[k]:
                if j not in g:
                    g[j] = g[k] * r
                    stack.append(j)

    for e, _ in ratio_eqs:
        if not e.holds(g):
            return GramDiagonal(window, g, Inconsistent(str(e)), live)
    if forced_zero:
        k, e = min(forced_zero, key=lambda t: t[0])
        return GramDiagonal(window, g, Indefinite(k, f"forced zero by {e}"), live)
    for e, r in sorted(ratio_eqs, key=lambda t: (t[0].hi, t[0].hi - t[0].lo)):
        if not _positive(r):
            return GramDiagonal(window, g, Indefinite(e.hi, f"ratio {r} from {e}"), live)
    for k in sorted(g):
        if not _positive(g[k]):
            return GramDiagonal(window, g, Indefinite(k, f"g[{k}] = {g[k]}"), live)
    return GramDiagonal(window, g, PositiveDefinite(), live)


def hermitian(gram: GramDiagonal, x: ModuleVector, y: ModuleVector) -> GaussianRational:
    """``<x, y> = sum_k x_k conj(y_k) g_k``."""
    total = GaussianRational(0)
    for k, c in x.items():
        d = y.coefficient(k)
        if d:
            total = total + c * d.conjugate() * gram.entries[k]
    return total


def _contravariance_generators(index_range: int) -> list[Basis]:
    out = [Basis("L", 0), Basis("I", 0)]
    for d in range(1, index_range + 1):
        out += [Basis("L", d), Basis("L", -d), Basis("I", d), Basis("I", -d)]
    return out + [CL, CI, CLI]


def check_contravariance(
    spec: HVSeries, theta: PlusType, gram: GramDiagonal, index_range: int
) -> VerificationReport:
    """Replay ``<x v_j, v_k> = <v_j, theta(x) v_k>`` on every pair inside the window."""
    _check_inputs(spec, theta)
    lo, hi = gram.window
    checked = failures = 0
    witness = None
    for x in _contravariance_generators(index_range):
        tx = apply(theta, x)
        images = {k: act(spec, tx, ModuleVector.basis(k)) for k in range(lo, hi + 1)}
        for j in range(lo, hi + 1):
            xv = act(spec, x, ModuleVector.basis(j))
            for k in range(lo, hi + 1):
                tv = images[k]
                if not (xv.support() | tv.support()) <= gram.entries.keys():
                    continue
                checked += 1
                if k not in xv.support() and j not in tv.support():
                    continue  # both sides vanish by orthogonality
                left = hermitian(gram, xv, ModuleVector.basis(k))
                right = hermitian(gram, ModuleVector.basis(j), tv)
                if left != right:
                    failures += 1
                    if witness is None:
                        witness = {"generator": str(x), "j": j, "k": k,
                                   "lhs": format_scalar(left), "rhs": format_scalar(right)}
    return VerificationReport(
        "contravariance", failures == 0, checked, failures, witness, {"range": index_range}
    )


def normalize_alpha(gram: GramDiagonal, alpha) -> GramDiagonal:
    """Rescale ``g_k -> alpha^{-k} g_k``: a form for theta^+_{alpha} becomes one for theta^+_1."""
    alpha = Fraction(alpha)
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    entries = {k: v * alpha ** (-k) for k, v in gram.entries.items()}
    return GramDiagonal(gram.window, entries, gram.status)


def predicate_unitary(a, b, c, phase) -> bool:
    """Closed form: ``Im a = 0``, ``Re b = 1/2`` and ``c * u == conj(c)``."""
    a, b, c = as_gaussian(a), as_gaussian(b), as_gaussian(c)
    u = phase.value if isinstance(phase, UnitPhase) else UnitPhase(phase).value
    return a.im == 0 and b.re == Fraction(1, 2) and c * u == c.conjugate()


@dataclass
class UnitarityVerdict:
    predicate_result: bool
    gram_result: bool
    details: dict

    @property
    def consistent(self) -> bool:
        return self.predicate_result == self.gram_result

    def to_dict(self) -> dict:
        return {
            "predicate": self.predicate_result,
            "gram": self.gram_result,
            "consistent": self.consistent,
            **self.details,
        }


def decide_unitary(
    spec: HVSeries, theta: PlusType, window: tuple[int, int], replay_range: int = 3
) -> UnitarityVerdict:
    """Run the closed-form predicate and the Gram construction; report both.

    The Gram route only sees the window. For real ``b`` in {0, 1} the equations
    stay consistent and the only sign change sits near ``k = -Re a``, so the
    window has to contain that index for the two routes to be comparable.
    """
    _check_inputs(spec, theta)
    pred = predicate_unitary(spec.a, spec.b, spec.c, theta.phase)
    gram = solve_gram(spec, theta, window)
    details = {"gram": gram.to_dict()}
    ok = gram.positive_definite and gram.replay()
    if gram.positive_definite:
        rep = check_contravariance(spec, theta, gram, replay_range)
        details["contravariance"] = rep.to_dict()
        ok = ok and rep.passed
    return UnitarityVerdict(pred, ok, details)


# -- grid scan ------------------------------------------------------------------

CSV_HEADER = ["a", "b_re", "b_im", "c_re", "c_im", "phase", "alpha", "predicate", "gram", "consistent"]


def _q(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass
class ScanReport:
    rows: list = field(default_factory=list)

    @property
    def total(self) -> int:
        return len(self.rows)

    @property
    def unitary(self) -> int:
        return sum(1 for r in self.rows if r["predicate"] and r["gram"])

    @property
    def inconsistent(self) -> int:
        return sum(1 for r in self.rows if not r["consistent"])

    @property
    def passed(self) -> bool:
        return self.inconsistent == 0

    def summary(self) -> dict:
        return {"points": self.total, "unitary": self.unitary, "inconsistent": self.inconsistent}

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for r in self.rows:
            w.writerow([r[h] if not isinstance(r[h], bool) else str(r[h]).lower() for h in CSV_HEADER])
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps({"schema": 1, "summary": self.summary(), "points": self.rows},
                          indent=2, sort_keys=True)


def _scan_point(args) -> dict:
    a, b, c, u, alpha, window = args
    spec = HVSeries(a, b, c)
    theta = PlusType(alpha, UnitPhase(u))
    v = decide_unitary(spec, theta, window)
    return {
        "a": format_scalar(a),
        "b_re": _q(b.re),
        "b_im": _q(b.im),
        "c_re": _q(c.re),
        "c_im": _q(c.im),
        "phase": format_scalar(u),
        "alpha": _q(Fraction(alpha)),
        "predicate": v.predicate_result,
        "gram": v.gram_result,
        "consistent": v.consistent,
    }


def scan(
    a_values: Sequence,
    b_values: Sequence,
    c_values: Sequence,
    phases: Sequence,
    window: tuple[int, int],
    alphas: Sequence = (1,),
    workers: int = 1,
) -> ScanReport:
    """Evaluate :func:`decide_unitary` on the Cartesian grid, in grid order."""
    pts = [
        (as_gaussian(a), as_gaussian(b), as_gaussian(c),
         (u.value if isinstance(u, UnitPhase) else as_gaussian(u)), Fraction(al), tuple(window))
        for a, b, c, u, al in itertools.product(a_values, b_values, c_values, phases, alphas)
    ]
    if workers > 1 and len(pts) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            rows = list(ex.map(_scan_point, pts, chunksize=8))
    else:
        rows = [_scan_point(p) for p in pts]
    return ScanReport(rows)
