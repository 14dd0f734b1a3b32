"""Conjugate-linear anti-involutions of the twisted Heisenberg-Virasoro algebra.

Two parameter families:

``PlusType(alpha, phase)``
    L_n -> alpha^n L_{-n},  C_L -> C_L,  I_m -> alpha^m u I_{-m} (m != 0),
    I_0 -> u I_0 + 2u C_LI,  C_I -> u^2 C_I,  C_LI -> -u C_LI,
    with ``u = e^{i gamma}`` held exactly as a :class:`UnitPhase`.

``MinusType(alpha, alpha1, beta1, betam1)``
    degree-preserving, with ``alpha_n = alpha1 * alpha^(n-1)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .algebra import (
    CI,
    CL,
    CLI,
    Basis,
    LieElement,
    VerificationReport,
    _accumulate,
    basis_bracket,
    basis_symbols,
    bracket,
    I,
    L,
)
from .scalar import ONE, GaussianRational, UnitPhase, as_gaussian

__all__ = [
    "PlusType",
    "MinusType",
    "InvolutionSpec",
    "ConstraintViolation",
    "validate_params",
    "apply",
    "image",
    "AxiomReport",
    "check_axioms",
]


class ConstraintViolation(ValueError):
    """A parameter tuple outside the family it claims to belong to."""

    def __init__(self, constraint: str, lhs, rhs):
        self.constraint = constraint
        self.lhs = lhs
        self.rhs = rhs
        super().__init__(f"{constraint}: {lhs} != {rhs}")


@dataclass(frozen=True)
class PlusType:
    alpha: Fraction
    phase: UnitPhase

    def __post_init__(self):
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        if not isinstance(self.phase, UnitPhase):
            object.__setattr__(self, "phase", UnitPhase(self.phase))

    def describe(self) -> str:
        return f"type=plus alpha={self.alpha} phase={self.phase}"


@dataclass(frozen=True)
class MinusType:
    alpha: UnitPhase
    alpha1: UnitPhase
    beta1: GaussianRational = field(default_factory=GaussianRational)
    betam1: GaussianRational = field(default_factory=GaussianRational)
    # The closed formula for theta(L_n) carries no central terms at n = 0, while
    # theta(L_0) = -1/2 [theta(L_-1), theta(L_1)] forces
    # conj(alpha) beta1 C_LI - 1/2 beta1 betam1 C_I. Off by default.
    complete_l0: bool = False

    def __post_init__(self):
        for name in ("alpha", "alpha1"):
            v = getattr(self, name)
            if not isinstance(v, UnitPhase):
                object.__setattr__(self, name, UnitPhase(v))
        object.__setattr__(self, "beta1", as_gaussian(self.beta1))
        object.__setattr__(self, "betam1", as_gaussian(self.betam1))

    def alpha_n(self, n: int) -> GaussianRational:
        """``alpha_n = alpha1 * alpha^(n-1)``; coefficient of I_n under theta."""
        return self.alpha1.value * self.alpha.value ** (n - 1)

    def describe(self) -> str:
        out = (
            f"type=minus alpha={self.alpha} alpha1={self.alpha1} "
            f"beta1={self.beta1} betam1={self.betam1}"
        )
        return out + " complete_l0=1" if self.complete_l0 else out


InvolutionSpec = Union[PlusType, MinusType]


def validate_params(spec: InvolutionSpec) -> InvolutionSpec:
    """Return ``spec`` unchanged if every family constraint holds, else raise."""
    if isinstance(spec, PlusType):
        if spec.alpha <= 0:
            raise ConstraintViolation("alpha > 0", spec.alpha, "positive")
        return spec
    if not isinstance(spec, MinusType):
        raise TypeError(f"not an involution spec: {spec!r}")
    a, a1 = spec.alpha.value, spec.alpha1.value
    b1, bm1 = spec.beta1, spec.betam1
    checks = [
        ("alpha1*conj(beta1) = conj(alpha)*beta1", a1 * b1.conjugate(), a.conjugate() * b1),
        ("alpha*betam1 = alpha1*conj(betam1)", a * bm1, a1 * bm1.conjugate()),
        ("(conj(alpha)-alpha)*betam1 = 0", (a.conjugate() - a) * bm1, 0),
        ("beta1*betam1*(1+conj(alpha)^2) = 0", b1 * bm1 * (1 + a.conjugate() ** 2), 0),
    ]
    for name, lhs, rhs in checks:
        if lhs != rhs:
            raise ConstraintViolation(name, lhs, rhs)
    return spec


def _plus_image(spec: PlusType, b: Basis) -> dict:
    alpha = spec.alpha
    u = spec.phase.value
    k = b.kind
    if k == "L":
        return {L(-b.index): GaussianRational(alpha**b.index)}
    if k == "CL":
        return {CL: ONE}
    if k == "I":
        m = b.index
        if m:
            return {I(-m): u * alpha**m}
        return {I(0): u, CLI: u * 2}
    if k == "CI":
        return {CI: u * u}
    return {CLI: -u}


def _minus_image(spec: MinusType, b: Basis) -> dict:
    a = spec.alpha.value
    a1 = spec.alpha1.value
    b1, bm1 = spec.beta1, spec.betam1
    k = b.kind
    if k == "L":
        n = b.index
        coef_i = b1 * a ** (n - 1) * Fraction(n + 1, 2) - bm1 * a ** (n + 1) * Fraction(n - 1, 2)
        out = {L(n): -(a**n), I(n): coef_i}
        if n == 0 and spec.complete_l0:
            out[CLI] = a.conjugate() * b1
            out[CI] = -(b1 * bm1) * Fraction(1, 2)
        return out
    if k == "CL":
        ainv = a ** (-1)
        return {
            CL: -ONE,
            CLI: (b1 * ainv - bm1 * a) * (-12),
            CI: bm1 * b1 * 14 - b1 * b1 * ainv * ainv * 3 - bm1 * bm1 * a * a * 3,
        }
    if k == "I":
        n = b.index
        if n:
            return {I(n): spec.alpha_n(n)}
        return {I(0): a1 / a, CI: -(a1 * b1 / (a * a))}
    if k == "CI":
        return {CI: -(a1 * a1 / (a * a))}
    # C_LI: mu is alpha1.
    return {CLI: a1 / a, CI: (a1 * b1 / (a * a) - a1 * bm1) * Fraction(1, 2)}


def image(spec: InvolutionSpec, b: Basis) -> LieElement:
    """theta applied to a single basis symbol."""
    raw = _plus_image(spec, b) if isinstance(spec, PlusType) else _minus_image(spec, b)
    return LieElement(raw)


def apply(spec: InvolutionSpec, x: LieElement | Basis) -> LieElement:
    """Conjugate-linear extension of the basis formulas."""
    if isinstance(x, Basis):
        return image(spec, x)
    out: dict = {}
    for b, c in x.items():
        cc = c.conjugate()
        for t, v in image(spec, b)._terms.items():
            _accumulate(out, t, v * cc)
    return LieElement._from_clean(out)


@dataclass
class AxiomReport:
    conjugate_linear: VerificationReport
    anti_homomorphism: VerificationReport
    involutive: VerificationReport
    range: int

    @property
    def passed(self) -> bool:
        return (
            self.conjugate_linear.passed
            and self.anti_homomorphism.passed
            and self.involutive.passed
        )

    def to_dict(self) -> dict:
        return {
            "range": self.range,
            "passed": self.passed,
            "conjugate_linear": self.conjugate_linear.to_dict(),
            "anti_homomorphism": self.anti_homomorphism.to_dict(),
            "involutive": self.involutive.to_dict(),
        }


def _random_scalar(rng: random.Random) -> GaussianRational:
    return GaussianRational(
        Fraction(rng.randint(-9, 9), rng.randint(1, 6)),
        Fraction(rng.randint(-9, 9), rng.randint(1, 6)),
    )


def check_axioms(
    spec: InvolutionSpec, index_range: int, probes: int = 64, seed: int = 0
) -> AxiomReport:
    """Exhaustively test the anti-involution axioms on basis symbols in range.

    Failures never raise; each sub-report carries its first witness.
    """
    syms = basis_symbols(index_range)
    images = {b: image(spec, b) for b in syms}

    def theta(x: LieElement) -> LieElement:
        out: dict = {}
        for b, c in x._terms.items():
            img = images.get(b)
            if img is None:
                img = images[b] = image(spec, b)
            cc = c.conjugate()
            for t, v in img._terms.items():
                _accumulate(out, t, v * cc)
        return LieElement._from_clean(out)

    # conjugate-linearity on random combinations of basis symbols
    rng = random.Random(seed)
    cl_fail, cl_wit = 0, None
    for _ in range(probes):
        b1, b2 = rng.choice(syms), rng.choice(syms)
        s1, s2 = _random_scalar(rng), _random_scalar(rng)
        x = LieElement({b1: s1}) + LieElement({b2: s2})
        lhs = theta(x)
        rhs = images[b1].scale(s1.conjugate()) + images[b2].scale(s2.conjugate())
        if lhs != rhs:
            cl_fail += 1
            if cl_wit is None:
                cl_wit = {"element": str(x), "theta": str(lhs), "expected": str(rhs)}
    conj = VerificationReport("conjugate_linear", cl_fail == 0, probes, cl_fail, cl_wit)

    # theta([x, y]) = [theta(y), theta(x)]
    ah_fail, ah_wit, checked = 0, None, 0
    for x in syms:
        for y in syms:
            checked += 1
            lhs = theta(LieElement(basis_bracket(x, y)))
            rhs = bracket(images[y], images[x])
            if lhs != rhs:
                ah_fail += 1
                if ah_wit is None:
                    ah_wit = {
                        "pair": [str(x), str(y)],
                        "theta_of_bracket": str(lhs),
                        "bracket_of_thetas": str(rhs),
                        "residual": str(lhs - rhs),
                    }
    anti = VerificationReport("anti_homomorphism", ah_fail == 0, checked, ah_fail, ah_wit)

    # theta^2 = id
    inv_fail, inv_wit = 0, None
    for b in syms:
        tt = theta(images[b])
        if tt != LieElement.basis(b):
            inv_fail += 1
            if inv_wit is None:
                inv_wit = {"symbol": str(b), "theta_squared": str(tt)}
    invol = VerificationReport("involutive", inv_fail == 0, len(syms), inv_fail, inv_wit)

    return AxiomReport(conj, anti, invol, index_range)
