"""The Virasoro copy ``Vir'`` attached to a degree-preserving involution.

For ``theta = MinusType(alpha, alpha1, beta1, betam1)`` put ``L'_n = L_n + x_n I_n``
where ``x_n`` solves

    alpha * x_n + alpha1 * conj(x_n) = (n-1)/2 alpha^2 betam1 - (n+1)/2 beta1,

and define ``C'`` by ``(n^3 - n)/12 C' = [L'_n, L'_{-n}] + 2n L'_0``.

The relations force ``x_n = lambda (n - 1)``: the ``I`` part makes ``x`` affine
in n and the central part kills the constant. At ``n = 1`` the equation then
reads ``beta1 = 0``, so a tuple with ``beta1 != 0`` fails the ``C'`` check for
every choice of ``x_n``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import CENTER, Basis, I, L, LieElement, bracket
from .involutions import MinusType, apply, validate_params
from .scalar import GaussianRational

__all__ = [
    "InconsistentConstraint",
    "ConsistencyFailure",
    "VirPrime",
    "xn_rhs",
    "solve_xn",
    "build_vir_prime",
]


class InconsistentConstraint(ValueError):
    """The right-hand side is outside the image of ``x -> alpha x + alpha1 conj(x)``."""

    def __init__(self, n: int, rhs: GaussianRational):
        self.n = n
        self.rhs = rhs
        super().__init__(f"x_{n}: right-hand side {rhs} not in the image of the map")


class ConsistencyFailure(ValueError):
    def __init__(self, check: str, where, detail: str):
        self.check = check
        self.where = where
        self.detail = detail
        super().__init__(f"{check} fails at {where}: {detail}")


def xn_rhs(theta: MinusType, n: int) -> GaussianRational:
    a = theta.alpha.value
    return theta.betam1 * a * a * Fraction(n - 1, 2) - theta.beta1 * Fraction(n + 1, 2)


def solve_xn(theta: MinusType, n: int) -> GaussianRational:
    """Minimal-norm solution of ``alpha x + alpha1 conj(x) = d_n``.

    Dividing by alpha gives ``x + w conj(x) = y`` with ``|w| = 1``. The map has a
    one-dimensional image ``{y : y = w conj(y)}``; on it ``x = y/2`` solves the
    equation and is orthogonal to the kernel, hence of minimal norm.
    """
    if not isinstance(theta, MinusType):
        raise TypeError("solve_xn needs a MinusType involution")
    a, a1 = theta.alpha.value, theta.alpha1.value
    d = xn_rhs(theta, n)
    y = d / a
    w = a1 / a
    if y != w * y.conjugate():
        raise InconsistentConstraint(n, d)
    return y * Fraction(1, 2)


@dataclass(frozen=True)
class VirPrime:
    theta_params: MinusType
    x: dict
    c_prime: LieElement
    index_range: int

    def l_prime(self, n: int) -> LieElement:
        return LieElement({L(n): 1, I(n): self.x[n]})


def _c_prime_at(lp: dict, n: int) -> LieElement:
    raw = bracket(lp[n], lp[-n]) + lp[0].scale(2 * n)
    return raw.scale(Fraction(12, n**3 - n))


def build_vir_prime(theta: MinusType, index_range: int) -> VirPrime:
    """Build ``L'_n`` for ``|n| <= 2 * index_range`` and verify the Virasoro relations.

    Raises :class:`ConsistencyFailure` naming the first failing check.
    """
    if index_range < 2:
        raise ValueError("index_range must be >= 2")
    validate_params(theta)
    span = 2 * index_range
    x = {n: solve_xn(theta, n) for n in range(-span, span + 1)}
    lp = {n: LieElement({L(n): 1, I(n): x[n]}) for n in x}

    c_prime = _c_prime_at(lp, 2)
    # (a) the same C' from every n with n^3 - n != 0
    for n in range(-index_range, index_range + 1):
        if n**3 - n == 0:
            continue
        cn = _c_prime_at(lp, n)
        if cn != c_prime:
            raise ConsistencyFailure("C' consistency", n, f"{cn} != {c_prime}")
    if not c_prime.support() <= CENTER:
        raise ConsistencyFailure("C' central", 2, str(c_prime))

    # (b) [L'_m, L'_n] = (n-m) L'_{m+n} + delta_{m+n,0} (m^3-m)/12 C'
    for m in range(-index_range, index_range + 1):
        for n in range(-index_range, index_range + 1):
            lhs = bracket(lp[m], lp[n])
            rhs = lp[m + n].scale(n - m)
            if m + n == 0:
                rhs = rhs + c_prime.scale(Fraction(m**3 - m, 12))
            if lhs != rhs:
                raise ConsistencyFailure("Virasoro relation", (m, n), f"{lhs} != {rhs}")

    # (c) theta(L'_n) = -alpha^n L'_n, and theta(C') = -C'
    a = theta.alpha.value
    for n in range(-index_range, index_range + 1):
        got = apply(theta, lp[n])
        want = lp[n].scale(-(a**n))
        if got != want:
            raise ConsistencyFailure("theta-equivariance", n, f"{got} != {want}")
    if apply(theta, c_prime) != -c_prime:
        raise ConsistencyFailure("theta(C') = -C'", None, str(apply(theta, c_prime)))

    return VirPrime(theta, x, c_prime, index_range)
