"""Intermediate-series modules with basis ``{v_k : k in Z}``.

Families
--------
``HVSeries(a, b, c)``
    A_{a,b,c} over the full algebra: ``L_m v_k = (a+k+mb) v_{k+m}``,
    ``I_m v_k = c v_{k+m}``; ``C_L, C_I, C_LI`` act as zero.
``VirAab(a, b)``
    ``L_n v_k = (a+k+nb) v_{n+k}``.
``VirAalpha(a)``
    ``L_n v_k = (n+k) v_{n+k}`` for ``k != 0``, ``L_n v_0 = n(n+a) v_n``.
``VirBbeta(a)``
    ``L_n v_k = k v_{n+k}`` for ``k != -n``, ``L_n v_{-n} = -n(n+a) v_0``.

The three Virasoro families only admit ``L_m`` and ``C_L`` (acting as zero).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Mapping, Union

from .algebra import (
    CL,
    Basis,
    LieElement,
    VerificationReport,
    _by_degree,
    basis_bracket,
    basis_symbols,
)
from .scalar import ONE, ZERO, GaussianRational, as_gaussian

__all__ = [
    "HVSeries",
    "VirAab",
    "VirAalpha",
    "VirBbeta",
    "ModuleSpec",
    "ModuleVector",
    "UnsupportedGenerator",
    "act",
    "act_basis",
    "action_coefficient",
    "action_is_representation",
    "generators",
    "Simple",
    "ProperSubmodule",
    "detect_simplicity",
    "simplicity_predicate_Aab",
    "iso_predicate_Aab",
]


class UnsupportedGenerator(ValueError):
    """The generator is not part of the algebra the module family is defined over."""

    def __init__(self, spec, symbol):
        self.spec = spec
        self.symbol = symbol
        super().__init__(f"{symbol} does not act on {type(spec).__name__}")


def _central_default():
    return {"CL": ZERO, "CI": ZERO, "CLI": ZERO}


@dataclass(frozen=True)
class HVSeries:
    a: GaussianRational
    b: GaussianRational
    c: GaussianRational
    # Scalars by which C_L, C_I, C_LI act. Zero for A_{a,b,c}; nonzero values
    # only exist to build deliberately broken modules in tests.
    centrals: Mapping[str, GaussianRational] = field(default_factory=_central_default)

    def __post_init__(self):
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, as_gaussian(getattr(self, name)))
        cen = _central_default()
        cen.update({k: as_gaussian(v) for k, v in dict(self.centrals).items()})
        object.__setattr__(self, "centrals", cen)

    def __hash__(self):
        return hash((self.a, self.b, self.c, tuple(sorted(self.centrals.items()))))


@dataclass(frozen=True)
class VirAab:
    a: GaussianRational
    b: GaussianRational

    def __post_init__(self):
        object.__setattr__(self, "a", as_gaussian(self.a))
        object.__setattr__(self, "b", as_gaussian(self.b))


@dataclass(frozen=True)
class VirAalpha:
    a: GaussianRational

    def __post_init__(self):
        object.__setattr__(self, "a", as_gaussian(self.a))


@dataclass(frozen=True)
class VirBbeta:
    a: GaussianRational

    def __post_init__(self):
        object.__setattr__(self, "a", as_gaussian(self.a))


ModuleSpec = Union[HVSeries, VirAab, VirAalpha, VirBbeta]


class ModuleVector:
    """Finite combination of ``v_k``; zero coefficients are never stored."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[int, object] | None = None):
        self._coeffs = {}
        for k, c in (coeffs or {}).items():
            c = as_gaussian(c)
            if c:
                self._coeffs[int(k)] = c

    @classmethod
    def basis(cls, k: int) -> "ModuleVector":
        return cls({k: ONE})

    def coefficient(self, k: int) -> GaussianRational:
        return self._coeffs.get(k, ZERO)

    def items(self) -> Iterator[tuple[int, GaussianRational]]:
        for k in sorted(self._coeffs):
            yield k, self._coeffs[k]

    def support(self) -> frozenset[int]:
        return frozenset(self._coeffs)

    def __bool__(self):
        return bool(self._coeffs)

    def __eq__(self, other):
        if isinstance(other, ModuleVector):
            return self._coeffs == other._coeffs
        if other == 0:
            return not self._coeffs
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._coeffs.items()))

    def __add__(self, other):
        if not isinstance(other, ModuleVector):
            return NotImplemented
        out = dict(self._coeffs)
        for k, c in other._coeffs.items():
            out[k] = out[k] + c if k in out else c
        return ModuleVector(out)

    def __neg__(self):
        return ModuleVector({k: -c for k, c in self._coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, ModuleVector):
            return NotImplemented
        return self + (-other)

    def scale(self, s) -> "ModuleVector":
        s = as_gaussian(s)
        return ModuleVector({k: c * s for k, c in self._coeffs.items()})

    __mul__ = __rmul__ = scale

    def __repr__(self):
        from .parser import format_element

        return f"ModuleVector({format_element(self)!r})"

    def __str__(self):
        from .parser import format_element

        return format_element(self)


def _target_and_coeff(spec: ModuleSpec, b: Basis, k: int) -> tuple[int, GaussianRational]:
    """``b . v_k = coeff * v_target``."""
    kind = b.kind
    if isinstance(spec, HVSeries):
        if kind == "L":
            m = b.index
            return k + m, spec.a + k + spec.b * m
        if kind == "I":
            return k + b.index, spec.c
        return k, spec.centrals[kind]
    if kind == "CL":
        return k, ZERO
    if kind != "L":
        raise UnsupportedGenerator(spec, b)
    n = b.index
    if isinstance(spec, VirAab):
        return k + n, spec.a + k + spec.b * n
    if isinstance(spec, VirAalpha):
        if k != 0:
            return n + k, GaussianRational(n + k)
        return n, (spec.a + n) * n
    if isinstance(spec, VirBbeta):
        if k != -n:
            return n + k, GaussianRational(k)
        return 0, (spec.a + n) * (-n)
    raise TypeError(f"unknown module family {spec!r}")


def act_basis(spec: ModuleSpec, b: Basis, k: int) -> ModuleVector:
    t, c = _target_and_coeff(spec, b, k)
    return ModuleVector({t: c})


def action_coefficient(spec: ModuleSpec, generator_degree: int, generator_kind: str, k: int) -> GaussianRational:
    """The scalar ``lam`` with ``X_degree . v_k = lam * v_{k+degree}``."""
    if generator_kind not in ("L", "I"):
        raise ValueError("generator_kind must be 'L' or 'I'")
    _, c = _target_and_coeff(spec, Basis(generator_kind, generator_degree), k)
    return c


def act(spec: ModuleSpec, x: LieElement | Basis, v: ModuleVector) -> ModuleVector:
    """Linear extension of the family's action formulas."""
    if isinstance(x, Basis):
        x = LieElement.basis(x)
    out: dict[int, GaussianRational] = {}
    for b, cb in x.items():
        for k, cv in v.items():
            t, c = _target_and_coeff(spec, b, k)
            if c:
                val = c * cb * cv
                out[t] = out[t] + val if t in out else val
    return ModuleVector(out)


def generators(spec: ModuleSpec, index_range: int) -> list[Basis]:
    """Basis symbols in range that act on ``spec``."""
    if isinstance(spec, HVSeries):
        return basis_symbols(index_range)
    return [Basis("L", m) for m in range(-index_range, index_range + 1)] + [CL]


def action_is_representation(spec: ModuleSpec, index_range: int) -> VerificationReport:
    """Check ``[x,y].v = x.(y.v) - y.(x.v)`` for all generator pairs and ``v_k`` in range."""
    gens = _by_degree(generators(spec, index_range))
    ks = sorted(range(-index_range, index_range + 1), key=lambda k: (abs(k), k))
    checked = failures = 0
    witness = None
    for x in gens:
        for y in gens:
            br = LieElement(basis_bracket(x, y))
            for k in ks:
                checked += 1
                v = ModuleVector.basis(k)
                lhs = act(spec, br, v)
                rhs = act(spec, x, act(spec, y, v)) - act(spec, y, act(spec, x, v))
                if lhs != rhs:
                    failures += 1
                    if witness is None:
                        witness = {
                            "pair": [str(x), str(y)],
                            "vector": f"v[{k}]",
                            "bracket_action": str(lhs),
                            "commutator_action": str(rhs),
                        }
    return VerificationReport(
        "representation", failures == 0, checked, failures, witness, {"range": index_range}
    )


# -- simplicity ------------------------------------------------------------------


@dataclass(frozen=True)
class Simple:
    window: tuple[int, int]
    evidence: str = ""


@dataclass(frozen=True)
class ProperSubmodule:
    basis_subset: frozenset[int]
    witness: str
    window: tuple[int, int] = (0, 0)
    cofinite: bool = False

    def contains(self, k: int) -> bool:
        """Membership on all of Z (the subset is {k0} or Z minus {k0})."""
        return (k not in self.excluded) if self.cofinite else (k in self.basis_subset)

    @property
    def excluded(self) -> frozenset[int]:
        lo, hi = self.window
        return frozenset(range(lo, hi + 1)) - self.basis_subset


def _affine_L_coefficient(spec) -> tuple[GaussianRational, GaussianRational, GaussianRational] | None:
    """``(p, q, r)`` with L_m v_k coefficient ``p + q k + r m``, when the family is affine."""
    if isinstance(spec, (HVSeries, VirAab)):
        return spec.a, ONE, spec.b
    return None


def _integer_root(num: GaussianRational, den: GaussianRational) -> int | None:
    """Solve ``num + den * k = 0`` for integer ``k``; None if no integer root."""
    if not den:
        return None
    k = -num / den
    return int(k.re) if k.is_integer() else None


def _degenerate_vertices(spec) -> tuple[list[int], list[int]]:
    """Vertices all of whose outgoing (sinks) / incoming (sources) L-edges vanish.

    Solved exactly from the coefficient formulas, independent of any window.
    """
    if isinstance(spec, HVSeries) and spec.c:
        # I-edges carry the nonzero constant c between every pair of vertices.
        return [], []
    coeffs = _affine_L_coefficient(spec)
    if coeffs is not None:
        p, q, r = coeffs
        sinks, sources = [], []
        # out-edges of k: p + q k + r m == 0 for all m  <=>  r == 0 and p + q k == 0
        if not r:
            k0 = _integer_root(p, q)
            if k0 is not None:
                sinks.append(k0)
        # in-edges of j (from k, m = j - k): (p + r j) + (q - r) k == 0 for all k
        if q == r:
            j0 = _integer_root(p, r)
            if j0 is not None:
                sources.append(j0)
        return sinks, sources
    if isinstance(spec, VirAalpha):
        # only k != 0 reach v_0 via coefficient n + k = 0 -> every in-edge vanishes
        return [], [0]
    if isinstance(spec, VirBbeta):
        # L_n v_0 = 0 * v_n for n != 0
        return [0], []
    raise TypeError(spec)


def _edge_nonzero(spec, k: int, j: int) -> bool:
    """Is v_j reachable from v_k in one step (some generator of degree j - k)?"""
    m = j - k
    if isinstance(spec, HVSeries) and spec.c:
        return True
    t, c = _target_and_coeff(spec, Basis("L", m), k)
    return t == j and bool(c)


def _closure(spec, start: int, lo: int, hi: int) -> set[int]:
    seen = {start}
    stack = [start]
    while stack:
        k = stack.pop()
        for j in range(lo, hi + 1):
            if j not in seen and _edge_nonzero(spec, k, j):
                seen.add(j)
                stack.append(j)
    return seen


def detect_simplicity(spec: ModuleSpec, window: int) -> Simple | ProperSubmodule:
    """Decide simplicity from the reachability graph on basis indices.

    Vertices that lose all their out- or in-edges are located exactly from the
    coefficient formulas; every other vertex misses at most finitely many edges,
    so such vertices cannot split Z. The window ``[-window, window]`` is then
    used to exhibit the invariant subset and confirm its closure.
    """
    if window < 3:
        raise ValueError("window must be >= 3")
    lo, hi = -window, window
    sinks, sources = _degenerate_vertices(spec)
    everything = set(range(lo, hi + 1))

    for k0 in sinks:
        sub = _closure(spec, k0, lo, hi)
        if sub != everything:
            return ProperSubmodule(
                frozenset(sub),
                f"every L_m v_{k0} vanishes: span(v_{k0}) is invariant",
                (lo, hi),
                cofinite=False,
            )
    for j0 in sources:
        if lo <= j0 <= hi:
            sub = everything - {j0}
            start = min(sub, key=lambda k: (abs(k), k))
            reach = _closure(spec, start, lo, hi)
            if j0 not in reach:
                return ProperSubmodule(
                    frozenset(reach),
                    f"no generator maps into v_{j0}: span(v_k : k != {j0}) is invariant",
                    (lo, hi),
                    cofinite=True,
                )

    # No degenerate vertex: confirm strong connectivity on the window.
    for k in sorted(everything):
        reach = _closure(spec, k, lo, hi)
        if reach != everything:
            return ProperSubmodule(
                frozenset(reach),
                f"window closure of v_{k} is proper (window-limited evidence)",
                (lo, hi),
            )
    return Simple((lo, hi), "no vertex loses all in- or out-edges; window strongly connected")


def simplicity_predicate_Aab(a, b) -> bool:
    """Closed form: A_{a,b} is simple unless a is an integer and b is 0 or 1."""
    a, b = as_gaussian(a), as_gaussian(b)
    return not (a.is_integer() and (b == 0 or b == 1))


def iso_predicate_Aab(a, b, a2, b2) -> bool:
    """A_{a,b} ~ A_{a2,b2} iff a - a2 in Z and (b == b2, or a not in Z and {b, b2} = {0, 1})."""
    a, b, a2, b2 = map(as_gaussian, (a, b, a2, b2))
    if not (a - a2).is_integer():
        return False
    if b == b2:
        return True
    return (not a.is_integer()) and {b, b2} == {ZERO, ONE}
