"""The twisted Heisenberg-Virasoro algebra.

Basis ``{L_m, I_m, C_L, C_I, C_LI}`` with

    [L_m, L_n] = (n - m) L_{m+n} + delta_{m+n,0} (m^3 - m)/12 C_L
    [I_m, I_n] = n delta_{m+n,0} C_I
    [L_m, I_n] = n I_{m+n} + delta_{m+n,0} (m^2 - m) C_LI

and ``C_L, C_I, C_LI`` central.  ``I_0`` is central as well.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, NamedTuple

from .scalar import ZERO, GaussianRational, as_gaussian

__all__ = [
    "Basis",
    "L",
    "I",
    "CL",
    "CI",
    "CLI",
    "LieElement",
    "bracket",
    "basis_bracket",
    "basis_symbols",
    "degree",
    "VerificationReport",
    "check_jacobi",
    "jacobi_residual",
    "SpanPattern",
    "check_ideal",
    "CENTER",
]

_KIND_RANK = {"L": 0, "I": 1, "CL": 2, "CI": 3, "CLI": 4}


class Basis(NamedTuple):
    """A basis symbol. ``index`` is 0 for the three central symbols."""

    kind: str
    index: int = 0

    def sort_key(self):
        return (_KIND_RANK[self.kind], self.index)

    @property
    def is_central(self) -> bool:
        return self.kind in ("CL", "CI", "CLI") or (self.kind == "I" and self.index == 0)

    def __str__(self):
        if self.kind in ("L", "I"):
            return f"{self.kind}[{self.index}]"
        return self.kind


def L(m: int) -> Basis:
    return Basis("L", m)


def I(m: int) -> Basis:  # noqa: E743
    return Basis("I", m)


CL = Basis("CL")
CI = Basis("CI")
CLI = Basis("CLI")

# Center of the algebra: span{C_L, C_I, C_LI, I_0}.
CENTER = frozenset({CL, CI, CLI, I(0)})


def degree(b: Basis) -> int:
    """Weight of a basis symbol under ad(L_0); centrals have degree 0."""
    return b.index if b.kind in ("L", "I") else 0


def basis_symbols(index_range: int, centrals: bool = True) -> list[Basis]:
    """All ``L_m, I_m`` with ``|m| <= index_range`` (plus centrals), canonical order."""
    out = [L(m) for m in range(-index_range, index_range + 1)]
    out += [I(m) for m in range(-index_range, index_range + 1)]
    if centrals:
        out += [CL, CI, CLI]
    return out


class LieElement:
    """Finite linear combination of basis symbols. No zero coefficients are stored."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Basis, object] | Iterable[tuple[Basis, object]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Basis, GaussianRational] = {}
        for b, c in items:
            if not isinstance(b, Basis):
                raise TypeError(f"not a basis symbol: {b!r}")
            c = as_gaussian(c)
            acc[b] = acc[b] + c if b in acc else c
        self._terms = {b: c for b, c in acc.items() if c}

    @classmethod
    def _from_clean(cls, terms: dict) -> "LieElement":
        obj = object.__new__(cls)
        obj._terms = terms
        return obj

    @classmethod
    def basis(cls, b: Basis) -> "LieElement":
        return cls._from_clean({b: GaussianRational(1)})

    @classmethod
    def zero(cls) -> "LieElement":
        return cls._from_clean({})

    @property
    def terms(self) -> Mapping[Basis, GaussianRational]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Basis, GaussianRational]]:
        """Terms in canonical basis order."""
        for b in sorted(self._terms, key=Basis.sort_key):
            yield b, self._terms[b]

    def coefficient(self, b: Basis) -> GaussianRational:
        return self._terms.get(b, ZERO)

    def support(self) -> frozenset[Basis]:
        return frozenset(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if isinstance(other, LieElement):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "LieElement") -> "LieElement":
        if not isinstance(other, LieElement):
            return NotImplemented
        out = dict(self._terms)
        for b, c in other._terms.items():
            v = out.get(b)
            if v is None:
                out[b] = c
            else:
                v = v + c
                if v:
                    out[b] = v
                else:
                    del out[b]
        return LieElement._from_clean(out)

    def __neg__(self):
        return LieElement._from_clean({b: -c for b, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, LieElement):
            return NotImplemented
        return self + (-other)

    def scale(self, s) -> "LieElement":
        s = as_gaussian(s)
        if not s:
            return LieElement.zero()
        return LieElement._from_clean({b: c * s for b, c in self._terms.items()})

    def __mul__(self, s):
        if isinstance(s, LieElement):
            return NotImplemented
        return self.scale(s)

    __rmul__ = __mul__

    def __repr__(self):
        from .parser import format_element

        return f"LieElement({format_element(self)!r})"

    def __str__(self):
        from .parser import format_element

        return format_element(self)


def _accumulate(out: dict, b: Basis, c) -> None:
    v = out.get(b)
    if v is None:
        out[b] = c
    else:
        v = v + c
        if v:
            out[b] = v
        else:
            del out[b]


def basis_bracket(x: Basis, y: Basis) -> dict[Basis, Fraction]:
    """Structure constants: ``[x, y]`` as a map basis -> rational coefficient."""
    kx, ky = x.kind, y.kind
    if kx not in ("L", "I") or ky not in ("L", "I"):
        return {}
    m, n = x.index, y.index
    out: dict[Basis, Fraction] = {}
    if kx == "L" and ky == "L":
        if n - m:
            out[L(m + n)] = Fraction(n - m)
        if m + n == 0 and m**3 - m:
            out[CL] = Fraction(m**3 - m, 12)
    elif kx == "I" and ky == "I":
        if m + n == 0 and n:
            out[CI] = Fraction(n)
    elif kx == "L":  # [L_m, I_n]
        if n:
            out[I(m + n)] = Fraction(n)
        if m + n == 0 and m * m - m:
            out[CLI] = Fraction(m * m - m)
    else:  # [I_m, L_n] = -[L_n, I_m]
        if m:
            out[I(m + n)] = Fraction(-m)
        if m + n == 0 and n * n - n:
            out[CLI] = Fraction(-(n * n - n))
    return out


def bracket(x: LieElement, y: LieElement) -> LieElement:
    """Bilinear extension of the basis brackets."""
    out: dict[Basis, GaussianRational] = {}
    for bx, cx in x._terms.items():
        if bx.kind not in ("L", "I"):
            continue
        for by, cy in y._terms.items():
            sc = basis_bracket(bx, by)
            if not sc:
                continue
            cxy = cx * cy
            for b, k in sc.items():
                _accumulate(out, b, cxy * k)
    return LieElement._from_clean(out)


def _el(x) -> LieElement:
    return x if isinstance(x, LieElement) else LieElement.basis(x)


@dataclass
class VerificationReport:
    """Outcome of an exhaustive check. ``witness`` describes the first failure."""

    name: str
    passed: bool
    checked: int = 0
    failures: int = 0
    witness: dict | None = None
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "failures": self.failures,
            "witness": self.witness,
            "details": self.details,
        }


def jacobi_residual(x, y, z) -> LieElement:
    """``[x,[y,z]] + [y,[z,x]] + [z,[x,y]]``."""
    x, y, z = _el(x), _el(y), _el(z)
    return bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y))


def check_jacobi(index_range: int, stop_at_first: bool = False) -> VerificationReport:
    """Evaluate the Jacobi residual on every basis triple with indices in ``[-r, r]``."""
    if index_range < 0:
        raise ValueError("index_range must be >= 0")
    syms = basis_symbols(index_range)
    # Pre-bracketing basis pairs once keeps the sweep cheap.
    table = {(p, q): LieElement(basis_bracket(p, q)) for p in syms for q in syms}

    def br(b: Basis, el: LieElement) -> LieElement:
        out: dict = {}
        for t, c in el._terms.items():
            sc = table.get((b, t))
            if sc is None:
                sc = LieElement(basis_bracket(b, t))
            for s, k in sc._terms.items():
                _accumulate(out, s, k * c)
        return LieElement._from_clean(out)

    checked = failures = 0
    witness = None
    for x, y, z in itertools.product(syms, repeat=3):
        checked += 1
        r = br(x, table[(y, z)]) + br(y, table[(z, x)]) + br(z, table[(x, y)])
        if r:
            failures += 1
            if witness is None:
                witness = {"triple": [str(x), str(y), str(z)], "residual": str(r)}
                if stop_at_first:
                    break
    return VerificationReport(
        "jacobi", failures == 0, checked, failures, witness, {"range": index_range}
    )


def _by_degree(syms: list[Basis]) -> list[Basis]:
    # low |degree| first, so witnesses come out as small as possible
    return sorted(syms, key=lambda b: (abs(degree(b)), degree(b) < 0, b.sort_key()))


@dataclass(frozen=True)
class SpanPattern:
    """A graded span: whole families (``"L"``, ``"I"``) plus individual symbols."""

    families: frozenset[str] = frozenset()
    symbols: frozenset[Basis] = frozenset()

    @classmethod
    def of(cls, *items: str | Basis) -> "SpanPattern":
        fam, syms = set(), set()
        for it in items:
            if isinstance(it, Basis):
                syms.add(it)
            elif it in ("L", "I", "L[*]", "I[*]"):
                fam.add(it[0])
            elif it in ("CL", "CI", "CLI"):
                syms.add(Basis(it))
            else:
                from .parser import parse_basis

                syms.add(parse_basis(it))
        return cls(frozenset(fam), frozenset(syms))

    def __contains__(self, b: Basis) -> bool:
        return b.kind in self.families or b in self.symbols

    def generators(self, index_range: int) -> list[Basis]:
        out = [b for b in _by_degree(basis_symbols(index_range)) if b in self]
        out += sorted((b for b in self.symbols if b not in out), key=Basis.sort_key)
        return out

    def __str__(self):
        parts = [f"{f}[*]" for f in sorted(self.families)]
        parts += [str(b) for b in sorted(self.symbols, key=Basis.sort_key)]
        return "span{" + ", ".join(parts) + "}"


def check_ideal(span: SpanPattern, index_range: int) -> VerificationReport:
    """Check ``[b, g]`` stays in ``span`` for all basis ``b`` and generators ``g`` in range."""
    outer = _by_degree(basis_symbols(index_range))
    gens = span.generators(index_range)
    checked = failures = 0
    witness = None
    for g in gens:
        for b in outer:
            checked += 1
            res = basis_bracket(b, g)
            bad = [s for s in sorted(res, key=Basis.sort_key) if s not in span]
            if bad:
                failures += 1
                if witness is None:
                    witness = {
                        "outer": str(b),
                        "generator": str(g),
                        "bracket": str(LieElement(res)),
                        "offending": str(bad[0]),
                    }
    return VerificationReport(
        "ideal", failures == 0, checked, failures, witness,
        {"span": str(span), "range": index_range},
    )
