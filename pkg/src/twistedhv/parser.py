"""Recursive-descent parser and canonical printer for elements and specs.

Grammar (whitespace between tokens is ignored)::

    expr     := ['-'] term (('+' | '-') term)*  |  '0'
    term     := [coef '*'] symbol
    coef     := scalar | '(' scalar ')'
    scalar   := rational [('+' | '-') rational 'i']  |  rational 'i'
    rational := ['-'] digits ['/' digits]
    symbol   := 'L[' int ']' | 'I[' int ']' | 'CL' | 'CI' | 'CLI' | 'v[' int ']'

``i`` binds to the rational immediately before it.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import CI, CL, CLI, Basis, LieElement
from .scalar import GaussianRational, UnitPhase, format_scalar

__all__ = [
    "ParseError",
    "parse_scalar",
    "parse_rational",
    "parse_basis",
    "parse_element",
    "format_element",
    "format_scalar",
    "parse_module_spec",
    "format_module_spec",
    "parse_involution",
    "parse_window",
]


class ParseError(ValueError):
    """Malformed input. ``offset`` is a 0-based byte offset into the source."""

    def __init__(self, source: str, offset: int, expected: set[str] | frozenset[str]):
        self.source = source
        self.offset = offset
        self.expected = frozenset(expected)
        want = ", ".join(sorted(repr(e) for e in self.expected))
        super().__init__(f"at offset {offset}: expected one of {want} in {source!r}")


class _Cursor:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def at_end(self) -> bool:
        return self.peek() == ""

    def fail(self, *expected: str):
        self.skip_ws()
        raise ParseError(self.text, len(self.text[: self.pos].encode()), set(expected))

    def expect(self, s: str):
        self.skip_ws()
        if not self.text.startswith(s, self.pos):
            self.fail(s)
        self.pos += len(s)

    def accept(self, s: str) -> bool:
        self.skip_ws()
        if self.text.startswith(s, self.pos):
            self.pos += len(s)
            return True
        return False

    def digits(self) -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.fail("digit")
        return self.text[start : self.pos]

    def integer(self) -> int:
        neg = self.accept("-")
        if not neg:
            self.accept("+")
        v = int(self.digits())
        return -v if neg else v

    def rational(self) -> Fraction:
        neg = self.accept("-")
        num = int(self.digits())
        den = 1
        if self.accept("/"):
            den = int(self.digits())
            if den == 0:
                self.pos -= 1
                self.fail("nonzero denominator")
        q = Fraction(num, den)
        return -q if neg else q


def _scalar(cur: _Cursor) -> GaussianRational:
    if cur.accept("("):
        z = _scalar(cur)
        cur.expect(")")
        return z
    re = cur.rational()
    if cur.accept("i"):
        return GaussianRational(0, re)
    save = cur.pos
    nxt = cur.peek()
    if nxt in ("+", "-"):
        cur.pos += 1
        if cur.peek().isdigit():
            im = cur.rational()
            if nxt == "-":
                im = -im
            cur.expect("i")
            return GaussianRational(re, im)
        cur.pos = save
    return GaussianRational(re, 0)


def parse_scalar(text: str) -> GaussianRational:
    """Parse ``p``, ``p/q``, ``r/si`` or ``p/q+r/si`` (optionally parenthesised)."""
    cur = _Cursor(text)
    if cur.at_end():
        cur.fail("rational")
    z = _scalar(cur)
    if not cur.at_end():
        cur.fail("end of input")
    return z


def parse_rational(text: str) -> Fraction:
    cur = _Cursor(text)
    q = cur.rational()
    if not cur.at_end():
        cur.fail("end of input")
    return q


def _symbol(cur: _Cursor):
    for name in ("CLI", "CL", "CI"):
        if cur.accept(name):
            return Basis(name)
    for kind in ("L", "I", "v"):
        if cur.accept(kind):
            cur.expect("[")
            n = cur.integer()
            cur.expect("]")
            return ("v", n) if kind == "v" else Basis(kind, n)
    cur.fail("L[", "I[", "CL", "CI", "CLI", "v[")


_TERM_START = ("digit", "(", "-", "L[", "I[", "CL", "CI", "CLI", "v[")


def _term(cur: _Cursor):
    c = cur.peek()
    if c.isdigit() or c in ("(", "-"):
        coef = _scalar(cur)
        cur.expect("*")
    elif c in ("L", "I", "C", "v"):
        coef = GaussianRational(1)
    else:
        cur.fail(*_TERM_START)
    return coef, _symbol(cur)


def parse_basis(text: str) -> Basis:
    cur = _Cursor(text)
    sym = _symbol(cur)
    if not cur.at_end():
        cur.fail("end of input")
    if not isinstance(sym, Basis):
        raise ParseError(text, 0, {"L[", "I[", "CL", "CI", "CLI"})
    return sym


def parse_element(text: str):
    """Parse a Lie element or (if every symbol is ``v[k]``) a module vector."""
    from .modules import ModuleVector

    cur = _Cursor(text)
    if cur.peek() == "0":
        save = cur.pos
        cur.pos += 1
        if cur.at_end():
            return LieElement.zero()
        cur.pos = save
    if cur.at_end():
        cur.fail("term")
    terms = []
    starts = []
    sign = -1 if cur.accept("-") else 1
    while True:
        cur.skip_ws()
        starts.append(cur.pos)
        coef, sym = _term(cur)
        terms.append((coef * sign, sym))
        if cur.at_end():
            break
        if cur.accept("+"):
            sign = 1
        elif cur.accept("-"):
            sign = -1
        else:
            cur.fail("+", "-", "end of input")
    first_kind = isinstance(terms[0][1], Basis)
    for (_, sym), pos in zip(terms, starts):
        if isinstance(sym, Basis) != first_kind:
            want = {"L[", "I[", "CL", "CI", "CLI"} if first_kind else {"v["}
            raise ParseError(text, len(text[:pos].encode()), want)
    if not first_kind:
        return ModuleVector(_merge_vec(terms))
    return LieElement([(s, c) for c, s in terms])


def _merge_vec(terms) -> dict:
    out: dict = {}
    for c, (_, k) in terms:
        out[k] = out[k] + c if k in out else c
    return out


def _coef_str(c: GaussianRational) -> str:
    s = format_scalar(c)
    return f"({s})" if c.im else s


def _format_terms(pairs) -> str:
    pieces = []
    for sym, c in pairs:
        if c.im:
            body = f"{_coef_str(c)}*{sym}"
            sign = "+"
        else:
            sign = "-" if c.re < 0 else "+"
            mag = abs(c.re)
            body = sym if mag == 1 else f"{format_scalar(GaussianRational(mag))}*{sym}"
        if not pieces:
            pieces.append(body if sign == "+" else f"-{body}")
        else:
            pieces.append(f" {sign} {body}")
    return "".join(pieces) if pieces else "0"


def format_element(x) -> str:
    """Canonical text: terms in basis order, e.g. ``-4*L[0] + 1/2*CL``."""
    from .modules import ModuleVector

    if isinstance(x, ModuleVector):
        return _format_terms((f"v[{k}]", c) for k, c in x.items())
    return _format_terms((str(b), c) for b, c in x.items())


# -- module and involution specs -------------------------------------------------

_MODULE_KEYS = {
    "A": ("a", "b", "c"),
    "VirA": ("a", "b"),
    "VirAalpha": ("a",),
    "VirB": ("a",),
}


def parse_module_spec(text: str):
    """``A[a=1/3,b=1/2,c=0]``, ``VirA[a=..,b=..]``, ``VirAalpha[a=..]``, ``VirB[a=..]``."""
    from .modules import HVSeries, VirAab, VirAalpha, VirBbeta

    cur = _Cursor(text)
    cur.skip_ws()
    start = cur.pos
    while cur.pos < len(text) and text[cur.pos].isalpha():
        cur.pos += 1
    name = text[start : cur.pos]
    if name not in _MODULE_KEYS:
        cur.pos = start
        cur.fail(*sorted(_MODULE_KEYS))
    cur.expect("[")
    vals = {}
    keys = _MODULE_KEYS[name]
    for j, key in enumerate(keys):
        if j:
            cur.expect(",")
        cur.expect(key)
        cur.expect("=")
        vals[key] = _scalar(cur)
    cur.expect("]")
    if not cur.at_end():
        cur.fail("end of input")
    cls = {"A": HVSeries, "VirA": VirAab, "VirAalpha": VirAalpha, "VirB": VirBbeta}[name]
    return cls(**vals)


def format_module_spec(spec) -> str:
    from .modules import HVSeries, VirAab, VirAalpha, VirBbeta

    if isinstance(spec, HVSeries):
        return f"A[a={spec.a},b={spec.b},c={spec.c}]"
    if isinstance(spec, VirAab):
        return f"VirA[a={spec.a},b={spec.b}]"
    if isinstance(spec, VirAalpha):
        return f"VirAalpha[a={spec.a}]"
    if isinstance(spec, VirBbeta):
        return f"VirB[a={spec.a}]"
    raise TypeError(spec)


def parse_involution(text: str | list[str]):
    """``type=plus alpha=2 phase=3/5+4/5i`` or ``type=minus alpha=.. alpha1=.. beta1=.. betam1=.. [complete_l0=1]``."""
    from .involutions import MinusType, PlusType

    tokens = text.split() if isinstance(text, str) else list(text)
    fields = {}
    for tok in tokens:
        if "=" not in tok:
            raise ParseError(" ".join(tokens), 0, {"key=value"})
        k, v = tok.split("=", 1)
        fields[k.strip()] = v.strip()
    kind = fields.pop("type", None)
    src = " ".join(tokens)
    if kind == "plus":
        extra = set(fields) - {"alpha", "phase"}
        if extra or "alpha" not in fields:
            raise ParseError(src, 0, {"alpha=", "phase="})
        alpha = parse_scalar(fields["alpha"])
        if alpha.im:
            raise ParseError(src, 0, {"real alpha"})
        return PlusType(alpha.re, UnitPhase(parse_scalar(fields.get("phase", "1"))))
    if kind == "minus":
        extra = set(fields) - {"alpha", "alpha1", "beta1", "betam1", "complete_l0"}
        if extra or "alpha" not in fields or "alpha1" not in fields:
            raise ParseError(src, 0, {"alpha=", "alpha1=", "beta1=", "betam1="})
        return MinusType(
            UnitPhase(parse_scalar(fields["alpha"])),
            UnitPhase(parse_scalar(fields["alpha1"])),
            parse_scalar(fields.get("beta1", "0")),
            parse_scalar(fields.get("betam1", "0")),
            complete_l0=fields.get("complete_l0", "0") not in ("0", "false"),
        )
    raise ParseError(src, 0, {"type=plus", "type=minus"})


def parse_window(text: str) -> tuple[int, int]:
    """``A..B`` with integers ``A <= B``."""
    cur = _Cursor(text)
    lo = cur.integer()
    cur.expect("..")
    hi = cur.integer()
    if not cur.at_end():
        cur.fail("end of input")
    if lo > hi:
        raise ParseError(text, 0, {"A..B with A <= B"})
    return lo, hi
