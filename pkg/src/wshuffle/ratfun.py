"""Exact rational functions over Z in a fixed registry of named variables.

Every coefficient the engine handles lives in Q(q, t) where ``t`` stands for
``qbar^(1/n)``; spectral variables (``z1``, ``x``, ``y``, ...) share the same
polynomial ring so that scalars and matrix entries combine freely.  The heavy
lifting (products, GCDs, substitution) is done by FLINT's ``fmpz_mpoly``.
"""
from __future__ import annotations

import ast
from fractions import Fraction
from functools import reduce
from typing import Iterable, Mapping

import flint

__all__ = [
    "VARS",
    "CTX",
    "RatFun",
    "FieldMismatchError",
    "ZeroDivision",
    "Field",
    "var",
    "const",
    "monomial",
    "zvar",
    "parse_ratfun",
    "RatFunParseError",
]

N_Z = 24
N_Y = 6

VARS: tuple[str, ...] = (
    ("q", "t", "x", "y", "u", "b", "h")
    + tuple(f"z{i}" for i in range(1, N_Z + 1))
    + tuple(f"y{i}" for i in range(1, N_Y + 1))
)
CTX = flint.fmpz_mpoly_ctx.get(VARS, "deglex")
INDEX: dict[str, int] = {name: i for i, name in enumerate(VARS)}
NV = len(VARS)
_GENS = CTX.gens()
_ONE = CTX.from_dict({(0,) * NV: 1})
_ZERO = CTX.from_dict({})
_H = INDEX["h"]


class FieldMismatchError(ValueError):
    """Raised when values built for different ``n`` are combined."""


class ZeroDivision(ZeroDivisionError):
    pass


def _merge_n(a, b):
    if a is None:
        return b
    if b is None or a == b:
        return a
    raise FieldMismatchError(f"cannot combine values of the n={a} and n={b} field towers")


def _poly(c) -> flint.fmpz_mpoly:
    if isinstance(c, flint.fmpz_mpoly):
        return c
    return CTX.from_dict({(0,) * NV: int(c)}) if c else _ZERO


class RatFun:
    """Reduced fraction ``num/den`` of integer polynomials.

    The denominator's leading term (deglex) has a positive coefficient and the
    fraction carries no common factor; zero is stored as ``0/1``.
    """

    __slots__ = ("num", "den", "n", "_hash")

    def __init__(self, num, den=None, n: int | None = None, reduced: bool = False):
        num = _poly(num)
        den = _ONE if den is None else _poly(den)
        if den.is_zero():
            raise ZeroDivision("zero denominator")
        if not reduced:
            if num.is_zero():
                den = _ONE
            elif not den.is_one():
                g = num.gcd(den)
                if not g.is_one():
                    num = num / g
                    den = den / g
                if den.leading_coefficient() < 0:
                    num, den = -num, -den
        self.num = num
        self.den = den
        self.n = n
        self._hash = None

    # construction helpers -------------------------------------------------
    @classmethod
    def from_fraction(cls, fr: Fraction | int, n=None) -> "RatFun":
        fr = Fraction(fr)
        return cls(_poly(fr.numerator), _poly(fr.denominator), n=n)

    @classmethod
    def coerce(cls, other, n=None) -> "RatFun":
        if isinstance(other, RatFun):
            return other
        if isinstance(other, (int, Fraction)):
            return cls.from_fraction(other, n)
        if isinstance(other, flint.fmpz_mpoly):
            return cls(other, n=n)
        raise TypeError(f"cannot coerce {type(other).__name__} to RatFun")

    # predicates -------------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def __bool__(self):
        return not self.num.is_zero()

    # arithmetic -------------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, RatFun):
            try:
                other = RatFun.coerce(other)
            except TypeError:
                return NotImplemented
        n = _merge_n(self.n, other.n)
        if self.num.is_zero():
            return other if other.n == n else RatFun(other.num, other.den, n, True)
        if other.num.is_zero():
            return self if self.n == n else RatFun(self.num, self.den, n, True)
        if self.den == other.den:
            return RatFun(self.num + other.num, self.den, n)
        return RatFun(self.num * other.den + other.num * self.den, self.den * other.den, n)

    __radd__ = __add__

    def __neg__(self):
        return RatFun(-self.num, self.den, self.n, True)

    def __sub__(self, other):
        if not isinstance(other, RatFun):
            try:
                other = RatFun.coerce(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return RatFun.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, RatFun):
            try:
                other = RatFun.coerce(other)
            except TypeError:
                return NotImplemented
        n = _merge_n(self.n, other.n)
        if self.num.is_zero() or other.num.is_zero():
            return RatFun(_ZERO, _ONE, n, True)
        if self.den.is_one() and other.den.is_one():
            return RatFun(self.num * other.num, _ONE, n, True)
        g1 = self.num.gcd(other.den)
        g2 = other.num.gcd(self.den)
        num = (self.num / g1) * (other.num / g2)
        den = (self.den / g2) * (other.den / g1)
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        return RatFun(num, den, n, True)

    __rmul__ = __mul__

    def inverse(self) -> "RatFun":
        if self.num.is_zero():
            raise ZeroDivision("division by zero rational function")
        num, den = self.den, self.num
        if den.leading_coefficient() < 0:
            num, den = -num, -den
        return RatFun(num, den, self.n, True)

    def __truediv__(self, other):
        if not isinstance(other, RatFun):
            try:
                other = RatFun.coerce(other)
            except TypeError:
                return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return RatFun.coerce(other) * self.inverse()

    def __pow__(self, e: int):
        if e == 0:
            return RatFun(_ONE, _ONE, self.n, True)
        if e < 0:
            return self.inverse() ** (-e)
        return RatFun(self.num**e, self.den**e, self.n, True)

    def __eq__(self, other):
        if not isinstance(other, RatFun):
            try:
                other = RatFun.coerce(other)
            except TypeError:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((str(self.num), str(self.den)))
        return self._hash

    def with_n(self, n):
        return RatFun(self.num, self.den, _merge_n(self.n, n), True)

    # structure --------------------------------------------------------------
    def variables(self) -> set[str]:
        dn = self.num.degrees()
        dd = self.den.degrees()
        return {VARS[i] for i in range(NV) if dn[i] or dd[i]}

    def subs(self, mapping: Mapping[str, "RatFun | int"]) -> "RatFun":
        """Substitute rational functions for variables (simultaneously)."""
        if not mapping:
            return self
        items = [(INDEX[k], RatFun.coerce(v)) for k, v in mapping.items()]
        n = self.n
        for _, v in items:
            n = _merge_n(n, v.n)
        # rename targets to fresh symbols is unnecessary: substitution is done
        # one variable at a time through the homogenising slot ``h``, and the
        # images never mention the variable being replaced unless asked to,
        # so simultaneous semantics are preserved by substituting via temps.
        if len(items) > 1:
            temps = _temp_slots(items)
            result = self
            for (idx, _), tmp in zip(items, temps):
                result = result._subs_one(idx, RatFun(_GENS[tmp]))
            for (_, val), tmp in zip(items, temps):
                result = result._subs_one(tmp, val)
            return result.with_n(n)
        idx, val = items[0]
        return self._subs_one(idx, val).with_n(n)

    def _subs_one(self, idx: int, val: "RatFun") -> "RatFun":
        dn = self.num.degrees()[idx]
        dd = self.den.degrees()[idx]
        if dn == 0 and dd == 0:
            return self
        num = _subs_poly(self.num, idx, val.num, val.den, dn)
        den = _subs_poly(self.den, idx, val.num, val.den, dd)
        # num(val) = num_h / vd^dn, den(val) = den_h / vd^dd
        if dd > dn:
            num = num * val.den ** (dd - dn)
        elif dn > dd:
            den = den * val.den ** (dn - dd)
        return RatFun(num, den, _merge_n(self.n, val.n))

    def rename(self, mapping: Mapping[str, str]) -> "RatFun":
        """Simultaneous renaming of variables, e.g. ``{'z1': 'z2', 'z2': 'z1'}``."""
        if not mapping:
            return self
        return RatFun(rename_poly(self.num, mapping), rename_poly(self.den, mapping), self.n)

    def degree_range(self, name: str) -> tuple[int, int, int, int]:
        idx = INDEX[name]
        return (_min_deg(self.num, idx), self.num.degrees()[idx], _min_deg(self.den, idx), self.den.degrees()[idx])

    # output -----------------------------------------------------------------
    def laurent_parts(self) -> tuple[dict, dict]:
        """Numerator/denominator as Laurent exponent dicts with the monomial
        content of the denominator moved into the numerator."""
        dd = self.den.to_dict()
        shift = [min(e[i] for e in dd) for i in range(NV)]
        num = {tuple(a - s for a, s in zip(e, shift)): int(c) for e, c in self.num.to_dict().items()}
        den = {tuple(a - s for a, s in zip(e, shift)): int(c) for e, c in dd.items()}
        return num, den

    def canonical_str(self) -> str:
        num, den = self.laurent_parts()
        ns = _laurent_str(num)
        if len(den) == 1 and next(iter(den.values())) == 1 and not any(next(iter(den))):
            return ns
        return f"({ns}) / ({_laurent_str(den)})"

    def __str__(self):
        return self.canonical_str()

    def __repr__(self):
        return f"RatFun({self.canonical_str()})"


def rename_poly(p, mapping: Mapping[str, str]):
    """Apply a variable renaming (a permutation of the touched names)."""
    gens = list(_GENS)
    for src, dst in mapping.items():
        gens[INDEX[src]] = _GENS[INDEX[dst]]
    return p.compose(*gens)


def _temp_slots(items) -> list[int]:
    used = set()
    for idx, v in items:
        used.add(idx)
        d1 = v.num.degrees()
        d2 = v.den.degrees()
        used.update(i for i in range(NV) if d1[i] or d2[i])
    free = [INDEX[f"z{i}"] for i in range(N_Z, 0, -1)] + [INDEX[f"y{i}"] for i in range(N_Y, 0, -1)]
    out = []
    for f in free:
        if f not in used:
            out.append(f)
            if len(out) == len(items):
                return out
    raise RuntimeError("no free variable slots for simultaneous substitution")


def _min_deg(p, idx) -> int:
    if p.is_zero():
        return 0
    return min(e[idx] for e in p.monoms())


def _subs_poly(p, idx, vn, vd, deg):
    """Return ``p(var_idx -> vn/vd) * vd**deg`` as a polynomial."""
    if deg == 0:
        return p
    gens = list(_GENS)
    if vd.is_one():
        gens[idx] = vn
        return p.compose(*gens)
    d = p.to_dict()
    hom = {}
    for e, c in d.items():
        e2 = list(e)
        e2[_H] = deg - e[idx]
        hom[tuple(e2)] = c
    ph = CTX.from_dict(hom)
    gens[idx] = vn
    gens[_H] = vd
    return ph.compose(*gens)


def _laurent_str(terms: dict) -> str:
    if not terms:
        return "0"
    qi, ti = INDEX["q"], INDEX["t"]

    def key(e):
        return (e[qi], e[ti], tuple(e[i] for i in range(NV) if i not in (qi, ti)))

    parts = []
    for e in sorted(terms, key=key):
        c = terms[e]
        mon = "*".join(
            VARS[i] if e[i] == 1 else f"{VARS[i]}^{e[i]}" for i in range(NV) if e[i]
        )
        if not mon:
            parts.append(str(c))
        elif c == 1:
            parts.append(mon)
        elif c == -1:
            parts.append("-" + mon)
        else:
            parts.append(f"{c}*{mon}")
    s = parts[0]
    for p in parts[1:]:
        s += " - " + p[1:] if p.startswith("-") else " + " + p
    return s


def monomial(exps: Mapping[str, int], coeff: int | Fraction = 1, n=None) -> RatFun:
    """Laurent monomial ``coeff * prod v**e``."""
    pos = [0] * NV
    neg = [0] * NV
    for name, e in exps.items():
        if e > 0:
            pos[INDEX[name]] += e
        elif e < 0:
            neg[INDEX[name]] -= e
    fr = Fraction(coeff)
    num = CTX.from_dict({tuple(pos): fr.numerator})
    den = CTX.from_dict({tuple(neg): fr.denominator})
    return RatFun(num, den, n=n, reduced=True) if fr else RatFun(_ZERO, n=n, reduced=True)


def var(name: str, n=None) -> RatFun:
    return RatFun(_GENS[INDEX[name]], n=n, reduced=True)


def zvar(i: int) -> RatFun:
    return var(f"z{i}")


def const(c, n=None) -> RatFun:
    return RatFun.from_fraction(c, n)


ONE = RatFun(_ONE, reduced=True)
ZERO = RatFun(_ZERO, reduced=True)


def rsum(items: Iterable[RatFun]) -> RatFun:
    """Sum with a single final reduction."""
    items = [r for r in items if not r.is_zero()]
    if not items:
        return ZERO
    n = reduce(_merge_n, (r.n for r in items), None)
    dens: dict = {}
    for r in items:
        key = str(r.den)
        if key in dens:
            dens[key][1].append(r.num)
        else:
            dens[key] = (r.den, [r.num])
    groups = [(d, reduce(lambda a, b: a + b, ns)) for d, ns in dens.values()]
    if len(groups) == 1:
        d, nm = groups[0]
        return RatFun(nm, d, n)
    den = _ONE
    for d, _ in groups:
        den = den * (d / den.gcd(d))
    num = _ZERO
    for d, nm in groups:
        num = num + nm * (den / d)
    return RatFun(num, den, n)


class Field:
    """The coefficient field Q(q, t), t = qbar^(1/n), for one value of ``n``.

    ``qbar = t**n`` and ``p = q**n * t**n``; fractional powers such as
    ``p**(a/n)`` become ``q**a * t**a``.
    """

    _cache: dict[int, "Field"] = {}

    def __new__(cls, n: int):
        if n < 1:
            raise ValueError("n must be a positive integer")
        if n not in cls._cache:
            obj = super().__new__(cls)
            obj.n = n
            obj.q = var("q", n)
            obj.t = var("t", n)
            obj.one = RatFun(_ONE, n=n, reduced=True)
            obj.zero = RatFun(_ZERO, n=n, reduced=True)
            cls._cache[n] = obj
        return cls._cache[n]

    def __reduce__(self):
        return (Field, (self.n,))

    @property
    def qbar(self) -> RatFun:
        return self.t**self.n

    @property
    def p(self) -> RatFun:
        return self.q**self.n * self.t**self.n

    def qpow(self, a: int) -> RatFun:
        return monomial({"q": a}, n=self.n)

    def qbar_frac(self, a: int) -> RatFun:
        """qbar**(a/n)."""
        return monomial({"t": a}, n=self.n)

    def p_frac(self, a: int) -> RatFun:
        """p**(a/n)."""
        return monomial({"q": a, "t": a}, n=self.n)

    def p_pow(self, a: int) -> RatFun:
        return self.p_frac(a * self.n)

    def __call__(self, c) -> RatFun:
        if isinstance(c, RatFun):
            return c.with_n(self.n)
        return RatFun.from_fraction(c, self.n)

    def __repr__(self):
        return f"Field(n={self.n})"


def scalar_arith(a: RatFun, b: RatFun, op: str) -> RatFun:
    """Field operation ``op`` in {'add', 'mul', 'div'} on canonical scalars."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "div":
        if b.is_zero():
            raise ZeroDivision("division by zero scalar")
        return a / b
    raise ValueError(f"unknown operation {op!r}")


class RatFunParseError(ValueError):
    def __init__(self, text: str, col: int, msg: str):
        super().__init__(f"{msg} at position {col} in {text!r}")
        self.position = col


_BINOPS = {
    ast.Add: lambda a, b: a + b,
    ast.Sub: lambda a, b: a - b,
    ast.Mult: lambda a, b: a * b,
    ast.Div: lambda a, b: a / b,
}


def parse_ratfun(text: str, n: int | None = None) -> RatFun:
    """Read the canonical text format back (``^`` or ``**`` for powers)."""
    src = text.replace("^", "**")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as e:
        raise RatFunParseError(text, (e.offset or 1) - 1, "syntax error") from None

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return RatFun.from_fraction(node.value, n)
        if isinstance(node, ast.Name):
            if node.id not in INDEX:
                raise RatFunParseError(text, node.col_offset, f"unknown variable {node.id!r}")
            return var(node.id, n)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                e = node.right
                sign = 1
                if isinstance(e, ast.UnaryOp) and isinstance(e.op, ast.USub):
                    sign, e = -1, e.operand
                if not (isinstance(e, ast.Constant) and isinstance(e.value, int)):
                    raise RatFunParseError(text, node.right.col_offset, "exponent must be an integer")
                return ev(node.left) ** (sign * e.value)
            op = _BINOPS.get(type(node.op))
            if op is not None:
                return op(ev(node.left), ev(node.right))
        raise RatFunParseError(text, getattr(node, "col_offset", 0), "unsupported expression")

    return ev(tree)
