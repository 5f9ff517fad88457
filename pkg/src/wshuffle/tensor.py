"""Sparse End(V^{(x)k})-valued rational functions.

A :class:`TensorRat` stores polynomial entries over one common denominator,
keyed by ``(rows, cols)`` multi-indices with 0-based components.  Matrix
products never reduce entrywise; :meth:`TensorRat.reduced` strips the common
content when a caller wants a canonical form.
"""
from __future__ import annotations

import itertools
from collections import defaultdict
from typing import Iterable, Mapping, Sequence

from .ratfun import INDEX, RatFun, _merge_n, _ONE, _ZERO, _subs_poly, rename_poly

__all__ = ["TensorRat", "perm_compose", "perm_inverse"]


def perm_compose(s: Sequence[int], t: Sequence[int]) -> tuple[int, ...]:
    """(s o t)(i) = s[t[i]], 0-based one-line notation."""
    return tuple(s[t[i]] for i in range(len(t)))


def perm_inverse(s: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(s)
    for i, si in enumerate(s):
        out[si] = i
    return tuple(out)


class TensorRat:
    __slots__ = ("k", "n", "entries", "den", "nf")

    def __init__(self, k: int, n: int, entries: Mapping, den=None, nf: int | None = None):
        self.k = k
        self.n = n
        self.entries = {key: v for key, v in entries.items() if not v.is_zero()}
        self.den = _ONE if den is None else den
        self.nf = nf

    # constructors -----------------------------------------------------------
    @classmethod
    def from_ratfuns(cls, k: int, n: int, entries: Mapping[tuple, RatFun]) -> "TensorRat":
        items = [(key, v) for key, v in entries.items() if not v.is_zero()]
        nf = None
        den = _ONE
        for _, v in items:
            nf = _merge_n(nf, v.n)
            if not v.den.is_one():
                den = den * (v.den / den.gcd(v.den))
        out = {}
        for key, v in items:
            out[key] = v.num * (den / v.den) if not v.den == den else v.num
        return cls(k, n, out, den, nf)

    @classmethod
    def identity(cls, k: int, n: int, nf=None) -> "TensorRat":
        ents = {}
        for r in itertools.product(range(n), repeat=k):
            ents[(r, r)] = _ONE
        return cls(k, n, ents, _ONE, nf)

    @classmethod
    def zero(cls, k: int, n: int, nf=None) -> "TensorRat":
        return cls(k, n, {}, _ONE, nf)

    @classmethod
    def scalar(cls, c: RatFun, k: int, n: int) -> "TensorRat":
        return cls.identity(k, n).scale(c)

    @classmethod
    def elementary(cls, n: int, i: int, j: int, coeff: RatFun | None = None) -> "TensorRat":
        """E_ij on one factor (0-based indices), optionally times ``coeff``."""
        t = cls(1, n, {((i,), (j,)): _ONE})
        return t.scale(coeff) if coeff is not None else t

    @classmethod
    def permutation(cls, k: int, n: int, a: int, b: int) -> "TensorRat":
        """Transposition operator (ab) on V^{(x)k}, 0-based positions."""
        ents = {}
        for r in itertools.product(range(n), repeat=k):
            c = list(r)
            c[a], c[b] = r[b], r[a]
            ents[(r, tuple(c))] = _ONE
        return cls(k, n, ents)

    # basic algebra ----------------------------------------------------------
    def copy_with(self, entries, den, nf=None) -> "TensorRat":
        return TensorRat(self.k, self.n, entries, den, self.nf if nf is None else nf)

    def _check(self, other: "TensorRat"):
        if self.k != other.k or self.n != other.n:
            raise ValueError(f"shape mismatch: (k={self.k}, n={self.n}) vs (k={other.k}, n={other.n})")
        return _merge_n(self.nf, other.nf)

    def __matmul__(self, other: "TensorRat") -> "TensorRat":
        nf = self._check(other)
        byrow = defaultdict(list)
        for (r, c), v in other.entries.items():
            byrow[r].append((c, v))
        out: dict = {}
        for (r, m), v in self.entries.items():
            for c, w in byrow.get(m, ()):
                key = (r, c)
                prev = out.get(key)
                out[key] = v * w if prev is None else prev + v * w
        return TensorRat(self.k, self.n, out, self.den * other.den, nf).reduced()

    def __mul__(self, other):
        if isinstance(other, TensorRat):
            return self @ other
        return self.scale(RatFun.coerce(other))

    __rmul__ = __mul__

    def scale(self, c: RatFun) -> "TensorRat":
        c = RatFun.coerce(c)
        nf = _merge_n(self.nf, c.n)
        if c.is_zero():
            return TensorRat(self.k, self.n, {}, _ONE, nf)
        ents = {key: v * c.num for key, v in self.entries.items()}
        return TensorRat(self.k, self.n, ents, self.den * c.den, nf).reduced()

    def __add__(self, other: "TensorRat") -> "TensorRat":
        nf = self._check(other)
        if not other.entries:
            return self
        if not self.entries:
            return other
        if self.den == other.den:
            ents = dict(self.entries)
            for key, v in other.entries.items():
                ents[key] = ents[key] + v if key in ents else v
            return TensorRat(self.k, self.n, ents, self.den, nf).reduced()
        g = self.den.gcd(other.den)
        fa = other.den / g
        fb = self.den / g
        ents = {key: v * fa for key, v in self.entries.items()}
        for key, v in other.entries.items():
            ents[key] = ents[key] + v * fb if key in ents else v * fb
        return TensorRat(self.k, self.n, ents, self.den * fa, nf).reduced()

    def __neg__(self):
        return self.copy_with({key: -v for key, v in self.entries.items()}, self.den)

    def __sub__(self, other):
        return self + (-other)

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other):
        if not isinstance(other, TensorRat):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def reduced(self) -> "TensorRat":
        """Remove the content shared by the denominator and every entry."""
        ents = {key: v for key, v in self.entries.items() if not v.is_zero()}
        if not ents:
            return TensorRat(self.k, self.n, {}, _ONE, self.nf)
        g = self.den
        for v in ents.values():
            if g.is_one():
                break
            g = g.gcd(v)
        den = self.den
        if not g.is_one():
            den = den / g
            ents = {key: v / g for key, v in ents.items()}
        if den.leading_coefficient() < 0:
            den = -den
            ents = {key: -v for key, v in ents.items()}
        return TensorRat(self.k, self.n, ents, den, self.nf)

    # entries ----------------------------------------------------------------
    def entry(self, rows: Sequence[int], cols: Sequence[int]) -> RatFun:
        v = self.entries.get((tuple(rows), tuple(cols)))
        if v is None:
            return RatFun(_ZERO, n=self.nf)
        return RatFun(v, self.den, self.nf)

    def items(self) -> Iterable[tuple[tuple, RatFun]]:
        for key, v in sorted(self.entries.items()):
            yield key, RatFun(v, self.den, self.nf)

    def ratfun_entries(self) -> dict:
        return dict(self.items())

    # structural operations -------------------------------------------------
    def embed(self, positions: Sequence[int], N: int) -> "TensorRat":
        """Image in End(V^{(x)N}) sending factor i to ``positions[i]`` (0-based)."""
        if len(set(positions)) != len(positions):
            raise ValueError(f"repeated position in {list(positions)}")
        if len(positions) != self.k or any(p < 0 or p >= N for p in positions):
            raise ValueError("positions must be distinct slots in range")
        rest = [i for i in range(N) if i not in positions]
        ents = {}
        for (r, c), v in self.entries.items():
            for idle in itertools.product(range(self.n), repeat=len(rest)):
                rr = [0] * N
                cc = [0] * N
                for i, p in enumerate(positions):
                    rr[p] = r[i]
                    cc[p] = c[i]
                for i, p in enumerate(rest):
                    rr[p] = idle[i]
                    cc[p] = idle[i]
                ents[(tuple(rr), tuple(cc))] = v
        return TensorRat(N, self.n, ents, self.den, self.nf)

    def permute(self, sigma: Sequence[int]) -> "TensorRat":
        """``sigma X sigma^-1 = X_{sigma(1)...sigma(k)}``: factor i moves to slot sigma(i)."""
        k = self.k
        ents = {}
        for (r, c), v in self.entries.items():
            rr = [0] * k
            cc = [0] * k
            for i in range(k):
                rr[sigma[i]] = r[i]
                cc[sigma[i]] = c[i]
            ents[(tuple(rr), tuple(cc))] = v
        return TensorRat(k, self.n, ents, self.den, self.nf)

    def transpose(self, positions: Iterable[int]) -> "TensorRat":
        pos = set(positions)
        ents = {}
        for (r, c), v in self.entries.items():
            rr = tuple(c[i] if i in pos else r[i] for i in range(self.k))
            cc = tuple(r[i] if i in pos else c[i] for i in range(self.k))
            ents[(rr, cc)] = v
        return TensorRat(self.k, self.n, ents, self.den, self.nf)

    def trace(self, positions: Iterable[int] | None = None) -> "TensorRat":
        """Partial trace over ``positions`` (all factors by default)."""
        pos = sorted(set(range(self.k) if positions is None else positions))
        keep = [i for i in range(self.k) if i not in pos]
        ents: dict = {}
        for (r, c), v in self.entries.items():
            if all(r[i] == c[i] for i in pos):
                key = (tuple(r[i] for i in keep), tuple(c[i] for i in keep))
                ents[key] = ents[key] + v if key in ents else v
        return TensorRat(len(keep), self.n, ents, self.den, self.nf).reduced()

    def full_trace(self) -> RatFun:
        acc = _ZERO
        for (r, c), v in self.entries.items():
            if r == c:
                acc = acc + v
        return RatFun(acc, self.den, self.nf)

    def subs(self, mapping: Mapping[str, RatFun]) -> "TensorRat":
        """Substitute into every entry (simultaneous for several variables)."""
        if not mapping:
            return self
        if len(mapping) > 1:
            # route through RatFun's simultaneous substitution on a common basis
            ents = {key: r.subs(mapping) for key, r in self.items()}
            return TensorRat.from_ratfuns(self.k, self.n, ents).with_nf(self.nf)
        (name, val), = mapping.items()
        val = RatFun.coerce(val)
        idx = INDEX[name]
        deg = max([self.den.degrees()[idx]] + [v.degrees()[idx] for v in self.entries.values()])
        if deg == 0:
            return self
        ents = {key: _subs_poly(v, idx, val.num, val.den, deg) for key, v in self.entries.items()}
        den = _subs_poly(self.den, idx, val.num, val.den, deg)
        return TensorRat(self.k, self.n, ents, den, _merge_n(self.nf, val.n)).reduced()

    def rename(self, mapping) -> "TensorRat":
        """Rename variables in every entry (no reduction needed)."""
        if not mapping:
            return self
        ents = {key: rename_poly(v, mapping) for key, v in self.entries.items()}
        den = rename_poly(self.den, mapping)
        if den.leading_coefficient() < 0:
            den = -den
            ents = {key: -v for key, v in ents.items()}
        return TensorRat(self.k, self.n, ents, den, self.nf)

    def with_nf(self, nf):
        return TensorRat(self.k, self.n, self.entries, self.den, _merge_n(self.nf, nf))

    def map_entries(self, fn) -> "TensorRat":
        return TensorRat.from_ratfuns(self.k, self.n, {key: fn(r) for key, r in self.items()}).with_nf(self.nf)

    def conj_diag(self, diag: Sequence[RatFun], position: int) -> "TensorRat":
        """``D_pos X D_pos^-1`` for a diagonal matrix on one factor."""
        ents = {}
        for (r, c), v in self.entries.items():
            ents[(r, c)] = RatFun(v, self.den, self.nf) * diag[r[position]] / diag[c[position]]
        return TensorRat.from_ratfuns(self.k, self.n, ents).with_nf(self.nf)

    def __repr__(self):
        return f"TensorRat(k={self.k}, n={self.n}, nnz={len(self.entries)})"

    def canonical_str(self) -> str:
        parts = []
        for (r, c), v in self.items():
            idx = ",".join(f"{a + 1}{b + 1}" for a, b in zip(r, c))
            parts.append(f"[{idx}] {v}")
        return "; ".join(parts) if parts else "0"
