"""The quantum Miura transformation in the free algebra on Λ^{(i)}(x p^{2m}) and D.

No relations among the Λ's are imposed; the only rewrite is the difference
operator rule ``D Λ^{(i)}(x p^{2m}) = Λ^{(i)}(x p^{2m+2}) D``, used to push
every D to the right.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .report import VerificationReport, timed

__all__ = [
    "D",
    "Lam",
    "FreeWord",
    "FreePoly",
    "normalize",
    "normalize_random",
    "miura_expand",
    "bar_w",
    "miura_check",
    "format_poly",
]


@dataclass(frozen=True, order=True)
class Lam:
    """Λ^{(i)}(x p^{2m})."""

    i: int
    m: int = 0

    def shifted(self, s: int) -> "Lam":
        return Lam(self.i, self.m + s)

    def __str__(self):
        arg = "x" if self.m == 0 else ("xp^2" if self.m == 1 else f"xp^{2 * self.m}")
        return f"Λ^({self.i})({arg})"


D = "D"

FreeWord = tuple  # of Lam and "D"
FreePoly = dict  # FreeWord -> Fraction


def _add(poly: dict, word, c) -> None:
    v = poly.get(word, 0) + c
    if v:
        poly[word] = v
    else:
        poly.pop(word, None)


def _rewrite_at(word: FreeWord, pos: int) -> FreeWord:
    """Apply D Λ -> Λ' D at positions (pos, pos + 1)."""
    return word[:pos] + (word[pos + 1].shifted(1), D) + word[pos + 2:]


def _redexes(word: FreeWord) -> list[int]:
    return [i for i in range(len(word) - 1) if word[i] == D and word[i + 1] != D]


def normalize(poly: Mapping[FreeWord, object]) -> FreePoly:
    """Normal form with all D's on the right (leftmost-redex strategy)."""
    out: dict = {}
    for word, c in poly.items():
        w = tuple(word)
        while True:
            red = _redexes(w)
            if not red:
                break
            w = _rewrite_at(w, red[0])
        _add(out, w, c)
    return out


def normalize_random(poly: Mapping[FreeWord, object], rng: random.Random) -> FreePoly:
    """Same rewrite system, redexes chosen at random; used to test confluence."""
    out: dict = {}
    for word, c in poly.items():
        w = tuple(word)
        while True:
            red = _redexes(w)
            if not red:
                break
            w = _rewrite_at(w, rng.choice(red))
        _add(out, w, c)
    return out


def _product(factors: Sequence[Mapping[FreeWord, object]]) -> FreePoly:
    out: dict = {(): 1}
    for fac in factors:
        nxt: dict = {}
        for (w1, c1), (w2, c2) in itertools.product(out.items(), fac.items()):
            _add(nxt, w1 + w2, c1 * c2)
        out = nxt
    return out


def _split(word: FreeWord) -> tuple[FreeWord, int]:
    d = 0
    while d < len(word) and word[len(word) - 1 - d] == D:
        d += 1
    return word[: len(word) - d], d


def miura_expand(r: int) -> dict[int, FreePoly]:
    """W̄^{(k)}(x) for k = 0..r, read off from Π_{i=1}^r (Λ^{(i)}(x p^{2(r-i)}) - D).

    After normalization a monomial is ``M D^d``.  Since
    ``(-D)^d W̄(x) = W̄(x p^{2d}) (-D)^d``, the coefficient of ``(-D)^{r-k}`` is
    W̄^{(k)} evaluated at ``x p^{2(r-k)}``; we shift it back to ``x``.
    """
    if r < 1:
        raise ValueError("r must be at least 1")
    factors = [{(Lam(i, r - i),): 1, (D,): -1} for i in range(1, r + 1)]
    normal = normalize(_product(factors))
    out: dict[int, dict] = {k: {} for k in range(r + 1)}
    for word, c in normal.items():
        body, d = _split(word)
        if D in body:
            raise AssertionError("normal form left a D inside a word")
        k = r - d
        shifted = tuple(l.shifted(-d) for l in body)
        _add(out[k], shifted, c * (-1) ** d)
    return out


def bar_w(r: int, k: int) -> FreePoly:
    """The closed form: sum over i_1 < ... < i_k of Λ^{(i_1)}(x p^{2(k-1)}) ... Λ^{(i_k)}(x)."""
    if k > r:
        return {}
    if k == 0:
        return {(): 1}
    out: dict = {}
    for idx in itertools.combinations(range(1, r + 1), k):
        _add(out, tuple(Lam(i, k - 1 - s) for s, i in enumerate(idx)), 1)
    return out


def format_word(word: FreeWord) -> str:
    return "".join(str(s) for s in word) if word else "1"


def format_poly(poly: Mapping[FreeWord, object]) -> str:
    if not poly:
        return "0"
    parts = []
    for word in sorted(poly, key=lambda w: [(s.i, -s.m) for s in w]):
        c = Fraction(poly[word])
        body = format_word(word)
        if c == 1:
            parts.append(body)
        elif c == -1:
            parts.append("-" + body)
        else:
            parts.append(f"{c}*{body}")
    return " + ".join(parts).replace("+ -", "- ")


def miura_check(r: int) -> VerificationReport:
    rep = VerificationReport("miura", "miura_vs_bar_w", {"r": r})
    with timed(rep):
        got = miura_expand(r)
        for k in range(r + 2):
            lhs = got.get(k, {})
            rhs = bar_w(r, k)
            for word in sorted(set(lhs) | set(rhs), key=format_word):
                a, b = lhs.get(word, 0), rhs.get(word, 0)
                if a != b:
                    rep.fail(f"k={k} monomial {format_word(word)}", b, a)
    return rep
