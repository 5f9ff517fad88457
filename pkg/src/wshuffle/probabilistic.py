"""Schwartz-Zippel equality testing over a 62-bit prime field.

Exact normalization stays the default everywhere; this oracle is an
accelerator for exploration.  Each oracle draws its evaluation points from a
seeded ``random.Random`` so a run is reproducible from ``(prime, seed)``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .ratfun import VARS, RatFun
from .tensor import TensorRat

__all__ = ["PRIME_62", "SZOracle"]

PRIME_62 = 2**62 - 57


def _eval_poly(p, point: list[int], prime: int) -> int:
    total = 0
    for exps, c in p.to_dict().items():
        term = int(c) % prime
        for v, e in zip(point, exps):
            if e:
                term = term * pow(v, e, prime) % prime
        total = (total + term) % prime
    return total


@dataclass
class SZOracle:
    """Random-evaluation equality test.  ``trials`` independent points per query."""

    seed: int = 0
    prime: int = PRIME_62
    trials: int = 2
    _rng: random.Random = field(init=False, repr=False)
    _points: list[list[int]] = field(init=False, repr=False, default_factory=list)

    def __post_init__(self):
        self._rng = random.Random(self.seed)

    def fingerprint(self) -> dict:
        return {"prime": self.prime, "seed": self.seed, "trials": self.trials}

    def _point(self, idx: int) -> list[int]:
        while len(self._points) <= idx:
            self._points.append([self._rng.randrange(1, self.prime) for _ in VARS])
        return self._points[idx]

    def evaluate(self, F: RatFun, idx: int = 0) -> int | None:
        """Image of ``F`` at point ``idx``; None if the denominator vanishes there."""
        pt = self._point(idx)
        d = _eval_poly(F.den, pt, self.prime)
        if d == 0:
            return None
        return _eval_poly(F.num, pt, self.prime) * pow(d, -1, self.prime) % self.prime

    def is_zero(self, F: RatFun) -> bool:
        seen = 0
        idx = 0
        while seen < self.trials:
            v = self.evaluate(F, idx)
            idx += 1
            if v is None:
                continue
            if v:
                return False
            seen += 1
        return True

    def equal(self, a: RatFun, b: RatFun) -> bool:
        """Compares ``a`` and ``b`` through their values, never forming ``a - b``."""
        seen = 0
        idx = 0
        while seen < self.trials:
            va, vb = self.evaluate(a, idx), self.evaluate(b, idx)
            idx += 1
            if va is None or vb is None:
                continue
            if va != vb:
                return False
            seen += 1
        return True

    def equal_tensor(self, A: TensorRat, B: TensorRat) -> bool:
        ea, eb = A.ratfun_entries(), B.ratfun_entries()
        zero = RatFun(0)
        return all(self.equal(ea.get(key, zero), eb.get(key, zero)) for key in set(ea) | set(eb))
