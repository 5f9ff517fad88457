"""Named verification suites.

Every suite is a generator of :class:`VerificationReport` in a fixed order,
so output is reproducible given the configuration and seed.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Iterator, Sequence

from .ratfun import Field
from .report import VerificationReport, timed

__all__ = ["SUITES", "Config", "ConfigError", "run", "suite_names"]


class ConfigError(ValueError):
    """Bad suite name or configuration value (exit code 2)."""


@dataclass(frozen=True)
class Config:
    """Suite bounds.  ``None`` means the suite's own acceptance default."""

    n: tuple[int, ...] | None = None
    k: tuple[int, ...] | None = None
    kprime: tuple[int, ...] | None = None
    window: tuple[int, int, int] | None = None
    N: int = 3
    seed: int = 0
    zeta: str | None = None
    prime: int | None = None
    probabilistic: bool = False
    workers: int = 1
    extras: dict = field(default_factory=dict)

    def ns(self, default: Sequence[int]) -> tuple[int, ...]:
        return tuple(self.n) if self.n else tuple(default)

    def with_(self, **kw) -> "Config":
        return replace(self, **kw)


def _oracle(cfg: Config):
    from .probabilistic import PRIME_62, SZOracle

    return SZOracle(seed=cfg.seed, prime=cfg.prime or PRIME_62)


def _equal(cfg: Config, a, b) -> bool:
    if cfg.probabilistic:
        return _oracle(cfg).equal(a, b)
    return a == b


def _mode(cfg: Config, params: dict) -> dict:
    if cfg.probabilistic:
        params = dict(params, oracle=_oracle(cfg).fingerprint())
    return params


# ---------------------------------------------------------------------------
# rmatrix


def suite_rmatrix(cfg: Config) -> Iterator[VerificationReport]:
    from .rmatrix import ALL_CHECKS

    for n in cfg.ns((1, 2, 3)):
        for name, fn in ALL_CHECKS.items():
            rep = VerificationReport("rmatrix", name, {"n": n})
            with timed(rep):
                res = fn(n, seed=cfg.seed) if name == "elem1" else fn(n)
                for loc, exp, act in res.witnesses:
                    rep.fail(loc, exp, act)
            yield rep


# ---------------------------------------------------------------------------
# shuffle


def suite_shuffle(cfg: Config) -> Iterator[VerificationReport]:
    from .shuffle import all_reduced_words, braid_lift, is_symmetric, make_F

    for n in cfg.ns((2,)):
        for sigma in itertools.permutations(range(3)):
            words = all_reduced_words(sigma)
            rep = VerificationReport("shuffle", "braid_lift", {"n": n, "sigma": list(sigma),
                                                               "words": [list(w) for w in words]})
            with timed(rep):
                lifts = [braid_lift(n, 3, w) for w in words]
                for w, L in zip(words[1:], lifts[1:]):
                    if L != lifts[0]:
                        rep.fail(f"word {w} vs {words[0]}", lifts[0].canonical_str(), L.canonical_str())
            yield rep
        for k in (1, 2):
            for sign in (1, -1):
                rep = VerificationReport("shuffle", "F_symmetric", {"n": n, "k": k, "sign": sign})
                with timed(rep):
                    F = make_F(n, 1, 1 + k, k, sign)
                    ok, where = is_symmetric(F.value)
                    if not ok:
                        rep.fail(f"permutation {where}", "symmetric", "not symmetric")
                yield rep


# ---------------------------------------------------------------------------
# pairing


def _random_word_pair(n: int, L: int, rng: random.Random):
    """A plus word and a minus word of the same length; arcs matched often
    enough that most pairings are nonzero."""
    Ic = [(i, i + rng.randint(-2, 2)) for i in (rng.randint(1, n) for _ in range(L))]
    Jc = [(j, i) for i, j in Ic]
    rng.shuffle(Jc)
    if L > 1 and rng.random() < 0.7:
        a, b = rng.sample(range(L), 2)
        s = rng.choice([-1, 1])
        Jc[a] = (Jc[a][0], Jc[a][1] + n * s)
        Jc[b] = (Jc[b][0], Jc[b][1] - n * s)
    return Ic, Jc


def _pair_one(cfg: Config) -> Iterator[VerificationReport]:
    from .pairing import pair_P1, pair_P2
    from .shuffle import make_F_minus, make_F_plus

    n = 2
    F = Field(n)
    rep = VerificationReport("pairing", "degree_one", _mode(cfg, {"n": n, "j_range": [-1, 4]}))
    with timed(rep):
        for i, j, ip, jp in itertools.product(range(1, n + 1), range(-1, 5), range(1, n + 1), range(-1, 5)):
            exp = (1 - F.qpow(-2)) if (i, j) == (ip, jp) else F.zero
            v1 = pair_P1([make_F_plus(n, i, j, 1)], make_F_minus(n, jp, ip, 1))
            v2 = pair_P2(make_F_plus(n, i, j, 1), [make_F_minus(n, jp, ip, 1)])
            for route, v in (("P1", v1), ("P2", v2)):
                if not _equal(cfg, v, exp):
                    rep.fail(f"{route} <F({i},{j}), F({jp},{ip})>", exp, v)
    yield rep


def _pair_routes(cfg: Config, count: int = 50) -> Iterator[VerificationReport]:
    from .pairing import pair_P1, pair_P2
    from .shuffle import make_F, shuffle_word

    rng = random.Random(cfg.seed)
    for idx in range(count):
        n = rng.choice([1, 2])
        L = rng.choice([1, 2, 2, 3])
        Ic, Jc = _random_word_pair(n, L, rng)
        rep = VerificationReport("pairing", "P1_vs_P2", _mode(cfg, {"n": n, "index": idx, "seed": cfg.seed,
                                                                    "plus": Ic, "minus": Jc}))
        with timed(rep):
            I = [make_F(n, i, j, 1, 1) for i, j in Ic]
            J = [make_F(n, i, j, 1, -1) for i, j in Jc]
            a = pair_P1(I, shuffle_word(J))
            b = pair_P2(shuffle_word(I), J)
            if not _equal(cfg, a, b):
                rep.fail("<I, J>", a, b)
            rep.note = "zero" if a.is_zero() else "nonzero"
        yield rep


_PAIR_F_TARGETS = ((1, 3), (1, -1), (2, 0), (2, 4), (1, 5), (2, -2), (1, 2), (2, 1))


def _pair_f(cfg: Config) -> Iterator[VerificationReport]:
    """Value on stringing arcs, zero elsewhere; t = 1 on both routes, t = 2 via P2."""
    from .pairing import pair_combinatorial, pair_P1, pair_P2
    from .shuffle import make_F_minus, make_F_plus

    n = 2
    rep = VerificationReport("pairing", "pair_f_t1", {"n": n})
    with timed(rep):
        for i, j in itertools.product(range(1, n + 1), range(-2, 5)):
            Fp = make_F_plus(n, i, j, 1)
            for a in range(-2, 5):
                b = a + i - j
                Fm = make_F_minus(n, a, b, 1)
                exp = pair_combinatorial(n, (i, j, 1), [(a, b, 1)])
                for route, v in (("P1", pair_P1([Fp], Fm)), ("P2", pair_P2(Fp, [Fm]))):
                    if v != exp:
                        rep.fail(f"{route} <F({i},{j}), F({a},{b})>", exp, v)
    yield rep
    rep = VerificationReport("pairing", "pair_f_t2", {"n": n, "k": 2})
    with timed(rep):
        hits = total = 0
        for i, j in _PAIR_F_TARGETS:
            if (i - j) % 2:
                continue
            Fp = make_F_plus(n, i, j, 2)
            mu = Fraction(i - j, 2)
            for a1, a2 in itertools.product(range(-2, 5), repeat=2):
                b1, b2 = a1 + int(mu), a2 + int(mu)
                exp = pair_combinatorial(n, (i, j, 2), [(a1, b1, 1), (a2, b2, 1)])
                v = pair_P2(Fp, [make_F_minus(n, a1, b1, 1), make_F_minus(n, a2, b2, 1)])
                total += 1
                hits += not exp.is_zero()
                if v != exp:
                    rep.fail(f"P2 <F^(2)({i},{j}), F({a1},{b1}) F({a2},{b2})>", exp, v)
        rep.note = f"{hits} stringing of {total} configurations"
    yield rep


def _pair_w(cfg: Config) -> Iterator[VerificationReport]:
    from .wrels import all_jwords, pairw_check_jword, pairw_check_single

    for n in cfg.ns((1, 2)):
        for k in cfg.k or (1, 2):
            for i in range(1, n + 1):
                for j in range(i - n, i + n + 1):
                    yield pairw_check_single(n, i, j, k)
            for J in all_jwords(n, k):
                yield pairw_check_jword(J)


def suite_pairing(cfg: Config) -> Iterator[VerificationReport]:
    yield from _pair_one(cfg)
    yield from _pair_routes(cfg)
    yield from _pair_f(cfg)
    yield from _pair_w(cfg)


# ---------------------------------------------------------------------------
# w-relations


def _window(cfg: Config):
    from .wrels import Window

    if cfg.window is None:
        return None
    S, B, cap = cfg.window
    return Window(S, B, cap)


RELATION_CASES = ((1, 1, 1), (2, 1, 1), (1, 1, 2))
QUOTIENT_CASES = ((1, 1, 2, 1), (2, 1, 2, 1))  # (n, k, k', r)


def _wrels_instances(cfg: Config):
    """(n, k, k', r) in order.  Without bounds this is the acceptance set."""
    r = cfg.extras.get("r")
    if cfg.n or cfg.k or cfg.kprime or r is not None:
        for n in cfg.ns((1,)):
            for k in cfg.k or (1,):
                for kp in cfg.kprime or (1,):
                    if k > kp:
                        raise ConfigError(f"relation needs k <= k' (got k={k}, k'={kp})")
                    yield n, k, kp, r
        return
    for n, k, kp in RELATION_CASES:
        yield n, k, kp, None
    yield from QUOTIENT_CASES


def _ordered_map(fn, items, workers: int):
    """Like ``map`` but spread over processes; results still come back in input order."""
    if workers <= 1:
        yield from map(fn, items)
        return
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=workers) as pool:
        yield from pool.map(fn, items, chunksize=1)


def suite_wrels(cfg: Config) -> Iterator[VerificationReport]:
    from .wrels import WRelInstance, all_jwords, residues_crosscheck, wrels_check

    bounded = bool(cfg.n or cfg.k or cfg.kprime or "r" in cfg.extras)
    insts = [WRelInstance(n, k, kp, J, _window(cfg), cfg.N, r)
             for n, k, kp, r in _wrels_instances(cfg) for J in all_jwords(n, k + kp)]
    yield from _ordered_map(wrels_check, insts, cfg.workers)
    if cfg.extras.get("residues", not bounded):
        for J in all_jwords(1, 2):
            yield residues_crosscheck(1, 1, 1, J)


# ---------------------------------------------------------------------------
# miura / limit / toroidal


R2_DISPLAY = {1: "Λ^(1)(x) + Λ^(2)(x)", 2: "Λ^(1)(xp^2)Λ^(2)(x)"}


def suite_miura(cfg: Config) -> Iterator[VerificationReport]:
    from .miura import format_poly, miura_check, miura_expand

    for r in cfg.extras.get("r_list", (1, 2, 3, 4)):
        yield miura_check(r)
    rep = VerificationReport("miura", "r2_display", {"r": 2})
    with timed(rep):
        got = miura_expand(2)
        for k, text in R2_DISPLAY.items():
            if format_poly(got[k]) != text:
                rep.fail(f"k={k}", text, format_poly(got[k]))
    yield rep


def suite_limit(cfg: Config) -> Iterator[VerificationReport]:
    from .limit import check_limit_identities

    for n in cfg.ns((1, 2, 3)):
        yield from check_limit_identities(n)


WHEEL_CASES = ((1, 3, 1), (1, 4, 1), (1, 4, 3), (1, 5, 1), (2, 5, 1))


def _zeta(cfg: Config, n: int):
    from .toroidal import ZetaConfig, default_zeta

    return ZetaConfig.from_json(cfg.zeta, n) if cfg.zeta else default_zeta(n)


def suite_toroidal(cfg: Config) -> Iterator[VerificationReport]:
    from .toroidal import (arc_identity_check, floor_identity_check, make_Abar, make_Anew, make_Bbar,
                           of_check, wheel_check)

    for n in cfg.ns((1, 2, 3)):
        for L in range(1, 5):
            for k in range(1, 5):
                for side in (1, -1):
                    yield of_check(n, 1, 1 + L, k, side)
    yield floor_identity_check()
    for n in cfg.ns((1, 2, 3)):
        yield arc_identity_check(n, total_k=6, total_len=6)
    for n in cfg.ns((2,)):
        zeta = _zeta(cfg, n)
        for (i, j, k), (label, make) in itertools.product(
                WHEEL_CASES, (("Abar", make_Abar), ("Bbar", make_Bbar), ("A", make_Anew))):
            rep = wheel_check(make(n, i, j, k, 1, zeta))
            rep.name = f"wheel_{label}"
            rep.params.update({"n": n, "i": i, "j": j, "k": k, "zeta": zeta.fingerprint()})
            yield rep


SUITES: dict[str, Callable[[Config], Iterator[VerificationReport]]] = {
    "rmatrix": suite_rmatrix,
    "shuffle": suite_shuffle,
    "pairing": suite_pairing,
    "wrels": suite_wrels,
    "miura": suite_miura,
    "limit": suite_limit,
    "toroidal": suite_toroidal,
}


def suite_names() -> list[str]:
    return list(SUITES) + ["all"]


def run(suite: str, cfg: Config | None = None) -> Iterator[VerificationReport]:
    """Reports of ``suite`` in a fixed order; ``all`` chains every module suite."""
    cfg = cfg or Config()
    if suite == "all":
        names = list(SUITES)
    elif suite in SUITES:
        names = [suite]
    else:
        raise ConfigError(f"unknown suite {suite!r}; choose from {', '.join(suite_names())}")
    for name in names:
        yield from SUITES[name](cfg)
