"""Command-line driver.

    wshuffle verify <suite> [--n ..] [--k ..] [--kprime ..] [--window S,B,cap]
                    [--series N] [--seed S] [--zeta FILE] [--json PATH]
                    [--probabilistic] [--workers W] [--config FILE]
    wshuffle pair <left> <right> [--n N]

Exit codes: 0 all pass, 1 some report failed, 2 configuration error.
Inconclusive reports do not change the exit code.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .suites import Config, ConfigError, run, suite_names

__all__ = ["main", "pair_adhoc", "SpecError", "parse_spec"]

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


# ---------------------------------------------------------------------------
# verify


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _window(text: str) -> tuple[int, int, int]:
    parts = _int_list(text)
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("window is S,B,cap")
    return parts  # type: ignore[return-value]


_CONFIG_KEYS = {"n", "k", "kprime", "window", "N", "seed", "zeta", "prime", "probabilistic", "workers", "r", "residues"}


def load_config(path: str | None) -> dict:
    if not path:
        return {}
    try:
        raw = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f"cannot read config {path}: {e}") from None
    unknown = set(raw) - _CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
    return raw


def build_config(args: argparse.Namespace) -> Config:
    """File values first, flags override."""
    raw = load_config(args.config)
    tup = lambda v: tuple(v) if isinstance(v, (list, tuple)) else (v,)  # noqa: E731
    vals = {
        "n": tup(raw["n"]) if "n" in raw else None,
        "k": tup(raw["k"]) if "k" in raw else None,
        "kprime": tup(raw["kprime"]) if "kprime" in raw else None,
        "window": tuple(raw["window"]) if "window" in raw else None,
        "N": raw.get("N", 3),
        "seed": raw.get("seed", 0),
        "zeta": raw.get("zeta"),
        "prime": raw.get("prime"),
        "probabilistic": bool(raw.get("probabilistic", False)),
        "workers": int(raw.get("workers", 1)),
    }
    for key, flag in (("n", args.n), ("k", args.k), ("kprime", args.kprime), ("window", args.window),
                      ("N", args.series), ("seed", args.seed), ("zeta", args.zeta),
                      ("workers", args.workers)):
        if flag is not None:
            vals[key] = flag
    if args.probabilistic:
        vals["probabilistic"] = True
    if vals["window"] is not None and len(vals["window"]) != 3:
        raise ConfigError("window is S,B,cap")
    if vals["zeta"] and not Path(vals["zeta"]).is_file():
        raise ConfigError(f"ζ table {vals['zeta']} not found")
    extras = {key: raw[key] for key in ("r", "residues") if key in raw}
    if args.r is not None:
        extras["r"] = args.r
    return Config(extras=extras, **vals)


def cmd_verify(args: argparse.Namespace) -> int:
    if args.suite not in suite_names():
        print(f"error: unknown suite {args.suite!r}; choose from {', '.join(suite_names())}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        cfg = build_config(args)
        sink = open(args.json, "w") if args.json and args.json != "-" else None
    except (ConfigError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    failed = False
    try:
        for rep in run(args.suite, cfg):
            failed |= rep.status == "fail"
            line = rep.to_json()
            if sink:
                sink.write(line + "\n")
                sink.flush()
            elif args.json == "-":
                print(line, flush=True)
            if args.json != "-":
                print(rep.summary(), flush=True)
                for w in rep.witnesses[:3]:
                    print(f"    at {w.location}: expected {w.expected}, got {w.actual}")
    except (ConfigError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    finally:
        if sink:
            sink.close()
    return EXIT_FAIL if failed else EXIT_OK


# ---------------------------------------------------------------------------
# ad hoc pairings


class SpecError(ValueError):
    def __init__(self, text: str, pos: int, msg: str):
        super().__init__(f"{msg} at position {pos} in {text!r}")
        self.position = pos


@dataclass(frozen=True)
class Letter:
    kind: str  # "F", "J" or "W"
    sign: int
    args: tuple[int, ...]


_INT = r"\s*(-?\d+)\s*"
_PATTERNS = {
    "F": re.compile(rf"F\({_INT};{_INT},{_INT}(?:,{_INT})?\)"),
    "J": re.compile(rf"J\({_INT},{_INT},{_INT}\)"),
    "W": re.compile(rf"W\({_INT};{_INT},{_INT}\)"),
}


def parse_spec(text: str) -> list[Letter]:
    """``F(s;i,j[,k])``, ``J(a,b,e)`` (an A- letter E_ab z^e) and ``W(k;i,j)``,
    joined by ``*``.  A minus letter ``F(-1;i,j)`` is the partner of
    ``F(1;i,j)``: its indices are stored transposed."""
    letters = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            raise SpecError(text, pos, "expected a letter")
        m = None
        for kind, pat in _PATTERNS.items():
            m = pat.match(text, pos)
            if m:
                break
        if not m:
            raise SpecError(text, pos, "expected F(s;i,j[,k]), J(a,b,e) or W(k;i,j)")
        vals = tuple(int(g) for g in m.groups() if g is not None)
        if kind == "F":
            if vals[0] not in (1, -1):
                raise SpecError(text, pos, "sign must be 1 or -1")
            k = vals[3] if len(vals) > 3 else 1
            if k < 1:
                raise SpecError(text, pos, "level must be positive")
            letters.append(Letter("F", vals[0], (vals[1], vals[2], k)))
        elif kind == "J":
            letters.append(Letter("J", -1, vals))
        else:
            letters.append(Letter("W", 1, vals))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            return letters
        if text[pos] != "*":
            raise SpecError(text, pos, "expected '*'")
        pos += 1


def _realize(n: int, letter: Letter, window):
    from .shuffle import make_F, make_F_minus
    from .wrels import w_truncate

    if letter.kind == "F":
        i, j, k = letter.args
        if letter.sign < 0:
            # F(-1;i,j) names the dual partner of F(1;i,j), i.e. F^{(-1)}_{ji}
            i, j = j, i
        return make_F(n, i, j, k, letter.sign)
    if letter.kind == "J":
        a, b, e = letter.args
        return make_F_minus(n, a, b - n * e, 1)
    k, i, j = letter.args
    trunc = w_truncate(n, i, j, k, window)
    if not trunc.terms or k == 0:
        raise ValueError("W-truncation must have k >= 1 and a nonempty window")
    out = None
    for t in trunc.terms:
        X = t.realize(n)
        out = X if out is None else out + X
    return out


def _pretty(v) -> str:
    """Pull out the largest power of (1 - q^-2) leaving a Laurent monomial factor."""
    from .ratfun import Field

    if v.is_zero():
        return "0"
    base = 1 - Field(v.n if getattr(v, "n", None) else 1).qpow(-2)
    t, rest = 0, v
    while t < 8:
        nxt = rest / base
        if len(nxt.den) > 1:
            break
        rest, t = nxt, t + 1
    if t == 0:
        return v.canonical_str()
    head = "(1 - q^-2)" + (f"^{t}" if t > 1 else "")
    if rest.is_one():
        return head
    return f"{rest.canonical_str()} * {head}" if len(rest.num) == 1 else f"({rest.canonical_str()}) * {head}"


def pair_adhoc(left: str, right: str, n: int = 2, window=None) -> str:
    """Exact <left, right> for a plus-side spec and a minus-side spec."""
    from .pairing import pair_P1, pair_P2
    from .shuffle import shuffle_word
    from .wrels import Window

    L, R = parse_spec(left), parse_spec(right)
    for lt in L:
        if lt.sign < 0:
            raise ValueError("left spec must lie in A+ (F(1;..) or W(..))")
    for rt in R:
        if rt.sign > 0:
            raise ValueError("right spec must lie in A- (F(-1;..) or J(..))")
    window = window or Window()
    Ls = [_realize(n, x, window) for x in L]
    Rs = [_realize(n, x, window) for x in R]
    if sum(x.k for x in Ls) != sum(x.k for x in Rs):
        return "0"
    if all(x.k == 1 and lt.kind == "F" for x, lt in zip(Ls, L)):
        val = pair_P1(Ls, shuffle_word(Rs))
    elif all(x.k == 1 for x in Rs):
        val = pair_P2(shuffle_word(Ls), Rs)
    else:
        raise ValueError("one side must be a word of degree-one letters")
    return _pretty(val)


def cmd_pair(args: argparse.Namespace) -> int:
    try:
        print(pair_adhoc(args.left, args.right, args.n))
    except SpecError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK


# ---------------------------------------------------------------------------


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="wshuffle", description="Exact verification of shuffle-algebra identities.")
    sub = ap.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", help=f"one of: {', '.join(suite_names())}")
    v.add_argument("--n", type=_int_list)
    v.add_argument("--k", type=_int_list)
    v.add_argument("--kprime", type=_int_list)
    v.add_argument("--r", type=int, help="quotient mode for the w-relations (r = 1, 2, ...)")
    v.add_argument("--window", type=_window, help="S,B,cap")
    v.add_argument("--series", type=int, help="series window N")
    v.add_argument("--seed", type=int)
    v.add_argument("--zeta", help="JSON ζ table")
    v.add_argument("--json", help="write one report per line here ('-' for stdout)")
    v.add_argument("--probabilistic", action="store_true", help="Schwartz-Zippel equality where supported")
    v.add_argument("--workers", type=int, help="worker processes for the w-relation instances")
    v.add_argument("--config", help="JSON config file; flags override it")
    v.set_defaults(func=cmd_verify)
    p = sub.add_parser("pair", help="exact pairing of two specs")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--n", type=int, default=2)
    p.set_defaults(func=cmd_pair)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = make_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_CONFIG if e.code else EXIT_OK
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
