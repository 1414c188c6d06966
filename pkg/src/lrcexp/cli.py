"""Command-line front end: build, analyze, codewords, repair, bounds.

Exit codes: 0 success, 2 invalid config/input, 3 construction error,
4 verification failure, 5 budget exceeded.  Errors are reported on stderr
as one JSON object per line.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import asdict, dataclass, fields
from pathlib import Path

from . import bounds, codec
from .builder import LrcCode, build_code_prime_field, build_code_rational_places
from .curves import make_backend, parse_place
from .errors import (
    EXIT_BUDGET,
    EXIT_CONFIG,
    EXIT_VERIFICATION,
    BadParams,
    LrcError,
)
from .galois import field_of_order, prime_power


@dataclass
class BuildConfig:
    field: str = "5"
    modulus: str | None = None
    backend: str = "rational"
    q0: int | None = None
    construction: str = "sec3"
    r: int = 2
    m: int = 2
    t: int = 1
    e: int | None = None
    alphas: str | None = None
    places: str | None = None
    blocks: str | None = None
    block_mode: str = "single"
    seed: int = 0

    def to_text(self) -> str:
        return "".join(f"{f.name.replace('_', '-')}={getattr(self, f.name)}\n" for f in fields(self) if getattr(self, f.name) is not None)

    @classmethod
    def from_text(cls, text: str) -> "BuildConfig":
        return cls.from_mapping(parse_kv(text))

    @classmethod
    def from_mapping(cls, data: dict) -> "BuildConfig":
        kwargs = {}
        types = {f.name: f.type for f in fields(cls)}
        for key, value in data.items():
            key = key.replace("-", "_")
            if key not in types:
                raise BadParams(f"unknown config key {key!r}")
            if value is None:
                continue
            kwargs[key] = int(value) if "int" in str(types[key]) else str(value)
        return cls(**kwargs)


def parse_kv(text: str) -> dict[str, str]:
    out = {}
    for n, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise BadParams(f"config line {n}: expected key=value")
        k, v = line.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def _ints(text: str | None) -> list[int] | None:
    if text is None:
        return None
    return [int(x) for x in text.split(",") if x.strip()]


def parse_field(text: str, modulus: str | None = None):
    text = text.strip()
    if "^" in text:
        p, k = (int(x) for x in text.split("^"))
        q = p**k
    else:
        q = int(text)
    if prime_power(q) is None:
        raise BadParams(f"field order {q} is not a prime power")
    return field_of_order(q, _ints(modulus))


def build_from_config(cfg: BuildConfig) -> LrcCode:
    ctx = parse_field(cfg.field, cfg.modulus)
    backend = make_backend(ctx, cfg.backend, cfg.q0)
    alphas = _ints(cfg.alphas)
    if cfg.construction == "sec3":
        places = [parse_place(s) for s in cfg.places.split(";")] if cfg.places else None
        return build_code_rational_places(backend, cfg.r, cfg.m, cfg.t, alphas, places)
    if cfg.construction == "sec4":
        if cfg.e is None:
            raise BadParams("construction sec4 needs --e")
        blocks = None
        if cfg.blocks:
            blocks = [[parse_place(s) for s in blk.split(";")] for blk in cfg.blocks.split("|")]
        return build_code_prime_field(backend, cfg.r, cfg.m, cfg.t, cfg.e, alphas, cfg.block_mode, blocks)
    raise BadParams(f"unknown construction {cfg.construction!r}")


def summary(code: LrcCode) -> str:
    p = code.params
    lines = [
        f"construction: {p.get('construction')} on {p['backend']['kind']} backend, genus {p.get('genus')}",
        f"field: F_{code.ctx.q}",
        f"n = {code.n} (m={p['m']} groups of r+1={p['r'] + 1})",
        f"H: {len(code.H)} x {code.n}",
        f"k >= {code.k_lower_bound}",
        f"d >= {p['t'] + 1}",
        f"locality r = {p['r']}",
    ]
    return "\n".join(lines) + "\n"


# subcommands ---------------------------------------------------------------


def cmd_build(args) -> int:
    data = parse_kv(Path(args.config).read_text()) if args.config else {}
    for f in fields(BuildConfig):
        v = getattr(args, f.name, None)
        if v is not None:
            data[f.name] = v
    cfg = BuildConfig.from_mapping(data)
    code = build_from_config(cfg)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / f"{args.name}.json").write_text(code.to_json())
    (out / f"{args.name}_H.csv").write_text(code.h_csv())
    (out / f"{args.name}.cfg").write_text(cfg.to_text())
    text = summary(code)
    (out / f"{args.name}_summary.txt").write_text(text)
    sys.stdout.write(text)
    return 0


def _load_code(path: str) -> LrcCode:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise BadParams(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return LrcCode.from_json(text)
    except (ValueError, KeyError) as exc:
        raise BadParams(f"{path} is not a code artifact: {exc}") from exc


def cmd_analyze(args) -> int:
    code = _load_code(args.code)
    report = codec.analyze(
        code,
        exact_distance=args.exact_distance,
        verify_locality_flag=args.verify_locality,
        independence_t=args.verify_independence,
        budget=args.budget,
    )
    text = report.to_json()
    if args.out:
        Path(args.out).write_text(text)
    sys.stdout.write(text)
    failed = report.locality_certified is False or report.t_independence_certified is False
    if report.k_lower_bound is not None and report.k_exact < report.k_lower_bound:
        failed = True
    if report.d_exact is not None and report.d_lower is not None and report.d_exact < report.d_lower:
        failed = True
    if failed:
        return EXIT_VERIFICATION
    if report.unknown:
        return EXIT_BUDGET
    return 0


def parse_word(line: str, ctx) -> list[int | None]:
    out: list[int | None] = []
    for tok in line.strip().split(","):
        tok = tok.strip()
        if tok == "?":
            out.append(None)
        else:
            try:
                out.append(ctx.check(int(tok)))
            except ValueError as exc:
                raise BadParams(f"bad symbol {tok!r}") from exc
    return out


def format_word(word) -> str:
    return ",".join("?" if x is None else str(x) for x in word)


def cmd_codewords(args) -> int:
    code = _load_code(args.code)
    words = codec.random_codewords(code, args.count, args.seed)
    rng = random.Random(args.seed + 1)
    for w in words:
        if args.erase is not None:
            pos = rng.randrange(code.n) if args.erase < 0 else args.erase
            w = [None if i == pos else x for i, x in enumerate(w)]
        print(format_word(w))
    return 0


def cmd_repair(args) -> int:
    code = _load_code(args.code)
    text = sys.stdin.read() if args.word == "-" else Path(args.word).read_text()
    lines = [ln for ln in text.splitlines() if ln.strip()]
    for line in lines:
        word = parse_word(line, code.ctx)
        if len(word) != code.n:
            raise BadParams(f"word has length {len(word)}, code length is {code.n}")
        value = codec.repair_erasure(code, word)
        print(format_word([value if x is None else x for x in word]))
    return 0


def cmd_bounds(args) -> int:
    if args.figure is not None:
        curves, notes = bounds.figure_curves(args.figure)
    else:
        if args.bound is None or args.q is None or args.r is None:
            raise BadParams("give --figure, or --bound with --q and --r")
        grid = bounds.delta_grid(args.delta_grid)
        c = bounds.bound_curve(args.bound, args.q, args.r, grid)
        curves, notes = ([], [f"{args.bound}: {c.reason}"]) if isinstance(c, bounds.Inapplicable) else ([c], [])
    for note in notes:
        print(f"note: omitted {note}", file=sys.stderr)
    text = bounds.curves_to_csv(curves)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lrcexp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="construct a code and write its artifacts")
    b.add_argument("--config", help="key=value file; flags override it")
    b.add_argument("--field", help="field order q, e.g. 5, 4 or 3^2")
    b.add_argument("--modulus", help="comma-separated modulus coefficients, constant first")
    b.add_argument("--backend", choices=["rational", "hermitian"])
    b.add_argument("--q0", type=int)
    b.add_argument("--construction", choices=["sec3", "sec4"])
    b.add_argument("--r", type=int)
    b.add_argument("--m", type=int)
    b.add_argument("--t", type=int)
    b.add_argument("--e", type=int)
    b.add_argument("--alphas", help="comma-separated alpha encodings, one per group")
    b.add_argument("--places", help="';'-separated place literals")
    b.add_argument("--blocks", help="'|'-separated blocks of ';'-separated place literals")
    b.add_argument("--block-mode", dest="block_mode", choices=["single", "mixed"])
    b.add_argument("--seed", type=int)
    b.add_argument("--out", default=".")
    b.add_argument("--name", default="code")
    b.set_defaults(func=cmd_build)

    a = sub.add_parser("analyze", help="dimension, distance and certifications of a built code")
    a.add_argument("code")
    a.add_argument("--exact-distance", action="store_true")
    a.add_argument("--verify-locality", action="store_true")
    a.add_argument("--verify-independence", type=int, metavar="T")
    a.add_argument("--budget", type=int, default=codec.DEFAULT_BUDGET)
    a.add_argument("--out")
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("codewords", help="sample random codewords")
    c.add_argument("code")
    c.add_argument("--count", type=int, default=1)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--erase", type=int, help="erase this position (-1: random position)")
    c.set_defaults(func=cmd_codewords)

    rp = sub.add_parser("repair", help="restore one erased symbol per codeword line")
    rp.add_argument("code")
    rp.add_argument("word", help="CSV file with '?' marking the erasure ('-' for stdin)")
    rp.set_defaults(func=cmd_repair)

    bd = sub.add_parser("bounds", help="emit bound curves as CSV")
    bd.add_argument("--figure", type=int, choices=sorted(bounds.FIGURES))
    bd.add_argument("--bound", choices=bounds.BOUND_IDS)
    bd.add_argument("--q", type=int)
    bd.add_argument("--r", type=int)
    bd.add_argument("--delta-grid", default="0:0.5:0.01")
    bd.add_argument("--out")
    bd.set_defaults(func=cmd_bounds)
    return parser


def _error(code: str, exit_code: int, message: str) -> int:
    print(json.dumps({"error": code, "exit": exit_code, "message": message}), file=sys.stderr)
    return exit_code


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else 0
    try:
        return args.func(args)
    except LrcError as exc:
        return _error(exc.code, exc.exit_code, str(exc))
    except (OSError, ValueError) as exc:
        return _error(type(exc).__name__, EXIT_CONFIG, str(exc))


if __name__ == "__main__":
    sys.exit(main())
