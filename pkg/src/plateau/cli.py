"""Command-line front end: ``plateau {analyze,enumerate,verify,export}``.

Exit codes: 0 ok, 2 bad input, 3 precondition violated (e.g. f(0) = 1),
4 certificate check failed, 5 I/O error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass

from . import analysis, cayley, transform
from .boolfun import (
    BooleanFunction,
    anf_to_function,
    from_hex,
    from_truth_table,
    parse_anf,
    read_tt_file,
)
from .errors import InputError, PlateauError

EXIT_IO = 5


@dataclass(frozen=True)
class RunConfig:
    command: str
    n: int | None
    functions: tuple[BooleanFunction, ...]
    sample_count: int
    seed: int
    dense_limit: int
    output_format: str
    ell_max: int
    out: str | None


def _dense_default() -> int:
    return cayley.dense_limit()


def _add_input_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, help="number of variables (required with --anf)")
    p.add_argument("--tt", help="truth table as a bit string, f(v_0) first")
    p.add_argument("--hex", help="truth table in hex, most significant nibble first")
    p.add_argument("--anf", help='ANF expression, e.g. "x1*x2 + x3"')
    p.add_argument("--input", help=".tt file (tt:/hex:/anf: records, # comments)")


def _add_common_flags(p: argparse.ArgumentParser, fmt_choices=("json", "text")) -> None:
    p.add_argument("--dense-limit", type=int, default=None,
                   help="largest n for dense matrices (default 8 or $PLATEAU_DENSE_LIMIT)")
    p.add_argument("--ell-max", type=int, default=7, help="largest odd walk length certified")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", dest="output_format", choices=fmt_choices, default=fmt_choices[0])
    p.add_argument("--out", help="write output here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="plateau", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full report for one function")
    _add_input_flags(p)
    _add_common_flags(p, ("json", "text", "csv"))

    p = sub.add_parser("enumerate", help="exhaustive or sampled certificate sweep")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--sample", type=int, default=0)
    p.add_argument("--generator", choices=analysis.GENERATORS, default="mixed")
    p.add_argument("--jobs", type=int, default=1)
    _add_common_flags(p)

    p = sub.add_parser("verify", help="certify every function in a .tt file")
    _add_input_flags(p)
    _add_common_flags(p)

    p = sub.add_parser("export", help="write DOT, adjacency CSV or spectrum files")
    p.add_argument("artifact", choices=("dot", "adjacency", "spectrum", "wht"))
    p.add_argument("--labels", choices=("binary", "integer"), default="binary")
    _add_input_flags(p)
    _add_common_flags(p, ("json", "csv", "text"))
    return parser


def _functions(args) -> tuple[BooleanFunction, ...]:
    given = [name for name in ("tt", "hex", "anf", "input") if getattr(args, name, None)]
    if len(given) != 1:
        raise InputError("give exactly one of --tt, --hex, --anf, --input")
    if args.tt:
        funcs = [from_truth_table(args.tt)]
    elif args.hex:
        funcs = [from_hex(args.hex)]
    elif args.anf:
        if args.n is None:
            raise InputError("--anf needs --n")
        funcs = [anf_to_function(parse_anf(args.anf, args.n))]
    else:
        funcs = read_tt_file(args.input)
    if args.n is not None and any(f.n != args.n for f in funcs):
        raise InputError("--n disagrees with the input's arity")
    return tuple(funcs)


def make_config(args) -> RunConfig:
    dense = _dense_default() if args.dense_limit is None else args.dense_limit
    if not 0 <= dense <= cayley.MAX_DENSE_LIMIT:
        raise InputError(f"--dense-limit must lie in 0..{cayley.MAX_DENSE_LIMIT}")
    if args.ell_max < 3 or args.ell_max % 2 == 0:
        raise InputError("--ell-max must be an odd integer >= 3")
    funcs = () if args.command == "enumerate" else _functions(args)
    return RunConfig(
        command=args.command,
        n=args.n,
        functions=funcs,
        sample_count=getattr(args, "sample", 0),
        seed=args.seed,
        dense_limit=dense,
        output_format=args.output_format,
        ell_max=args.ell_max,
        out=args.out,
    )


def _dump(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _analyze_text(doc: dict) -> str:
    p = doc["plateau"]
    c = doc["characterization"]
    lines = [
        f"n={doc['input']['n']} tt={doc['input']['truth_table']}",
        f"anf: {doc['input']['anf']}",
        f"WHT: {doc['transforms']['walsh_hadamard']}",
        f"Fourier: {doc['transforms']['fourier']}",
        f"plateaued={p['is_plateaued']} s={p['s']} k={p['k']} bent={p['bent']} "
        f"semibent={p['semibent']} balanced={p['balanced']} degenerate={p['degenerate']}",
        f"graph: degree={doc['graph']['degree']} components={doc['graph']['components']} "
        f"path={c['path']}",
    ]
    for cert in c["certificates"]:
        params = " ".join(f"{k}={v}" for k, v in cert["params"].items())
        lines.append(f"  {cert['type']}: {params} [{', '.join(cert['verified_by'])}]")
    return "\n".join(lines) + "\n"


def _analyze_csv(doc: dict) -> str:
    rows = ["w_index,walsh_hadamard,fourier"]
    for w, (a, b) in enumerate(zip(doc["transforms"]["walsh_hadamard"], doc["transforms"]["fourier"])):
        rows.append(f"{w},{a},{b}")
    return "\n".join(rows) + "\n"


def cmd_analyze(cfg: RunConfig) -> tuple[str, int]:
    if len(cfg.functions) != 1:
        raise InputError("analyze takes exactly one function")
    doc = analysis.analyze(cfg.functions[0], cfg.ell_max, cfg.dense_limit, cfg.seed)
    if cfg.output_format == "text":
        return _analyze_text(doc), 0
    if cfg.output_format == "csv":
        return _analyze_csv(doc), 0
    return _dump(doc), 0


def _failures_text(doc: dict) -> str:
    return "".join(f"FAILED {f['truth_table']}: {f['error']}: {f['message']}\n"
                   for f in doc["failures"])


def cmd_enumerate(cfg: RunConfig, args) -> tuple[str, int]:
    doc = analysis.enumerate_sweep(
        args.n, exhaustive=args.exhaustive, sample=args.sample, seed=cfg.seed,
        generator=args.generator, ell_max=cfg.ell_max, dense_limit=cfg.dense_limit, jobs=args.jobs,
    )
    code = 0 if doc["ok"] else 4
    if code:
        sys.stderr.write(_failures_text(doc))
    if cfg.output_format == "text":
        lines = [f"{doc['mode']} n={doc['n']}: {doc['scanned']} functions scanned"]
        lines += [f"  {k}: {v}" for k, v in doc["paths"].items()]
        lines += [f"  certified {k}: {v}" for k, v in doc["certified"].items()]
        return "\n".join(lines) + "\n", code
    return _dump(doc), code


def cmd_verify(cfg: RunConfig) -> tuple[str, int]:
    doc = analysis.verify_functions(cfg.functions, cfg.ell_max, cfg.dense_limit, cfg.seed)
    code = 0 if doc["ok"] else 4
    if code:
        sys.stderr.write(_failures_text(doc))
    if cfg.output_format == "text":
        return f"{doc['scanned']} functions, {len(doc['failures'])} failures\n", code
    return _dump(doc), code


def cmd_export(cfg: RunConfig, args) -> tuple[str, int]:
    if len(cfg.functions) != 1:
        raise InputError("export takes exactly one function")
    f = cfg.functions[0]
    if args.artifact in ("spectrum", "wht"):
        spec = transform.fourier(f) if args.artifact == "spectrum" else transform.walsh_hadamard(f)
        if cfg.output_format == "csv":
            return transform.to_csv(spec), 0
        return transform.to_json(spec) + "\n", 0
    g = cayley.build(f)
    if args.artifact == "dot":
        return cayley.export_dot(g, args.labels), 0
    return cayley.adjacency_csv(g, cfg.dense_limit), 0


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(text)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = make_config(args)
        if cfg.command == "analyze":
            text, code = cmd_analyze(cfg)
        elif cfg.command == "enumerate":
            text, code = cmd_enumerate(cfg, args)
        elif cfg.command == "verify":
            text, code = cmd_verify(cfg)
        else:
            text, code = cmd_export(cfg, args)
        _emit(text, cfg.out)
    except PlateauError as exc:
        sys.stderr.write(f"plateau: {type(exc).__name__}: {exc}\n")
        return exc.exit_code
    except OSError as exc:
        sys.stderr.write(f"plateau: I/O error: {exc}\n")
        return EXIT_IO
    return code


if __name__ == "__main__":
    sys.exit(main())
