"""Command line interface.

Exit codes: 0 ok, 2 usage, 3 failed precondition, 4 domain failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from dataclasses import dataclass

from qsi import conjectures, flags, lr, reps, semi_invariants
from qsi.errors import (
    CodimFailure,
    NonnegativityFailure,
    NotOrthogonal,
    PartitionError,
    QSIError,
    WeightNotOrthogonal,
)
from qsi.partitions import Partition
from qsi.quiver import Quiver, load_quiver, ringel_form, sigma_beta

log = logging.getLogger("qsi")

EXIT_USAGE = 2
EXIT_PRECONDITION = 3
EXIT_DOMAIN = 4


class CommandError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


@dataclass(frozen=True)
class RunConfig:
    seed: int
    fmt: str
    oracle: bool = False
    trials: int = reps.DEFAULT_TRIALS


def _partition(text: str) -> Partition:
    try:
        return Partition.parse(text)
    except PartitionError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",")] if text.strip() else []
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _default_seed() -> int:
    raw = os.environ.get("QSI_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise CommandError(EXIT_USAGE, f"QSI_SEED must be an integer, got {raw!r}") from None


# -- output ------------------------------------------------------------------------


def _emit(cfg: RunConfig, payload: dict, columns: list[str], rows: list[list]) -> str:
    if cfg.fmt == "json":
        return json.dumps(payload) + "\n"
    if cfg.fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        w.writerows(rows)
        return buf.getvalue()
    widths = [max(len(str(c)), *(len(str(r[i])) for r in rows)) if rows else len(str(c))
              for i, c in enumerate(columns)]
    lines = ["  ".join(str(c).rjust(w) for c, w in zip(columns, widths))]
    for r in rows:
        lines.append("  ".join(str(v).rjust(w) for v, w in zip(r, widths)))
    return "\n".join(lines) + "\n"


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, (list, tuple)):
        return ",".join(map(str, v))
    return str(v)


# -- shared input handling -----------------------------------------------------------


def _vector_arg(q: Quiver, doc: dict, key: str, flag_value, *, required: bool = True):
    """Vector from the quiver file or the flag; the file wins when both are given."""
    from_file = doc.get(key)
    if from_file is not None:
        vec = q.dimvec(from_file) if key != "sigma" else q.weight(from_file)
        if flag_value is not None:
            flagged = q.dimvec(flag_value) if key != "sigma" else q.weight(flag_value)
            if flagged != vec:
                log.warning("--%s differs from the quiver file; using the file", key)
        return vec
    if flag_value is None:
        if required:
            raise CommandError(EXIT_USAGE, f"--{key} is required (or give '{key}' in the quiver file)")
        return None
    return q.dimvec(flag_value) if key != "sigma" else q.weight(flag_value)


def _load_quiver(path) -> tuple[Quiver, dict]:
    try:
        return load_quiver(path)
    except OSError as exc:
        raise CommandError(EXIT_USAGE, f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise CommandError(EXIT_USAGE, f"{path} is not valid JSON: {exc}") from None


# -- commands ------------------------------------------------------------------------


def cmd_lr(args, cfg: RunConfig) -> str:
    value = lr.stretched_lr(args.lam, args.mu, args.nu, args.n)
    payload = {"command": "lr", "lam": list(args.lam), "mu": list(args.mu), "nu": list(args.nu),
               "n": args.n, "value": value}
    if cfg.fmt == "table":
        return f"{value}\n"
    return _emit(cfg, payload, ["lam", "mu", "nu", "n", "value"],
                 [[_fmt(args.lam), _fmt(args.mu), _fmt(args.nu), args.n, value]])


def cmd_si(args, cfg: RunConfig) -> str:
    q, doc = _load_quiver(args.quiver)
    alpha = _vector_arg(q, doc, "alpha", args.alpha)
    beta = _vector_arg(q, doc, "beta", args.beta)
    form = ringel_form(q, alpha, beta)
    if form != 0:
        raise CommandError(EXIT_PRECONDITION, f"<alpha,beta> = {form}; stretching needs <alpha,beta> = 0")
    table = semi_invariants.stretch_function(q, alpha, beta, args.stretch, oracle=cfg.oracle, seed=cfg.seed)
    payload = {"command": "si", "alpha": alpha.as_dict(), "sigma": sigma_beta(q, beta).as_dict(),
               "stretch": args.stretch, **table.to_json()}
    columns = ["n", "dim"]
    rows = [[n, v] for n, v in enumerate(table.values, 1)]
    if table.oracle is not None:
        columns += ["oracle", "agree"]
        for row, o, ok in zip(rows, table.oracle, table.agree):
            row += [o, _fmt(ok)]
    return _emit(cfg, payload, columns, rows)


def cmd_translate(args, cfg: RunConfig) -> str:
    try:
        fp = flags.load_flag_problem(args.problem)
    except OSError as exc:
        raise CommandError(EXIT_USAGE, f"cannot read {args.problem}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise CommandError(EXIT_USAGE, f"{args.problem} is not valid JSON: {exc}") from None
    except QSIError as exc:
        raise CommandError(EXIT_DOMAIN, str(exc)) from None
    try:
        res = flags.verify_translation(fp, args.n, oracle=cfg.oracle, seed=cfg.seed)
    except (CodimFailure, NonnegativityFailure) as exc:
        raise CommandError(EXIT_DOMAIN, str(exc)) from None
    payload = {"command": "translate", "problem": fp.to_json(), **res.to_json()}
    columns = ["n", "quiver_dim", "tensor_dim", "equal"]
    row = [res.n, res.quiver_dim, res.tensor_dim, _fmt(res.equal)]
    if res.oracle_dim is not None:
        columns.append("oracle_dim")
        row.append(res.oracle_dim)
    return _emit(cfg, payload, columns, [row])


def cmd_search(args, cfg: RunConfig) -> str:
    findings = conjectures.search_ktt_witnesses(args.vertex_bound, args.dim_bound, args.N,
                                                seed=cfg.seed, oracle=cfg.oracle)
    lines = [json.dumps(f.to_json()) for f in findings]
    bad = sum(1 for f in findings if not f.verdict.holds)
    log.info("%d witnesses, %d violations", len(findings), bad)
    out = "".join(line + "\n" for line in lines)
    if bad:
        sys.stdout.write(out)
        raise CommandError(EXIT_DOMAIN, f"{bad} instance(s) violate the n+1 stretching law")
    return out


def cmd_ext_descent(args, cfg: RunConfig) -> str:
    q, doc = _load_quiver(args.quiver)
    alpha = _vector_arg(q, doc, "alpha", args.alpha)
    beta = _vector_arg(q, doc, "beta", args.beta)
    rep = reps.check_ext_descent(q, alpha, beta, trials=cfg.trials, seed=cfg.seed)
    payload = {"command": "ext-descent", **rep.to_json()}
    return _emit(cfg, payload, ["hom_vw", "ext_vw", "ext_sw", "gamma", "generic", "equal"],
                 [[rep.hom_vw, rep.ext_vw, rep.ext_sw, _fmt(list(rep.gamma.values())),
                   _fmt(rep.generic), _fmt(rep.equal)]])


def cmd_semistable(args, cfg: RunConfig) -> str:
    q, doc = _load_quiver(args.quiver)
    alpha = _vector_arg(q, doc, "alpha", args.alpha)
    sigma = _vector_arg(q, doc, "sigma", args.sigma, required=False)
    if sigma is None:
        beta = _vector_arg(q, doc, "beta", args.beta, required=False)
        if beta is None:
            raise CommandError(EXIT_USAGE, "give --sigma or --beta")
        sigma = sigma_beta(q, beta)
    try:
        semi = reps.is_generically_semistable(q, alpha, sigma, cfg.trials, cfg.seed)
    except WeightNotOrthogonal as exc:
        raise CommandError(EXIT_PRECONDITION, str(exc)) from None
    stable = reps.is_generically_stable(q, alpha, sigma, cfg.trials, cfg.seed)
    subs = reps.generic_subdimensions(q, alpha, cfg.trials, cfg.seed)
    payload = {"command": "semistable", "alpha": alpha.as_dict(), "sigma": sigma.as_dict(),
               "semistable": semi, "stable": stable,
               "subdimensions": [s.as_dict() for s in subs]}
    return _emit(cfg, payload, ["semistable", "stable", "subdimensions"],
                 [[_fmt(semi), _fmt(stable), " ".join(_fmt(list(s.values())) for s in subs)]])


# -- parser --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None,
                        help="random seed (default: $QSI_SEED or 0)")
    common.add_argument("--format", dest="fmt", choices=["table", "json", "csv"], default="table")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="qsi", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("lr", parents=[common], help="stretched Littlewood-Richardson coefficient")
    s.add_argument("--lam", type=_partition, required=True)
    s.add_argument("--mu", type=_partition, required=True)
    s.add_argument("--nu", type=_partition, required=True)
    s.add_argument("--n", type=_positive, default=1)
    s.set_defaults(func=cmd_lr)

    s = sub.add_parser("si", parents=[common], help="stretch table of dim SI(Q,alpha)_{n sigma_beta}")
    s.add_argument("quiver")
    s.add_argument("--alpha", type=_int_list)
    s.add_argument("--beta", type=_int_list)
    s.add_argument("--stretch", type=_positive, default=1, metavar="N")
    s.add_argument("--oracle", action="store_true", help="cross-check with the evaluation oracle")
    s.set_defaults(func=cmd_si)

    s = sub.add_parser("translate", parents=[common], help="flag quiver vs tensor invariants")
    s.add_argument("problem")
    s.add_argument("--n", type=_positive, default=1)
    s.add_argument("--oracle", action="store_true")
    s.set_defaults(func=cmd_translate)

    s = sub.add_parser("search", parents=[common], help="search small KTT witnesses (JSON lines)")
    s.add_argument("--vertex-bound", type=_positive, default=3)
    s.add_argument("--dim-bound", type=_positive, default=2)
    s.add_argument("--N", type=_positive, default=conjectures.DEFAULT_N)
    s.add_argument("--oracle", action="store_true")
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("ext-descent", parents=[common], help="compare ext(V,W) with ext(ker phi,W)")
    s.add_argument("quiver")
    s.add_argument("--alpha", type=_int_list)
    s.add_argument("--beta", type=_int_list)
    s.add_argument("--trials", type=_positive, default=reps.DEFAULT_TRIALS)
    s.set_defaults(func=cmd_ext_descent)

    s = sub.add_parser("semistable", parents=[common], help="generic sigma-(semi)stability")
    s.add_argument("quiver")
    s.add_argument("--alpha", type=_int_list)
    s.add_argument("--sigma", type=_int_list)
    s.add_argument("--beta", type=_int_list)
    s.add_argument("--trials", type=_positive, default=reps.DEFAULT_TRIALS)
    s.set_defaults(func=cmd_semistable)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        seed = args.seed if args.seed is not None else _default_seed()
        cfg = RunConfig(seed=seed, fmt=args.fmt, oracle=getattr(args, "oracle", False),
                        trials=getattr(args, "trials", reps.DEFAULT_TRIALS))
        out = args.func(args, cfg)
    except CommandError as exc:
        print(f"qsi {args.command}: {exc}", file=sys.stderr)
        return exc.code
    except NotOrthogonal as exc:
        print(f"qsi {args.command}: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except QSIError as exc:
        print(f"qsi {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
