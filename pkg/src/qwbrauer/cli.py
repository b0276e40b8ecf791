"""Command-line interface: ``qwb <verb> [flags]``.

Exit codes: 0 on success, 1 on invalid input or a domain error, 2 when an
internal consistency check fails. Output is deterministic.
"""

from __future__ import annotations

import argparse
import configparser
import json
import sys
from dataclasses import dataclass
from typing import Sequence

from .blocks import blocks, gram_nonzero
from .coefficients import e_diag, e_diag_via_residue, quantum_dim
from .errors import BoundExceeded, DomainError, InvalidShape, InvariantViolation, PreconditionViolated
from .gram import gamma, gram_det
from .partitions import Bipartition, LambdaPoint, Partition, enumerate_lambda, point, updown_count_formula
from .scalars import expand, format_factored, parse_params, specialize, substitute_rho_power
from .tableaux import enumerate_updown

VERBS = ("dims", "updown", "gamma", "gram-det", "gram-table", "blocks",
         "simple-head", "qdim", "residue-check", "selftest")


@dataclass
class CliConfig:
    """Defaults that a ``key=value`` config file may override."""

    bound: int = 7
    format: str = "text"

    @classmethod
    def load(cls, path: str | None) -> "CliConfig":
        cfg = cls()
        if path is None:
            return cfg
        parser = configparser.ConfigParser()
        try:
            with open(path, encoding="utf-8") as fh:
                parser.read_string("[qwb]\n" + fh.read())
        except (OSError, configparser.Error) as exc:
            raise DomainError(f"cannot read config {path}: {exc}") from exc
        sec = parser["qwb"]
        unknown = set(sec) - {"bound", "format"}
        if unknown:
            raise DomainError(f"unknown config keys: {', '.join(sorted(unknown))}")
        if "bound" in sec:
            try:
                cfg.bound = int(sec["bound"])
            except ValueError as exc:
                raise DomainError(f"bound must be an integer, got {sec['bound']!r}") from exc
        if "format" in sec:
            if sec["format"] not in ("text", "json"):
                raise DomainError(f"format must be text or json, got {sec['format']!r}")
            cfg.format = sec["format"]
        return cfg


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qwb", description="Gram determinants and blocks of quantized walled Brauer algebras.")
    p.add_argument("verb", choices=VERBS)
    p.add_argument("--r", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--f", type=int)
    p.add_argument("--shape", help='bipartition such as "2,1|1"; a partition for qdim')
    p.add_argument("--mu", help="lower shape for gamma")
    p.add_argument("--mu-f", type=int, help="f of the lower shape for gamma")
    p.add_argument("--params", help="e=<int|inf>,p=<prime|0>,n=<int|generic>")
    p.add_argument("--n", type=int, help="for qdim: also print the value at rho = q^n")
    p.add_argument("--norms", action="store_true", help="gram-det: list per-tableau norms")
    p.add_argument("--quick", action="store_true", help="selftest: smaller sweeps")
    p.add_argument("--format", choices=("text", "json"))
    p.add_argument("--output", help="write the report here instead of stdout")
    p.add_argument("--config", help="key=value file overriding bound and format")
    return p


def _need(args, *names):
    missing = [n for n in names if getattr(args, n.replace("-", "_")) is None]
    if missing:
        raise DomainError(f"{args.verb} needs " + ", ".join("--" + m for m in missing))


def _point(args) -> LambdaPoint:
    _need(args, "r", "t", "f", "shape")
    return point(args.f, Bipartition.parse(args.shape), args.r, args.t)


def _emit(data, text: str, fmt: str) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n" if fmt == "json" else text.rstrip("\n") + "\n"


# -- verbs ---------------------------------------------------------------------


def cmd_dims(args, cfg):
    p = _point(args)
    n = updown_count_formula(p.f, p.shape, p.r, p.t)
    return {"point": p.to_json(), "dimension": n}, str(n)


def cmd_updown(args, cfg):
    p = _point(args)
    tabs = enumerate_updown(p.r, p.t, p.shape, p.f)
    return {"point": p.to_json(), "tableaux": [t.to_json() for t in tabs]}, "\n".join(map(str, tabs))


def cmd_gamma(args, cfg):
    lam = _point(args)
    _need(args, "mu", "mu-f")
    pr, pt = (lam.r - 1, 0) if lam.t == 0 else (lam.r, lam.t - 1)
    mu = point(args.mu_f, Bipartition.parse(args.mu), pr, pt)
    g = gamma(lam, mu)
    return {"lambda": lam.to_json(), "mu": mu.to_json(), "gamma": format_factored(g)}, format_factored(g)


def cmd_gram_det(args, cfg):
    p = _point(args)
    rep = gram_det(p.f, p.shape, p.r, p.t)
    text = format_factored(rep.determinant)
    if args.norms:
        text += "\n" + "\n".join(f"{tab}  {format_factored(n)}" for tab, n in rep.norms)
    return rep.to_json(), text


def cmd_gram_table(args, cfg):
    _need(args, "r", "t")
    if args.r + args.t > cfg.bound:
        raise BoundExceeded(f"r+t = {args.r + args.t} exceeds the bound {cfg.bound}")
    reps = [gram_det(p.f, p.shape, p.r, p.t) for p in enumerate_lambda(args.r, args.t)]
    text = "\n".join(f"{r.shape.f}  {r.shape.shape}  {format_factored(r.determinant)}" for r in reps)
    return [r.to_json() for r in reps], text


def cmd_blocks(args, cfg):
    _need(args, "r", "t", "params")
    part = blocks(args.r, args.t, parse_params(args.params))
    text = "\n".join("{" + ", ".join(f"({p.f}, {p.shape})" for p in c) + "}" for c in part.classes)
    return part.to_json(), text


def cmd_simple_head(args, cfg):
    p = _point(args)
    _need(args, "params")
    params = parse_params(args.params)
    v = gram_nonzero(p.f, p.shape, p.r, p.t, params)
    text = "simple head" if v.nonzero else "not simple; failed " + ",".join(v.failed)
    if v.n_witness is not None:
        text += f" (n={v.n_witness[0]} via ({v.n_witness[1].f}, {v.n_witness[1].shape}))"
    return {"point": p.to_json(), "params": params.describe(), **v.to_json()}, text


def cmd_qdim(args, cfg):
    _need(args, "shape")
    alpha = Partition.parse(args.shape)
    if "|" in args.shape:
        raise InvalidShape("qdim takes a partition, not a bipartition")
    qd = quantum_dim(alpha)
    data = {"shape": str(alpha), "qdim": format_factored(qd)}
    text = format_factored(qd)
    if args.n is not None:
        val = str(expand(substitute_rho_power(qd, args.n)))
        data["at_rho_q^n"] = {"n": args.n, "value": val}
        text += f"\nrho = q^{args.n}: {val}"
    return data, text


def cmd_residue_check(args, cfg):
    _need(args, "r")
    if args.r < 1:
        raise DomainError("residue-check needs r >= 1")
    rows = []
    for p in enumerate_lambda(args.r, 1):
        for tab in enumerate_updown(args.r, 1, p.shape, p.f):
            if tab[args.r - 1] == tab[args.r + 1]:
                ok = e_diag_via_residue(tab) == expand(e_diag(tab))
                rows.append({"tableau": str(tab), "agree": ok})
    bad = [r for r in rows if not r["agree"]]
    if bad:
        raise InvariantViolation(f"residue identity fails for {bad[0]['tableau']}")
    return {"r": args.r, "checked": len(rows), "agree": True}, f"{len(rows)} tableaux, all agree"


def cmd_selftest(args, cfg):
    from .selftest import run_all

    rows, lines = [], []
    for key, title, res in run_all(args.quick):
        rows.append({"criterion": key, "title": title, "ok": res.ok, "detail": res.detail})
        lines.append(f"{'PASS' if res.ok else 'FAIL'} {key} {title}: {res.detail}")
    return rows, "\n".join(lines)


COMMANDS = {
    "dims": cmd_dims, "updown": cmd_updown, "gamma": cmd_gamma, "gram-det": cmd_gram_det,
    "gram-table": cmd_gram_table, "blocks": cmd_blocks, "simple-head": cmd_simple_head,
    "qdim": cmd_qdim, "residue-check": cmd_residue_check, "selftest": cmd_selftest,
}


def run(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = CliConfig.load(args.config)
        fmt = args.format or cfg.format
        data, text = COMMANDS[args.verb](args, cfg)
        out = _emit(data, text, fmt)
        if args.output:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(out)
        else:
            sys.stdout.write(out)
    except InvariantViolation as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 2
    except (DomainError, PreconditionViolated) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
