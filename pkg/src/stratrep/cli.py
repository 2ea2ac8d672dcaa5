"""Command-line front end.

Every subcommand prints machine-readable ``key=value`` lines; curve
subcommands additionally write ``k,value`` CSV with ``--out``.  Exit
codes: 0 success, 2 usage, 3 not realizable, 4 enumeration guard or
divisibility violation, 5 file parse error.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import analysis, examples, learner, response, users
from .choice import format_choice, parse_choice
from .core import (
    parse_dataset,
    parse_distribution,
    parse_value_table,
    sample_dataset,
)
from .errors import (
    DivisibilityViolated,
    NotRealizable,
    ParseError,
    SearchSpaceTooLarge,
    StratRepError,
    UniverseTooLarge,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NOT_REALIZABLE = 3
EXIT_GUARD = 4
EXIT_PARSE = 5


def fmt(x) -> str:
    """Rationals as num/den; floats with 9 significant digits."""
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, float):
        return f"{x:.9g}"
    return str(x)


def _emit(lines: list[str]) -> None:
    for ln in lines:
        print(ln)


def _write_csv(path: str, points) -> None:
    rows = ["k,value"] + [f"{k},{fmt(v)}" for k, v in points]
    Path(path).write_text("\n".join(rows) + "\n")


def _frac(text: str) -> Fraction:
    return Fraction(text)


# ---------------------------------------------------------------------------
# scenario configs: flat "key = value" lines with section prefixes


def parse_config(text: str) -> dict[str, str]:
    cfg = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ParseError(f"config line {lineno}: expected 'key = value'")
        key, _, val = line.partition("=")
        cfg[key.strip()] = val.strip()
    return cfg


def _scenario_from_config(cfg: dict[str, str]) -> examples.Scenario:
    builtin = cfg.get("scenario.builtin")
    if builtin in ("example1", "example2"):
        eps = _frac(cfg.get("scenario.eps", "1/5"))
        return getattr(examples, builtin)(eps)
    if builtin == "dr":
        return examples.dr_scenario(int(cfg["instance.q"]), int(cfg["instance.n"]),
                                    int(cfg["instance.k2"]))
    if builtin is not None:
        raise ParseError(f"scenario.builtin: unknown builtin {builtin!r}")
    dist_path = cfg.get("scenario.distribution")
    val_path = cfg.get("scenario.value_table")
    if not dist_path or not val_path:
        raise ParseError(
            "scenario.distribution and scenario.value_table are required "
            "when scenario.builtin is absent")
    D = parse_distribution(Path(dist_path).read_text())
    v = parse_value_table(Path(val_path).read_text())
    return examples.Scenario(D.instance, v, D)


def _choice_from_config(cfg: dict[str, str], sc: examples.Scenario, lines: list[str]):
    utype = cfg.get("user.type", "naive")
    if utype == "naive":
        return users.naive_choice(sc.v)
    seed = int(cfg.get("user.seed", "0"))
    m = int(cfg.get("user.m", "1000"))
    sample = sample_dataset(sc.D, sc.v, m, seed)
    if utype == "agnostic":
        delta = float(cfg.get("user.delta", "0.05"))
        dec = users.agnostic_decide(sample, delta, seed)
        lines.append(f"mode={dec.mode}")
        lines.append(f"mu_hat={fmt(dec.mu_hat)}")
        lines.append(f"tau={fmt(dec.tau)}")
        lines.append(f"window_ok={dec.window_ok}")
        return dec.choice(sc.instance)
    if utype == "strategic":
        k = int(cfg.get("user.k", str(sc.instance.k2)))
        h = learner.alg_learn(sample, k, sc.instance)
        lines.append(f"k={k}")
        lines.append(f"empirical_error={fmt(learner.empirical_error(h, sample, sc.instance))}")
        return h
    raise ParseError(f"user.type: unknown user type {utype!r}")


def cmd_run(args) -> int:
    cfg = parse_config(Path(args.config).read_text())
    sc = _scenario_from_config(cfg)
    lines: list[str] = []
    h = _choice_from_config(cfg, sc, lines)
    responder = cfg.get("responder.type", "strategic")
    if responder not in ("strategic", "benevolent"):
        raise ParseError(f"responder.type: unknown responder {responder!r}")
    up = response.user_payoff(h, sc.v, sc.D, responder)
    sp = response.system_payoff(h, sc.D)
    lines.append(f"user_payoff={fmt(up)}")
    lines.append(f"system_payoff={fmt(sp)}")
    _emit(lines)
    report = cfg.get("output.report")
    if report:
        Path(report).write_text("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_learn(args) -> int:
    inst, sample = parse_dataset(Path(args.data).read_text())
    h = learner.alg_learn(sample, args.k, inst)
    err = learner.empirical_error(h, sample, inst)
    _emit([f"k={h.k}",
           f"positive_family_size={len(h.positive_family)}",
           f"empirical_error={fmt(err)}"])
    if args.out:
        Path(args.out).write_text(format_choice(h))
    return EXIT_OK


def cmd_payoff(args) -> int:
    D = parse_distribution(Path(args.dist).read_text())
    v = parse_value_table(Path(args.value).read_text())
    h = parse_choice(Path(args.choice).read_text(), D.instance)
    up = response.user_payoff(h, v, D, args.responder)
    sp = response.system_payoff(h, D)
    _emit([f"user_payoff={fmt(up)}", f"system_payoff={fmt(sp)}"])
    return EXIT_OK


def cmd_complexity(args) -> int:
    v = parse_value_table(Path(args.value_table).read_text())
    rep = analysis.induced_complexity(v, v.instance)
    _emit([f"ell_star={rep.ell_star}",
           f"witness_size={len(rep.witness_g.positive_family)}"])
    return EXIT_OK


def cmd_dr_curve(args) -> int:
    curve = analysis.dr_bound_curve(args.q, args.n, args.k2)
    _emit([f"k={k} bound={fmt(v)}" for k, v in curve.points])
    if args.out:
        _write_csv(args.out, curve.points)
    return EXIT_OK


def cmd_gen_bound(args) -> int:
    b = analysis.generalization_bound(args.q, args.k, args.m, args.delta,
                                      args.epsilon, args.C)
    _emit([f"bound={fmt(b)}"])
    return EXIT_OK


def cmd_sys_curve(args) -> int:
    curve = analysis.system_payoff_curve(args.q, args.n, args.k2)
    _emit([f"k={k} payoff={fmt(v)}" for k, v in curve.points])
    if args.out:
        _write_csv(args.out, curve.points)
    return EXIT_OK


def cmd_agnostic(args) -> int:
    _, sample = parse_dataset(Path(args.data).read_text())
    dec = users.agnostic_decide(sample, args.delta, args.seed)
    _emit([f"mode={dec.mode}",
           f"accept={'+' if dec.accept else '-'}",
           f"mu_hat={fmt(dec.mu_hat)}",
           f"tau={fmt(dec.tau)}",
           f"window_ok={dec.window_ok}"])
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="stratrep",
                                description="strategic subset-representation games")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("run", help="run a scenario config")
    s.add_argument("config")
    s.set_defaults(fn=cmd_run)

    s = sub.add_parser("learn", help="exact ERM on a labeled dataset")
    s.add_argument("--data", required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--out")
    s.set_defaults(fn=cmd_learn)

    s = sub.add_parser("payoff", help="payoffs of a stored choice function")
    s.add_argument("--choice", required=True)
    s.add_argument("--dist", required=True)
    s.add_argument("--value", required=True)
    s.add_argument("--responder", choices=["strategic", "benevolent"],
                   default="strategic")
    s.set_defaults(fn=cmd_payoff)

    s = sub.add_parser("complexity", help="induced complexity of a value table")
    s.add_argument("--value-table", required=True)
    s.set_defaults(fn=cmd_complexity)

    s = sub.add_parser("dr-curve", help="diminishing-returns error bound curve")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k2", type=int, required=True)
    s.add_argument("--out")
    s.set_defaults(fn=cmd_dr_curve)

    s = sub.add_parser("gen-bound", help="generalization bound")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--delta", type=float, required=True)
    s.add_argument("--epsilon", type=float, required=True)
    s.add_argument("--C", type=float, default=1.0)
    s.set_defaults(fn=cmd_gen_bound)

    s = sub.add_parser("sys-curve", help="system payoff curve")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k2", type=int, required=True)
    s.add_argument("--out")
    s.set_defaults(fn=cmd_sys_curve)

    s = sub.add_parser("agnostic", help="agnostic commitment from a dataset")
    s.add_argument("--data", required=True)
    s.add_argument("--delta", type=float, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(fn=cmd_agnostic)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else 0
    try:
        return args.fn(args)
    except NotRealizable as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NOT_REALIZABLE
    except (UniverseTooLarge, SearchSpaceTooLarge, DivisibilityViolated) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_GUARD
    except (ParseError, FileNotFoundError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except StratRepError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
