"""Command line interface.

Subcommands: ``entanglement``, ``teleport``, ``compare-distinguishable``,
``oracle-check``.  Exit codes: 0 success, 1 usage or config error,
2 numerical-consistency failure.
"""
from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import sys
from typing import Iterable, Optional

from . import checks
from .algebra import product_state
from .baseline import LabeledPairState, concurrence_spread, decompose_outcomes
from .config import ConfigError, RunConfig
from .entanglement import (concurrence_pure, condition_on_region, entanglement_of_formation,
                           localized_partial_trace, operational_entanglement, project_lr, von_neumann_entropy)
from .errors import DomainError, ZeroProbabilityError
from .teleport import InputSpinor, analytic_report, run_protocol

EXIT_OK, EXIT_USAGE, EXIT_NUMERICAL = 0, 1, 2
CONSISTENCY_TOL = 1e-10

ENTANGLEMENT_COLUMNS = ["sweep_param", "P_L", "P'_L", "P_R", "P'_R", "P_LR", "E_LR", "C", "E_f", "flag"]
DISTINGUISHABLE_COLUMNS = ["sweep_param", "branch", "probability", "concurrence", "spread", "identical_C", "identical_P_LR"]


class NumericalInconsistency(RuntimeError):
    pass


def _num(x) -> str:
    if x is None or x == "":
        return ""
    if isinstance(x, int) and not isinstance(x, bool):
        return str(x)
    return repr(float(x) + 0.0)


def _points(cfg: RunConfig):
    if cfg.sweep is None:
        yield None, cfg.psi, cfg.psi_prime
        return
    for x in cfg.sweep.values:
        psi, psi_p = cfg.sweep.modes(x, cfg.psi, cfg.psi_prime, cfg.regions)
        yield x, psi, psi_p


def entanglement_row(x, psi, psi_prime, cfg: RunConfig) -> dict:
    left, right = cfg.regions
    probs = (psi.probability(left), psi_prime.probability(left), psi.probability(right), psi_prime.probability(right))
    row = dict(zip(ENTANGLEMENT_COLUMNS, [x, *probs]))
    state = product_state(psi, psi_prime, cfg.statistics, cfg.regions)
    try:
        cond = condition_on_region(localized_partial_trace(state, left), right)
    except ZeroProbabilityError:
        row.update(P_LR=0.0, E_LR=None, C=None, E_f=None, flag="undefined")
        return row
    e_lr = von_neumann_entropy(cond)
    proj = project_lr(state, left, right)
    c = concurrence_pure(proj)
    e_f = entanglement_of_formation(c)
    e_closed = operational_entanglement(*probs)
    worst = max(abs(e_lr - e_f), abs(e_lr - e_closed), abs(cond.weight - proj.probability))
    if worst > CONSISTENCY_TOL:
        raise NumericalInconsistency(f"sweep point {x!r}: entanglement routes disagree by {worst:.3g}")
    row.update(P_LR=proj.probability, E_LR=e_lr, C=c, E_f=e_f, flag="ok")
    return row


def entanglement_rows(cfg: RunConfig) -> list[dict]:
    return [entanglement_row(x, psi, psi_p, cfg) for x, psi, psi_p in _points(cfg)]


def distinguishable_rows(cfg: RunConfig) -> list[dict]:
    rows = []
    left, right = cfg.regions
    for x, psi, psi_p in _points(cfg):
        branches = decompose_outcomes(LabeledPairState(cfg.dist_a, cfg.dist_b, psi, psi_p), cfg.regions)
        spread = concurrence_spread(branches)
        try:
            proj = project_lr(product_state(psi, psi_p, cfg.statistics, cfg.regions), left, right)
            ident_c, ident_p = concurrence_pure(proj), proj.probability
        except ZeroProbabilityError:
            ident_c, ident_p = None, 0.0
        for br in branches:
            rows.append({"sweep_param": x, "branch": "".join(br.modes), "probability": br.probability,
                         "concurrence": br.concurrence, "spread": spread,
                         "identical_C": ident_c, "identical_P_LR": ident_p})
    return rows


def _render_csv(rows: Iterable[dict], columns: list[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([v if isinstance(v, str) else _num(v) for v in (row.get(c) for c in columns)])
    return buf.getvalue()


def _render_json(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def _jsonable_rows(rows: list[dict]) -> list[dict]:
    return [{k: (float(v) + 0.0 if isinstance(v, (int, float)) and not isinstance(v, bool) else v)
             for k, v in row.items()} for row in rows]


def _emit(text: str, path: Optional[str]) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_entanglement(cfg: RunConfig, fmt: str) -> str:
    rows = entanglement_rows(cfg)
    return _render_json(_jsonable_rows(rows)) if fmt == "json" else _render_csv(rows, ENTANGLEMENT_COLUMNS)


def cmd_compare_distinguishable(cfg: RunConfig, fmt: str) -> str:
    rows = distinguishable_rows(cfg)
    return _render_json(_jsonable_rows(rows)) if fmt == "json" else _render_csv(rows, DISTINGUISHABLE_COLUMNS)


def cmd_teleport(cfg: RunConfig, fmt: str) -> str:
    spinor = InputSpinor(cfg.a, cfg.b, tol=1e-9)
    if cfg.trials > 0:
        report = run_protocol(spinor, cfg.statistics, cfg.trials, cfg.seed)
    else:
        report = analytic_report(spinor, cfg.statistics)
    if abs(sum(r.probability for r in report.per_outcome) - 1) > CONSISTENCY_TOL:
        raise NumericalInconsistency("branch probabilities do not sum to 1")
    if fmt == "csv":
        rows = [{"outcome": r.outcome.value, "probability": r.probability, "correction": r.correction or "reject",
                 "fidelity": r.fidelity, "count": (report.counts or {}).get(r.outcome)}
                for r in report.per_outcome]
        return _render_csv(rows, ["outcome", "probability", "correction", "fidelity", "count"])
    return _render_json(report.to_dict())


def cmd_oracle_check(cases: int, seed: int, fault: float = 0.0,
                     tolerance: float = CONSISTENCY_TOL) -> tuple[str, bool]:
    deviations = checks.run_suite(cases, seed, fault)
    lines = [f"oracle-check: {cases} cases per statistics, seed {seed}, tolerance {tolerance:g}"]
    for name, dev in deviations.items():
        lines.append(f"{name:<22} max|dev| = {dev:.3e}  {'PASS' if dev <= tolerance else 'FAIL'}")
    ok = checks.passed(deviations, tolerance)
    if not ok:
        bad = ", ".join(k for k, v in deviations.items() if v > tolerance)
        lines.append(f"FAILED: {bad}")
    else:
        lines.append("all quantities agree")
    return "\n".join(lines) + "\n", ok


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON run configuration")
    common.add_argument("--seed", type=int, help="seed for random sampling (overrides config)")
    common.add_argument("--trials", type=int, help="Monte Carlo trials / oracle cases (overrides config)")
    common.add_argument("--output", help="write to this file instead of stdout")
    common.add_argument("--format", choices=("csv", "json"), help="output format")

    parser = _Parser(prog="slocc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("entanglement", parents=[common], help="sweep E_LR, P_LR, concurrence and E_f")
    sub.add_parser("teleport", parents=[common], help="conditional teleportation report")
    sub.add_parser("compare-distinguishable", parents=[common], help="labeled-particle baseline")
    oc = sub.add_parser("oracle-check", parents=[common], help="randomized oracle equivalence suite")
    oc.add_argument("--tolerance", type=float, default=CONSISTENCY_TOL)
    oc.add_argument("--inject-fault", type=float, default=0.0, help=argparse.SUPPRESS)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig.load(args.config) if args.config else RunConfig()
        overrides = {}
        if args.seed is not None:
            overrides["seed"] = args.seed
        if args.trials is not None:
            if args.trials < 0:
                raise ConfigError("--trials must be >= 0")
            overrides["trials"] = args.trials
        cfg = dataclasses.replace(cfg, **overrides)
        output = args.output or cfg.output_path
        if args.command == "oracle-check":
            cases = args.trials if args.trials is not None else 1000
            if cases < 1:
                raise ConfigError("oracle-check needs at least one case")
            text, ok = cmd_oracle_check(cases, cfg.seed, args.inject_fault, args.tolerance)
            _emit(text, output)
            return EXIT_OK if ok else EXIT_NUMERICAL
        default_fmt = "json" if args.command == "teleport" else "csv"
        fmt = args.format or cfg.output_format or default_fmt
        if fmt not in ("csv", "json"):
            raise ConfigError(f"unknown output format {fmt!r}")
        handler = {"entanglement": cmd_entanglement, "teleport": cmd_teleport,
                   "compare-distinguishable": cmd_compare_distinguishable}[args.command]
        _emit(handler(cfg, fmt), output)
        return EXIT_OK
    except NumericalInconsistency as exc:
        print(f"slocc: numerical consistency failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (ConfigError, DomainError) as exc:
        print(f"slocc: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
