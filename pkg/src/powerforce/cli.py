"""Command-line front end.

    powerforce verify [--all | --suite NAME ...] [--points N]
    powerforce collide [--events N]
    powerforce ho-spectrum [--n-max N] [--omega W] [--mass M]
    powerforce em-modes [--modes FILE] [--cutoff K]

Every subcommand accepts ``--config``, ``--seed``, ``--epsilon``, ``--out`` and
``--format``.  Exit status: 0 when every check passed, 1 when any failed,
2 for usage or configuration errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from contextlib import contextmanager
from pathlib import Path

import numpy as np

from . import diffops, fock, quanta
from .constants import Constants, from_config, natural_units
from .errors import PowerForceError
from .grid import expectation
from .verify import DEFAULT_SEED, DEFAULT_SWEEP, SUITES, TOL_HO, VerifyConfig, run_all

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _epsilon_list(text: str) -> tuple[float, ...]:
    try:
        values = tuple(float(v) for v in text.replace(",", " ").split())
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a list of numbers: {text!r}") from None
    if not values or any(not v > 0 for v in values):
        raise argparse.ArgumentTypeError(f"epsilon values must be positive: {text!r}")
    return values


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="constants file (key = value lines)")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--epsilon", type=_epsilon_list, default=None,
                        help="comma-separated epsilon sweep (default 1.0,0.37,5.0 for verify)")
    common.add_argument("--out", default="-", help="output path, '-' for stdout")
    common.add_argument("--format", choices=("json-text", "table"), default="json-text")

    parser = argparse.ArgumentParser(prog="powerforce", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="run identity suites")
    group = v.add_mutually_exclusive_group()
    group.add_argument("--all", action="store_true", help="run every suite (default)")
    group.add_argument("--suite", nargs="+", choices=list(SUITES), metavar="NAME",
                       help=f"one or more of: {', '.join(SUITES)}")
    v.add_argument("--points", type=int, help="grid points for plane-wave and finite-difference checks")
    v.add_argument("--events", type=int, default=10_000)

    c = sub.add_parser("collide", parents=[common], help="seeded elastic collision sweep")
    c.add_argument("--events", type=int, default=10_000)
    c.add_argument("--trace", default="collide_trace.txt", help="event trace path, '-' for stdout")

    h = sub.add_parser("ho-spectrum", parents=[common], help="oscillator power spectrum")
    h.add_argument("--n-max", type=int, default=10)
    h.add_argument("--omega", type=float, default=1.0)
    h.add_argument("--mass", type=float, default=1.0)

    e = sub.add_parser("em-modes", parents=[common], help="photon-mode power/force table")
    e.add_argument("--modes", type=Path, help="file with 'kx ky kz sigma' lines")
    e.add_argument("--cutoff", type=int, default=2)
    return parser


@contextmanager
def _output(path: str):
    if path == "-":
        yield sys.stdout
    else:
        with open(path, "w") as fh:
            yield fh


def _load_constants(args) -> Constants:
    if args.config is None:
        return natural_units()
    try:
        text = args.config.read_text()
    except OSError as exc:
        raise UsageError(f"cannot read config {args.config}: {exc}") from None
    return from_config(text)


def _sweep(args, base: Constants, default=None) -> list[Constants]:
    values = args.epsilon or default or (base.epsilon,)
    return [base.with_epsilon(e) for e in values]


def cmd_verify(args, base: Constants) -> int:
    eps = args.epsilon or DEFAULT_SWEEP
    cfg = VerifyConfig(constants=base, epsilons=tuple(eps), seed=args.seed,
                       suites=tuple(args.suite) if args.suite else None,
                       points=args.points, events=args.events)
    report = run_all(cfg)
    with _output(args.out) as fh:
        fh.write(report.to_json() if args.format == "json-text" else report.to_table())
    for failure in report.failures():
        print(f"FAIL {failure.check_id}: residual {failure.residual:.3e} > {failure.tolerance:.1e} "
              f"{json.dumps(failure.metadata, sort_keys=True)}", file=sys.stderr)
    return EXIT_OK if report.all_passed else EXIT_FAIL


def cmd_collide(args, base: Constants) -> int:
    if args.events < 1:
        raise UsageError("--events must be positive")
    rows = []
    events = None
    for c in _sweep(args, base):
        events = quanta.random_events(args.events, args.seed, c)
        mom = eng = imp = 0.0
        for ev in events:
            rep = quanta.conservation_check(ev.records)
            mom = max(mom, rep.momentum_residual / rep.scale)
            eng = max(eng, rep.energy_residual / rep.scale)
            for r in ev.records:
                imp = max(imp, float(np.max(np.abs(quanta.impulse_of(r, c) - r.delta_p))))
        rows.append({"epsilon": c.epsilon, "events": args.events, "seed": args.seed,
                     "momentum_closure": mom, "energy_closure": eng, "impulse_residual": imp,
                     "passed": mom <= 1e-12 and eng <= 1e-12 and imp <= 1e-15})
    with _output(args.trace) as fh:
        quanta.write_trace(events, fh)
    with _output(args.out) as fh:
        if args.format == "json-text":
            fh.write(json.dumps({"seed": args.seed, "runs": rows}, indent=2) + "\n")
        else:
            fh.write(f"# seed {args.seed}, {args.events} events\n")
            fh.write(f"{'epsilon':>8}  {'sum rho':>10}  {'sum E':>10}  {'J - dp':>10}  status\n")
            for r in rows:
                fh.write(f"{r['epsilon']:8g}  {r['momentum_closure']:10.2e}  {r['energy_closure']:10.2e}  "
                         f"{r['impulse_residual']:10.2e}  {'PASS' if r['passed'] else 'FAIL'}\n")
    return EXIT_OK if all(r["passed"] for r in rows) else EXIT_FAIL


def ho_spectrum(n_max: int, omega: float, m: float, consts: Constants) -> list[dict]:
    """Analytic ``eps omega (n + 1/2)`` next to the grid value ``(eps/hbar) <H_ho>``."""
    grid = diffops.oscillator_grid(n_max, omega, m, consts)
    op = diffops.power_ho(m, omega, consts)
    rows = []
    for n in range(n_max + 1):
        analytic = consts.epsilon * omega * (n + 0.5)
        numeric = expectation(op, diffops.ho_eigenstate(n, omega, m, grid, consts)).real
        rows.append({"n": n, "epsilon": consts.epsilon, "omega": omega, "mass": m,
                     "analytic": analytic, "grid": numeric,
                     "relative_error": abs(numeric - analytic) / analytic})
    return rows


def cmd_ho_spectrum(args, base: Constants) -> int:
    if not 0 <= args.n_max <= 20:
        raise UsageError("--n-max must lie in [0, 20]")
    rows = [r for c in _sweep(args, base) for r in ho_spectrum(args.n_max, args.omega, args.mass, c)]
    with _output(args.out) as fh:
        if args.format == "json-text":
            fh.write(json.dumps({"rows": rows}, indent=2) + "\n")
        else:
            fh.write(f"{'n':>3}  {'epsilon':>8}  {'P_n':>14}  {'grid':>20}  {'rel err':>9}\n")
            for r in rows:
                fh.write(f"{r['n']:3d}  {r['epsilon']:8g}  {r['analytic']:14.10g}  {r['grid']:20.15g}  "
                         f"{r['relative_error']:9.2e}\n")
    return EXIT_OK if all(r["relative_error"] <= TOL_HO for r in rows) else EXIT_FAIL


DEFAULT_MODES = "1 0 0 1\n0 2 1 2\n"


def cmd_em_modes(args, base: Constants) -> int:
    if args.modes is None:
        modes = fock.parse_modes(DEFAULT_MODES.splitlines())
    else:
        try:
            with open(args.modes) as fh:
                modes = fock.parse_modes(fh)
        except OSError as exc:
            raise UsageError(f"cannot read modes file: {exc}") from None
    ms = fock.ModeSet(tuple(modes), args.cutoff)
    rows, ok = [], True
    for c in _sweep(args, base):
        rep = fock.em_consistency_check(ms, c)
        ok = ok and rep.passed
        for row in rep.rows:
            rows.append({"epsilon": c.epsilon, "occupations": list(row.state.occupations),
                         "power": row.power, "power_from_energy": c.ratio * row.hamiltonian,
                         "force": [float(v) for v in row.force], "residual": row.residual})
    with _output(args.out) as fh:
        if args.format == "json-text":
            fh.write(json.dumps({"modes": len(ms), "cutoff": ms.cutoff, "rows": rows}, indent=2) + "\n")
        else:
            fh.write(f"{'epsilon':>8}  {'n':>12}  {'P':>12}  {'(eps/hbar)H':>12}  force\n")
            for r in rows:
                force = " ".join(f"{v:.6g}" for v in r["force"])
                fh.write(f"{r['epsilon']:8g}  {str(tuple(r['occupations'])):>12}  {r['power']:12.6g}  "
                         f"{r['power_from_energy']:12.6g}  ({force})\n")
    return EXIT_OK if ok else EXIT_FAIL


COMMANDS = {"verify": cmd_verify, "collide": cmd_collide,
            "ho-spectrum": cmd_ho_spectrum, "em-modes": cmd_em_modes}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        base = _load_constants(args)
        return COMMANDS[args.command](args, base)
    except (UsageError, PowerForceError, OSError) as exc:
        print(f"powerforce {args.command}: error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
