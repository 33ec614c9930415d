"""Batch driver: every pipeline as a subcommand writing CSV or JSON tables.

    vertex-oddity scan-ed --delta 0.5 --L 5:21:2
    vertex-oddity xx-diff --N 2:25 --out xx.csv
    vertex-oddity fig2c --L 7:19:2 --jobs 4
    vertex-oddity coulomb --L 1:12:1
    vertex-oddity verify --filter coulomb

Exit codes: 0 success, 1 failed check, 2 usage error, 3 solver or sizing error.
"""

import argparse
import io
import json
import logging
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from . import __version__
from .basis import Sector, neel_states
from .errors import DomainError, NeelViolation, SizingError, SolverError
from .scaling import CurvePoint, alpha_from_delta, curve_point, default_delta_grid, is_critical
from .xxz import RESIDUAL_TOL, ScanRow

log = logging.getLogger("vertex_oddity")

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_SOLVER = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    delta: list = field(default_factory=list)
    L: list = field(default_factory=list)
    N: list = field(default_factory=list)
    backend: list = field(default_factory=list)
    beta: list = field(default_factory=list)
    out: str = "-"
    format: str = "csv"
    tol: float = RESIDUAL_TOL
    jobs: int = 1
    filter: str = ""

    def to_json(self):
        return json.dumps(asdict(self), sort_keys=True)


# ---------------------------------------------------------------------------
# argument parsing


def parse_delta(text):
    """``v`` or ``a:b:n`` (n equally spaced points, both ends included)."""
    parts = text.split(":")
    try:
        if len(parts) == 1:
            return [float(parts[0])]
        if len(parts) == 3:
            a, b, n = float(parts[0]), float(parts[1]), int(parts[2])
            if n < 1:
                raise UsageError(f"grid needs at least one point: {text!r}")
            return [float(x) for x in np.round(np.linspace(a, b, n), 12)]
    except ValueError:
        pass
    raise UsageError(f"bad --delta {text!r}; expected v or a:b:n")


def _int_range(text, flag, default_step=1):
    parts = text.split(":")
    try:
        nums = [int(p) for p in parts]
    except ValueError:
        raise UsageError(f"bad {flag} {text!r}") from None
    if len(nums) == 1:
        return nums
    if len(nums) == 2:
        nums.append(default_step)
    if len(nums) != 3 or nums[2] < 1:
        raise UsageError(f"bad {flag} {text!r}; expected a, a:b or a:b:step")
    a, b, step = nums
    return list(range(a, b + 1, step))


def parse_sizes(text):
    L = _int_range(text, "--L")
    if not L:
        raise UsageError(f"--L {text!r} selects no sizes")
    return L


def parse_particles(text):
    N = _int_range(text, "--N")
    if not N:
        raise UsageError(f"--N {text!r} selects nothing")
    if min(N) < 1:
        raise UsageError("--N values must be >= 1")
    return N


def build_parser():
    p = argparse.ArgumentParser(prog="vertex-oddity", description=__doc__.split("\n")[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="subcommand", required=True)

    def output_flags(sp):
        sp.add_argument("--out", default="-", help="output path (default: stdout)")
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument("--jobs", type=int, default=1, help="worker processes")
        sp.add_argument("--tol", type=float, default=RESIDUAL_TOL, help="eigensolver residual tolerance")

    sp = sub.add_parser("scan-ed", help="S_inf of the canonical sector by exact diagonalization")
    sp.add_argument("--delta", default="0.5")
    sp.add_argument("--L", default="5:15:2")
    sp.add_argument("--backend", choices=("ed", "ff"), default="ed", help="ff: Slater closed form, Delta = 0 only")
    output_flags(sp)

    sp = sub.add_parser("xx-diff", help="odd/even min-entropy difference of the XX chain")
    sp.add_argument("--N", default="2:25")
    output_flags(sp)

    sp = sub.add_parser("scan-imps", help="S_inf of the ansatz")
    sp.add_argument("--delta", default=None, help="default: the 20-point grid")
    sp.add_argument("--L", default="7:19:2")
    output_flags(sp)

    sp = sub.add_parser("fig2c", help="log coefficient b(Delta) from ED and the ansatz")
    sp.add_argument("--delta", default=None, help="default: the 20-point grid")
    sp.add_argument("--L", default="7:19:2")
    sp.add_argument("--backend", choices=("ed", "imps"), action="append", help="repeatable (default: both)")
    output_flags(sp)

    sp = sub.add_parser("coulomb", help="closed-form vs enumerated Coulomb-gas partition functions")
    sp.add_argument("--L", default="1:12")
    sp.add_argument("--beta", type=int, choices=(2, 4), action="append")
    output_flags(sp)

    sp = sub.add_parser("verify", help="run the invariant and oracle checks")
    sp.add_argument("--filter", default="", help="substring of a check name or group")
    sp.add_argument("--out", default="-")
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    # test hook: added to every check's deviation
    sp.add_argument("--perturb", type=float, default=0.0, help=argparse.SUPPRESS)
    return p


def make_config(args):
    cmd = args.subcommand
    cfg = RunConfig(cmd, out=args.out, format=args.format)
    if cmd == "verify":
        cfg.filter = args.filter
        return cfg
    cfg.jobs = args.jobs
    cfg.tol = args.tol
    if cfg.jobs < 1:
        raise UsageError("--jobs must be >= 1")
    if cmd == "xx-diff":
        cfg.N = parse_particles(args.N)
        return cfg
    cfg.L = parse_sizes(args.L)
    if cmd == "coulomb":
        cfg.beta = sorted(set(args.beta or (2, 4)))
        return cfg
    cfg.delta = parse_delta(args.delta) if args.delta else [float(d) for d in default_delta_grid()]
    if cmd == "scan-ed":
        cfg.backend = [args.backend]
        if args.backend == "ff" and any(d != 0 for d in cfg.delta):
            raise UsageError("the ff backend only covers Delta = 0")
    elif cmd == "fig2c":
        cfg.backend = sorted(set(args.backend or ("ed", "imps")))
        if any(L % 2 == 0 for L in cfg.L):
            raise UsageError("fig2c fits odd sizes only")
    if any(L < 3 for L in cfg.L):
        raise UsageError("sizes must be >= 3")
    return cfg


# ---------------------------------------------------------------------------
# output


def _fmt(x):
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return "nan" if math.isnan(x) else f"{float(x):.16e}"
    return str(x)


def _json_value(x):
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        return None if math.isnan(x) else float(x)
    return x


def render(cfg, columns, rows, notes=()):
    if cfg.format == "json":
        doc = {
            "version": __version__,
            "config": json.loads(cfg.to_json()),
            "notes": list(notes),
            "columns": list(columns),
            "rows": [[_json_value(x) for x in r] for r in rows],
        }
        return json.dumps(doc, sort_keys=True, indent=1) + "\n"
    buf = io.StringIO()
    buf.write(f"# vertex_oddity {__version__}\n")
    buf.write(f"# config: {cfg.to_json()}\n")
    for n in notes:
        buf.write(f"# {n}\n")
    buf.write(",".join(columns) + "\n")
    for r in rows:
        buf.write(",".join(_fmt(x) for x in r) + "\n")
    return buf.getvalue()


def emit(cfg, text):
    if cfg.out == "-":
        sys.stdout.write(text)
    else:
        with open(cfg.out, "w", newline="") as fh:
            fh.write(text)


def pool_map(fn, tasks, jobs):
    """Ordered map; rows come back in task order whatever the completion order."""
    if jobs == 1 or len(tasks) < 2:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, tasks))


# ---------------------------------------------------------------------------
# tasks (module level so worker processes can import them)


def _ed_task(task):
    from .xxz import scan_point

    delta, L, tol = task
    return scan_point(L, delta, tol=tol)


def _ff_task(task):
    from .free_fermion import even_min_entropy, odd_min_entropy

    delta, L, _ = task
    sector = Sector.canonical(L)
    s = even_min_entropy(L // 2) if L % 2 == 0 else odd_min_entropy(L // 2)
    arg = neel_states(sector)[0]
    return ScanRow(L, sector.n_up, delta, np.nan, float(s), float(np.exp(-s)), arg, False)


def _imps_task(task):
    from .imps import imps_min_entropy

    delta, L, _ = task
    return float(imps_min_entropy(alpha_from_delta(delta), L))


def _curve_ed_task(task):
    row = _ed_task(task)
    if row.error:
        raise SolverError(row.error)
    return row.s_inf


# ---------------------------------------------------------------------------
# subcommands

ED_COLUMNS = ("L", "N_up", "delta", "energy", "S_inf", "p_max", "argmax_config", "degenerate")


def cmd_scan_ed(cfg):
    fn = _ff_task if cfg.backend == ["ff"] else _ed_task
    tasks = [(d, L, cfg.tol) for d in cfg.delta for L in cfg.L]
    rows = pool_map(fn, tasks, cfg.jobs)
    failed = [r for r in rows if r.error]
    table = [
        (r.L, r.n_up, r.delta, r.energy, r.s_inf, r.p_max, r.argmax_config, r.degenerate) for r in rows
    ]
    notes = [f"failed L={r.L} delta={r.delta!r}: {r.error}" for r in failed]
    emit(cfg, render(cfg, ED_COLUMNS, table, notes))
    return EXIT_SOLVER if failed else EXIT_OK


def cmd_xx_diff(cfg):
    from .free_fermion import w_log_det, xx_entropy_difference

    rows = [(N, 2 * N + 1, xx_entropy_difference(N), w_log_det(N)) for N in cfg.N]
    emit(cfg, render(cfg, ("N", "L_odd", "S_diff", "logdetW"), rows))
    return EXIT_OK


def cmd_scan_imps(cfg):
    bad = [d for d in cfg.delta if not is_critical(d)]
    if bad:
        raise UsageError(f"ansatz needs Delta in (-1, 1], got {bad}")
    tasks = [(d, L, None) for d in cfg.delta for L in cfg.L]
    values = pool_map(_imps_task, tasks, cfg.jobs)
    rows = [(alpha_from_delta(d), d, L, s) for (d, L, _), s in zip(tasks, values)]
    emit(cfg, render(cfg, ("alpha", "delta", "L", "S_inf_imps"), rows))
    return EXIT_OK


def _curve(cfg, task_fn, deltas):
    tasks = [(d, L, cfg.tol) for d in deltas for L in cfg.L]
    values = pool_map(task_fn, tasks, cfg.jobs)
    n = len(cfg.L)
    return {d: curve_point(d, cfg.L, values[i * n:(i + 1) * n]) for i, d in enumerate(deltas)}


def cmd_fig2c(cfg):
    critical = [d for d in cfg.delta if is_critical(d)]
    notes = [f"skipped delta={d!r}: non-critical" for d in cfg.delta if not is_critical(d)]
    for n in notes:
        log.warning(n)
    blank = {d: CurvePoint(d, alpha_theory=alpha_from_delta(d)) for d in critical}
    ed = _curve(cfg, _curve_ed_task, critical) if "ed" in cfg.backend else blank
    imps = _curve(cfg, _imps_task, critical) if "imps" in cfg.backend else blank
    rows = [
        (d, ed[d].b, ed[d].stderr_b, imps[d].b, imps[d].stderr_b, alpha_from_delta(d)) for d in critical
    ]
    columns = ("delta", "b_ed", "stderr_ed", "b_imps", "stderr_imps", "alpha_theory")
    emit(cfg, render(cfg, columns, rows, notes))
    return EXIT_OK


def cmd_coulomb(cfg):
    from .exact_points import coulomb_q, coulomb_q_bruteforce

    rows = []
    for beta in cfg.beta:
        for L in cfg.L:
            for N in range(L + 1):
                exact = float(coulomb_q(beta, L, N))
                brute = coulomb_q_bruteforce(beta, L, N)
                rows.append((beta, L, N, exact, brute, abs(brute - exact) / exact))
    emit(cfg, render(cfg, ("beta", "L", "N", "Q_exact", "Q_bruteforce", "rel_err"), rows))
    return EXIT_OK


def cmd_verify(cfg, perturb=0.0):
    from .verify import run_checks

    results = run_checks(cfg.filter or None, perturb)
    rows = [(r.group, r.name, r.deviation, r.tol, "PASS" if r.passed else "FAIL") for r in results]
    emit(cfg, render(cfg, ("group", "check", "deviation", "tol", "status"), rows))
    failed = [r.name for r in results if not r.passed]
    if failed:
        log.error("failed checks: %s", ", ".join(failed))
        return EXIT_CHECK
    if not results:
        log.error("no check matches filter %r", cfg.filter)
        return EXIT_USAGE
    return EXIT_OK


COMMANDS = {
    "scan-ed": cmd_scan_ed,
    "xx-diff": cmd_xx_diff,
    "scan-imps": cmd_scan_imps,
    "fig2c": cmd_fig2c,
    "coulomb": cmd_coulomb,
}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        cfg = make_config(args)
        if cfg.subcommand == "verify":
            return cmd_verify(cfg, args.perturb)
        return COMMANDS[cfg.subcommand](cfg)
    except UsageError as exc:
        print(f"vertex-oddity: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NeelViolation as exc:
        print(f"vertex-oddity: check failed: {exc}", file=sys.stderr)
        return EXIT_CHECK
    except (SolverError, SizingError) as exc:
        print(f"vertex-oddity: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except DomainError as exc:
        print(f"vertex-oddity: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
