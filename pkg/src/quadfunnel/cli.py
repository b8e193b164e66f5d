"""Command-line interface.

Subcommands ``eval``, ``verify``, ``spectrum``, ``triples`` and ``figure``.
Exit codes: 0 success, 1 verification failures, 2 usage errors,
3 invalid quantum-number combinations.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from .fields import NoClosedFormError, energy_split, state_potential, state_velocity
from .figures import FIGURE_IDS, figure_data
from .specfun import QuantumNumberError, Triple, classify_angular_family, enumerate_triples
from .states import (
    FAMILIES,
    SUPERPOSITION_KINDS,
    BoundedQN,
    PhysicalConstants,
    SingularQN,
    StateSpec,
    density,
    eval_psi,
    make_superposition,
)

__all__ = ["main", "GridSpec", "parse_grid", "build_parser"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_QN = 0, 1, 2, 3

KIND_FAMILIES = {
    "azimuthal": ("singular",),
    "axial": ("singular",),
    "double": ("singular",),
    "em-axial": ("em-singular",),
    "bounded-azimuthal": ("bounded",),
}

EVAL_COLUMNS = ("r", "theta", "phi", "re_psi", "im_psi", "density",
                "v_r", "v_theta", "v_phi", "U", "Q", "T", "V")


class UsageError(Exception):
    """Bad flag value; maps to exit code 2."""


@dataclass(frozen=True)
class GridSpec:
    """Evaluation grid; each axis is ``(min, max, count)``."""

    r: tuple = (0.5, 3.0, 6)
    theta: tuple = (0.05, math.pi - 0.05, 5)
    phi: tuple = (0.0, 1.75 * math.pi, 8)
    t: float = 0.0

    def axes(self):
        return tuple(_axis(*a) for a in (self.r, self.theta, self.phi))


def _axis(lo, hi, count):
    return np.array([lo]) if count == 1 else np.linspace(lo, hi, count)


def parse_grid(text, flag):
    """Parse ``min:max:count``; count 1 means the single point ``min``."""
    parts = str(text).split(":")
    if len(parts) != 3:
        raise UsageError(f"{flag}: expected min:max:count, got {text!r}")
    try:
        lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise UsageError(f"{flag}: expected min:max:count, got {text!r}") from None
    if count < 1:
        raise UsageError(f"{flag}: count must be >= 1")
    if not (lo < hi or (count == 1 and lo == hi)):
        raise UsageError(f"{flag}: min must be < max")
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise UsageError(f"{flag}: bounds must be finite")
    return lo, hi, count


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_units(p):
    g = p.add_argument_group("units")
    g.add_argument("--units", choices=("natural", "si"), default="natural")
    g.add_argument("--hbar", type=float)
    g.add_argument("--mass", type=float)
    g.add_argument("--sigma-r", type=float, dest="sigma_r")
    g.add_argument("--charge", type=float)


def _add_output(p, default_format="csv"):
    g = p.add_argument_group("output")
    g.add_argument("--out", help="output path (default: standard output)")
    g.add_argument("--format", choices=("csv", "json"), default=default_format)


def build_parser():
    parser = _Parser(prog="quadfunnel", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", help="evaluate a state and its fields on a grid")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--kappa", type=int, default=0)
    p.add_argument("--ell", type=int, default=0)
    p.add_argument("--tau", choices=("+", "-"), default="+")
    p.add_argument("--s", type=int, default=0)
    p.add_argument("--triple", default="0,0,0", help="l,eps,ell")
    p.add_argument("--ell-sign", choices=("+", "-"), default="+", dest="ell_sign")
    p.add_argument("--superposition", choices=SUPERPOSITION_KINDS)
    p.add_argument("--sign", choices=("+", "-"), default="+",
                   help="equal-weight superposition sign (ignored with --coeffs)")
    p.add_argument("--coeffs", help="comma-separated complex coefficients, e.g. 0.6,0.8j")
    p.add_argument("--grid-r", default="0.5:3:6", dest="grid_r")
    p.add_argument("--grid-theta", default=f"0.05:{math.pi - 0.05!r}:5", dest="grid_theta")
    p.add_argument("--grid-phi", default=f"0:{1.75 * math.pi!r}:8", dest="grid_phi")
    p.add_argument("--t", type=float, default=0.0)
    _add_units(p)
    _add_output(p)

    p = sub.add_parser("verify", help="run a verification suite")
    from .verify.suite import SUITES
    p.add_argument("--suite", choices=SUITES, required=True)
    p.add_argument("--max-n", type=int, default=4, dest="max_n")
    p.add_argument("--max-kappa", type=int, default=4, dest="max_kappa")
    p.add_argument("--max-s", type=int, dest="max_s",
                   help="bounded-family s range and orthogonality degree (default 4 and 6)")
    p.add_argument("--ells", default="0,1,-1,3,-3,5,-5")
    p.add_argument("--triple-max", type=int, default=13, dest="triple_max")
    p.add_argument("--no-superpositions", action="store_true", dest="no_superpositions")
    p.add_argument("--radial-order", type=int, default=64, dest="radial_order")
    p.add_argument("--theta-order", type=int, default=64, dest="theta_order")
    p.add_argument("--phi-points", type=int, default=256, dest="phi_points")
    p.add_argument("--h", type=float, default=1e-3)
    p.add_argument("--levels", type=int, default=3)
    p.add_argument("--fd-points", type=int, default=256, dest="fd_points")
    p.add_argument("--hj-points", type=int, default=500, dest="hj_points")
    p.add_argument("--seed", type=int, default=20240917)
    _add_units(p)
    _add_output(p, "json")

    p = sub.add_parser("spectrum", help="energy levels")
    p.add_argument("--family", choices=("singular", "bounded"), default="singular")
    p.add_argument("--n-max", type=int, default=2, dest="n_max")
    p.add_argument("--kappa-max", type=int, default=2, dest="kappa_max")
    p.add_argument("--s-max", type=int, default=2, dest="s_max")
    _add_units(p)
    _add_output(p)

    p = sub.add_parser("triples", help="angular quantum-number triples")
    p.add_argument("--max", type=int, default=13, dest="max")
    p.add_argument("--strict", action="store_true", help="strict Pythagorean triples only")
    _add_output(p)

    p = sub.add_parser("figure", help="figure-reproduction data")
    p.add_argument("--id", choices=FIGURE_IDS, required=True, dest="fig_id")
    p.add_argument("--stride", type=int, default=20, help="keep every k-th streamline point")
    _add_units(p)
    _add_output(p)
    return parser


def _constants(args):
    over = dict(hbar=args.hbar, mass=args.mass, sigma_r=args.sigma_r, charge=args.charge)
    try:
        if args.units == "si":
            return PhysicalConstants.si(**over)
        return PhysicalConstants(**{k: v for k, v in over.items() if v is not None})
    except ValueError as exc:
        raise UsageError(f"--units/--hbar/--mass/--sigma-r/--charge: {exc}") from None


def _fmt(x):
    if isinstance(x, (bool, np.bool_)):
        return str(bool(x)).lower()
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".17g")
    return str(x)


def _json_value(x):
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if math.isfinite(x) else None
    return x


def _write(args, text):
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def render_table(columns, rows, fmt, meta=None):
    """Serialize a table to CSV (17 significant digits) or JSON."""
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for row in rows:
            w.writerow([_fmt(x) for x in row])
        return buf.getvalue()
    doc = dict(meta or {})
    doc["columns"] = list(columns)
    doc["rows"] = [[_json_value(x) for x in row] for row in rows]
    return json.dumps(doc, separators=(",", ":")) + "\n"


def _parse_coeffs(text, kind):
    try:
        c = tuple(complex(x.strip().replace("i", "j")) for x in text.split(","))
    except ValueError:
        raise UsageError(f"--coeffs: cannot parse {text!r}") from None
    want = 4 if kind == "double" else 2
    if len(c) != want:
        raise UsageError(f"--coeffs: {kind} needs {want} coefficients")
    return c


def _state_from_args(args):
    sign = 1 if args.tau == "+" else -1
    if args.family.endswith("singular"):
        base = SingularQN(args.n, args.kappa, args.ell, sign)
    else:
        try:
            triple = Triple.parse(args.triple)
        except QuantumNumberError:
            raise
        except ValueError as exc:
            raise UsageError(f"--triple: {exc}") from None
        base = BoundedQN(args.n, args.s, triple, 1 if args.ell_sign == "+" else -1)
    if args.superposition is None:
        return StateSpec(args.family, base)
    kind = args.superposition
    if args.family not in KIND_FAMILIES[kind]:
        raise QuantumNumberError(f"{kind} superposition is not defined for the {args.family} family")
    if args.coeffs:
        coeffs = _parse_coeffs(args.coeffs, kind)
    else:
        r2 = 1 / math.sqrt(2)
        pair = (r2, r2 if args.sign == "+" else -r2)
        coeffs = pair + pair if kind == "double" else pair
    try:
        spec = make_superposition(kind, base, coeffs)
    except QuantumNumberError:
        raise
    except ValueError as exc:
        if "normalized" in str(exc):
            raise UsageError(f"--coeffs: {exc}") from None
        raise QuantumNumberError(str(exc)) from None
    if spec.family != args.family:
        raise QuantumNumberError(f"{kind} superposition is not defined for the {args.family} family")
    return spec


def cmd_eval(args):
    c = _constants(args)
    grid = GridSpec(parse_grid(args.grid_r, "--grid-r"), parse_grid(args.grid_theta, "--grid-theta"),
                    parse_grid(args.grid_phi, "--grid-phi"), args.t)
    if grid.r[0] <= 0:
        raise UsageError("--grid-r: radii must be positive")
    if not (0 < grid.theta[0] and grid.theta[1] < math.pi):
        raise UsageError("--grid-theta: range must lie inside (0, pi)")
    spec = _state_from_args(args)
    rs, ts, ps = grid.axes()
    R, T, P = (a.ravel() for a in np.meshgrid(rs, ts, ps, indexing="ij"))
    p = (R, T, P)
    psi = np.atleast_1d(eval_psi(spec, c, p, grid.t))
    f = np.atleast_1d(density(spec, c, p))
    with np.errstate(invalid="ignore", divide="ignore"):
        v = [np.broadcast_to(x, R.shape) for x in state_velocity(spec, c, p)]
    u = np.broadcast_to(state_potential(spec, c, p), R.shape)
    try:
        e = energy_split(spec, c, p)
        q, t, vv = (np.broadcast_to(x, R.shape) for x in (e.Q, e.T, e.V))
    except NoClosedFormError:
        q = t = vv = np.full(R.shape, np.nan)
    rows = zip(R, T, P, psi.real, psi.imag, f, *v, u, q, t, vv)
    meta = {"state": spec.summary()}
    _write(args, render_table(EVAL_COLUMNS, rows, args.format, meta))
    return EXIT_OK


def _report_text(report, fmt):
    if fmt == "json":
        return json.dumps(report.as_dict(), indent=1) + "\n"
    cols = ("name", "spec", "measured", "expected", "abs_err", "rel_err", "tol", "pass")
    rows = []
    for r in report.results:
        d = r.as_dict()
        rows.append(tuple("" if d[k] is None else d[k] for k in cols))
    return render_table(cols, rows, "csv")


def cmd_verify(args):
    from .verify import FDSpec, QuadratureSpec, SuiteConfig, SweepConfig, run_suite

    c = _constants(args)
    try:
        ells = tuple(int(x) for x in args.ells.split(",") if x.strip())
    except ValueError:
        raise UsageError(f"--ells: cannot parse {args.ells!r}") from None
    try:
        quad = QuadratureSpec(args.radial_order, args.theta_order, args.phi_points)
        fd = FDSpec(args.h, args.levels)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    s_max = 4 if args.max_s is None else args.max_s
    orth = 6 if args.max_s is None else args.max_s
    sweep = SweepConfig(args.max_n, args.max_kappa, s_max, ells, args.triple_max,
                        not args.no_superpositions, orth)
    cfg = SuiteConfig(quad, fd, c, sweep, args.fd_points, args.hj_points, seed=args.seed)
    report = run_suite(args.suite, cfg)
    _write(args, _report_text(report, args.format))
    print(f"{args.suite}: {report.passed} passed, {report.failed} failed, "
          f"{report.skipped} skipped", file=sys.stderr)
    return EXIT_OK if report.failed == 0 else EXIT_FAIL


def spectrum_rows(family, n_max, k_max, c):
    """Rows ``(n, kappa|s, E, 2n + kappa|s)`` sorted by ``E`` then ``n``."""
    rows = [(n, k, c.energy_unit * (2 * n + k + 1.5), 2 * n + k)
            for n in range(n_max + 1) for k in range(k_max + 1)]
    return sorted(rows, key=lambda x: (x[2], x[0]))


def cmd_spectrum(args):
    for flag in ("n_max", "kappa_max", "s_max"):
        if getattr(args, flag) < 0:
            raise UsageError(f"--{flag.replace('_', '-')}: must be >= 0")
    c = _constants(args)
    second = "kappa" if args.family == "singular" else "s"
    k_max = args.kappa_max if args.family == "singular" else args.s_max
    rows = spectrum_rows(args.family, args.n_max, k_max, c)
    _write(args, render_table(("n", second, "E", "class"), rows, args.format,
                              {"family": args.family}))
    return EXIT_OK


def triples_rows(max_ell, strict=False):
    """Rows ``(l, eps, ell, family)`` up to hypotenuse `max_ell`."""
    rows = [(t.l, t.eps, t.ell) for t in enumerate_triples(max_ell)]
    if not strict:
        rows += [(0, e, e) for e in range(1, max_ell + 1)]
        rows += [(l, 0, l) for l in range(1, max_ell + 1)]
    rows.sort(key=lambda x: (x[2], x[0]))
    return [(l, e, ell, classify_angular_family(l, e, ell)) for l, e, ell in rows]


def cmd_triples(args):
    if args.max < 1:
        raise UsageError("--max: must be >= 1")
    rows = triples_rows(args.max, args.strict)
    _write(args, render_table(("l", "eps", "ell", "family"), rows, args.format))
    return EXIT_OK


def cmd_figure(args):
    if args.stride < 1:
        raise UsageError("--stride: must be >= 1")
    c = _constants(args)
    cols, rows = figure_data(args.fig_id, c, args.stride)
    _write(args, render_table(cols, rows, args.format, {"id": args.fig_id}))
    return EXIT_OK


COMMANDS = {"eval": cmd_eval, "verify": cmd_verify, "spectrum": cmd_spectrum,
            "triples": cmd_triples, "figure": cmd_figure}


def main(argv=None):
    """Entry point; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        with np.errstate(all="ignore"):
            return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"quadfunnel {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except QuantumNumberError as exc:
        print(f"quadfunnel {args.command}: invalid quantum numbers: {exc}", file=sys.stderr)
        return EXIT_QN
    except ValueError as exc:
        # state-construction errors not covered above are invalid combinations
        print(f"quadfunnel {args.command}: invalid quantum numbers: {exc}", file=sys.stderr)
        return EXIT_QN


if __name__ == "__main__":
    sys.exit(main())
