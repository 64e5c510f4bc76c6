"""Command-line interface: spectra, wavefunctions, scattering and checks.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.
"""
import argparse
import csv
import io
import json
import math
import os
import re
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__, coulomb, oracle, planewave
from .errors import LevyLeblondError
from .params import ELECTRON_MASS_EV, FINE_STRUCTURE, PhysParams, QuantumNumbers, admissible_states
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3
L_LETTERS = "spdfghik"


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    params: PhysParams
    units: str = "natural"
    m_ev: float = ELECTRON_MASS_EV
    fmt: str = "csv"
    output: str = None
    convention: str = "literal"


def _fmt(x):
    if isinstance(x, (bool, np.bool_)):
        return str(bool(x)).lower()
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".17g")
    return "" if x is None else str(x)


def _jsonable(x):
    if isinstance(x, (np.floating,)):
        return float(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, complex):
        return [x.real, x.imag]
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def render(columns, rows, meta, conventions, fmt):
    """CSV (header + rows, 17 significant digits) or one JSON object."""
    if fmt == "json":
        obj = {"meta": meta, "conventions": conventions,
               "rows": [dict(zip(columns, r)) for r in rows]}
        return json.dumps(_jsonable(obj), indent=2) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_fmt(v) for v in r])
    return buf.getvalue()


def emit(text, output):
    if output in (None, "-"):
        sys.stdout.write(text)
        return
    try:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise IOError(f"cannot write {output}: {exc}") from exc


def conventions_block(cfg):
    p = cfg.params
    gs = coulomb.ground_state(p)
    return {
        "energy_unit": "eV" if cfg.units == "eV" else "m",
        "electron_mass_eV": cfg.m_ev if cfg.units == "eV" else None,
        "length_unit": "Bohr radius 1/(alpha m)",
        "series_normalization": "a0 = 1",
        "radial_coupling": "k = -kappa",
        "constants": cfg.convention,
        "density": "psi^dagger psi",
        "N_computed_over_N_formula": gs.ratio,
    }


def meta_block(cfg, **extra):
    p = cfg.params
    out = {"command": cfg.command, "version": __version__,
           "m": p.m, "Z": p.Z, "alpha": p.alpha, "eps": p.eps}
    out.update(extra)
    return out


def _energy(E, cfg):
    return E / cfg.params.m * cfg.m_ev if cfg.units == "eV" else E


# -- commands -----------------------------------------------------------------

def cmd_spectrum(cfg, n_max, shoot=True):
    p = cfg.params
    cols = ["n", "nprime", "kappa", "j", "E_closed_form", "E_finite_eps", "E_shooting", "rel_err"]
    rows = []
    for q in admissible_states(n_max):
        Ec = coulomb.energy_closed_form(q.n, p)
        Ef = coulomb.solve_energy_finite_eps(q.nprime, q.kappa, p, cfg.convention)
        Es = rel = None
        if shoot:
            Es = oracle.shoot_eigenvalue(q.nprime, q.kappa, p, convention=cfg.convention).E
            rel = abs(Es - Ef) / abs(Ef)
        rows.append([q.n, q.nprime, q.kappa, q.j, _energy(Ec, cfg), _energy(Ef, cfg),
                     None if Es is None else _energy(Es, cfg), rel])
    return cols, rows, meta_block(cfg, n_max=n_max)


def parse_state(label):
    """'1s', '2p', ... -> (n', kappa) with l = kappa - 1."""
    m = re.fullmatch(r"(\d+)([a-z])", label.strip().lower())
    if not m or m.group(2) not in L_LETTERS:
        raise UsageError(f"cannot parse state {label!r}; use e.g. 1s, 2p")
    n, l = int(m.group(1)), L_LETTERS.index(m.group(2))
    if n < 1 or l >= n:
        raise UsageError(f"state {label!r} needs n >= 1 and l < n")
    return n - l - 1, l + 1


def cmd_wavefunction(cfg, nprime, kappa, spin="up", theta=None, phi=0.0, r_max=20.0, points=201):
    p = cfg.params
    m_j = 0.5 if spin == "up" else -0.5
    q = QuantumNumbers(nprime, kappa, m_j)
    E = coulomb.solve_energy_finite_eps(nprime, kappa, p, cfg.convention)
    sol = coulomb.run_recursions(E, q, p, cfg.convention)
    grid = oracle.RadialGrid.for_state(q.n, p)
    norm = oracle.quadrature_norm((sol.f, sol.g), grid)
    scale = 1.0 / math.sqrt(norm)
    r = np.linspace(0.0, r_max, points) * p.bohr_radius
    f, g = scale * sol.f(r), scale * sol.g(r)
    extra = {"state": {"nprime": nprime, "kappa": kappa, "n": q.n, "spin": spin},
             "E": _energy(E, cfg), "s": sol.s, "lambda": sol.lam,
             "d0": float(sol.a_coeffs[0] / sol.b_coeffs[0]),
             "N_computed": None, "N_paper_formula": None, "ratio": None,
             "radial_normalization": "int (f^2 + g^2) r^2 dr = 1"}
    gs = None
    if nprime == 0 and kappa == 1:
        gs = coulomb.ground_state(p, spin)
        extra.update(N_computed=gs.N, N_paper_formula=gs.N_formula, ratio=gs.ratio)
    cols = ["r", "f", "g"]
    rows = [[ri, fi, gi] for ri, fi, gi in zip(r, f, g)]
    if theta is not None:
        if gs is None:
            raise UsageError("--theta is available for the ground state (1s) only")
        psi = gs(r, theta, phi)
        cols += [f"{part}_psi{c}" for c in range(1, 5) for part in ("re", "im")]
        for row, v in zip(rows, psi):
            row += [x for comp in v for x in (comp.real, comp.imag)]
        ref = gs(p.bohr_radius, theta, phi)
        lead = ref[0] if spin == "up" else ref[1]
        extra["theta"], extra["phi"] = theta, phi
        extra["spinor_shape"] = [complex(c / lead) for c in ref]
    return cols, rows, meta_block(cfg, **extra)


def cmd_scatter(cfg, kind, V0, energies, width=None):
    m = cfg.params.m
    rows = []
    for E in energies:
        res = planewave.solve_step(E, V0, m) if kind == "step" else planewave.solve_barrier(E, V0, width, m)
        rows.append([E, res.R, res.T])
    return ["E", "R", "T"], rows, meta_block(cfg, potential=kind, V0=V0, width=width, mass=m)


def cmd_oracle_compare(cfg, n_max):
    p = cfg.params
    cols = ["n", "nprime", "kappa", "E_series", "E_shooting", "rel_diff", "nodes", "match_defect",
            "max_F_dev"]
    rows = []
    for q in admissible_states(n_max):
        Ef = coulomb.solve_energy_finite_eps(q.nprime, q.kappa, p, cfg.convention)
        res = oracle.shoot_eigenvalue(q.nprime, q.kappa, p, convention=cfg.convention)
        sol = coulomb.run_recursions(Ef, q, p, cfg.convention)
        ref = sol.F(res.r)
        c = np.dot(res.F_values, ref) / np.dot(ref, ref)
        dev = float(np.max(np.abs(res.F_values - c * ref)) / np.max(np.abs(c * ref)))
        rows.append([q.n, q.nprime, q.kappa, _energy(Ef, cfg), _energy(res.E, cfg),
                     abs(res.E - Ef) / abs(Ef), res.nodes, res.match_defect, dev])
    return cols, rows, meta_block(cfg, n_max=n_max)


def cmd_verify(cfg, suites, out=sys.stdout):
    ok = True
    for name in suites:
        checks = run_suite(name, cfg.params)
        print(f"== suite {name}", file=out)
        for c in checks:
            print(c.line(), file=out)
            ok &= c.passed
    print("ALL PASS" if ok else "FAILURES PRESENT", file=out)
    return ok


# -- argument parsing ---------------------------------------------------------

def _positive_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected an integer >= 1, got {text}")
    return v


def _default_alpha():
    env = os.environ.get("LL_ALPHA")
    if env:
        try:
            return float(env)
        except ValueError:
            raise UsageError(f"LL_ALPHA={env!r} is not a number")
    return FINE_STRUCTURE


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--Z", type=int, default=1, help="nuclear charge")
    common.add_argument("--alpha", type=float, default=None, help="coupling (default: LL_ALPHA or 1/137.036)")
    common.add_argument("--m", type=float, default=1.0, help="particle mass (energy unit)")
    common.add_argument("--eps", type=float, default=0.0, help="regulator of eta'")
    common.add_argument("--units", choices=("natural", "eV"), default="natural")
    common.add_argument("--m-ev", type=float, default=ELECTRON_MASS_EV, help="rest energy in eV for --units eV")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--output", default=None, help="output path (default stdout)")
    common.add_argument("--convention", choices=coulomb.CONVENTIONS, default="literal",
                        help="placement of 1 +- eps in the radial constants")

    ap = argparse.ArgumentParser(prog="levyleblond", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", parents=[common], help="bound-state energies")
    sp.add_argument("--n-max", type=_positive_int, default=3)
    sp.add_argument("--no-shoot", action="store_true", help="skip the shooting column")

    wf = sub.add_parser("wavefunction", parents=[common], help="radial functions of one state")
    wf.add_argument("--state", default="1s", help="spectroscopic label, e.g. 1s, 2p")
    wf.add_argument("--nprime", type=int, default=None)
    wf.add_argument("--kappa", type=int, default=None)
    wf.add_argument("--spin", choices=("up", "down"), default="up")
    wf.add_argument("--theta", type=float, default=None)
    wf.add_argument("--phi", type=float, default=0.0)
    wf.add_argument("--r-max", type=float, default=20.0, help="in Bohr radii")
    wf.add_argument("--points", type=_positive_int, default=201)

    sc = sub.add_parser("scatter", parents=[common], help="step or barrier R, T")
    kind = sc.add_mutually_exclusive_group(required=True)
    kind.add_argument("--step", action="store_true")
    kind.add_argument("--barrier", action="store_true")
    sc.add_argument("--V0", type=float, required=True)
    sc.add_argument("--E", type=float, default=None, help="single energy")
    sc.add_argument("--E-min", type=float, default=None)
    sc.add_argument("--E-max", type=float, default=None)
    sc.add_argument("--E-points", type=_positive_int, default=50)
    sc.add_argument("--width", type=float, default=None)

    vf = sub.add_parser("verify", parents=[common], help="run verification suites")
    vf.add_argument("--suite", choices=SUITES + ("all",), action="append", default=None)

    oc = sub.add_parser("oracle-compare", parents=[common], help="series vs shooting side by side")
    oc.add_argument("--n-max", type=_positive_int, default=4)
    return ap


def _config(args):
    alpha = args.alpha if args.alpha is not None else _default_alpha()
    params = PhysParams(m=args.m, Z=args.Z, alpha=alpha, eps=args.eps)
    return RunConfig(args.command, params, args.units, args.m_ev, args.format, args.output,
                     args.convention)


def _dispatch(args):
    cfg = _config(args)
    if args.command == "verify":
        suites = SUITES if not args.suite or "all" in args.suite else tuple(dict.fromkeys(args.suite))
        buf = io.StringIO()
        ok = cmd_verify(cfg, suites, buf)
        emit(buf.getvalue(), cfg.output)
        return EXIT_OK if ok else EXIT_FAIL
    if args.command == "spectrum":
        result = cmd_spectrum(cfg, args.n_max, shoot=not args.no_shoot)
    elif args.command == "wavefunction":
        if (args.nprime is None) != (args.kappa is None):
            raise UsageError("give both --nprime and --kappa, or --state")
        if args.nprime is not None:
            nprime, kappa = args.nprime, args.kappa
        else:
            nprime, kappa = parse_state(args.state)
        result = cmd_wavefunction(cfg, nprime, kappa, args.spin, args.theta, args.phi,
                                  args.r_max, args.points)
    elif args.command == "scatter":
        kind = "step" if args.step else "barrier"
        if kind == "barrier" and args.width is None:
            raise UsageError("--barrier needs --width")
        if args.E is not None:
            energies = [args.E]
        elif args.E_min is not None and args.E_max is not None:
            energies = list(np.linspace(args.E_min, args.E_max, args.E_points))
        else:
            raise UsageError("give --E or both --E-min and --E-max")
        result = cmd_scatter(cfg, kind, args.V0, energies, args.width)
    else:
        result = cmd_oracle_compare(cfg, args.n_max)
    cols, rows, meta = result
    emit(render(cols, rows, meta, conventions_block(cfg), cfg.fmt), cfg.output)
    return EXIT_OK


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)  # exits with 2 on bad flags
    try:
        return _dispatch(args)
    except UsageError as exc:
        parser.error(str(exc))
    except IOError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ArithmeticError as exc:  # numerical failure, not bad input
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (LevyLeblondError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
