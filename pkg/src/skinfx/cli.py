"""Command-line frontend.

Subcommands
    impedance  surface impedance for one parameter point (JSON)
    spectrum   index, zero count, and zero locations (JSON)
    domain     (gamma, eps) sweep at fixed v_c: per-point class and index (CSV)
    curves     boundary curves: --which lambda (delta-plane) or L (gamma-eps)
    profile    electric-field profile e(x) on a uniform grid (CSV)
    validate   analytic-vs-direct-solver comparison table

Parameters come from flags or a flat key=value config file (--config); flags
override the file.  Exactly one parameterization must be given: either the
transport triple (--omega-tau, --Q, --alpha) or the plasma triple (--gamma,
--eps, --vtc).

Output: JSON carries every float with 17 significant digits and no NaN/Inf;
CSV uses RFC-4180 quoting with complex quantities split into paired
re_*/im_* columns.  Column orders are fixed as documented in each
subcommand's help text.

Exit codes: 0 success, 1 argument/domain errors, 2 numerical errors,
3 validation failures.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys

import numpy as np

from .errors import ParameterDomainError, SkinfxError
from .oracle import default_config, solve_bvp
from .params import KineticParams, PhysicalParams, from_plasma, from_transport
from .solution import build_solution, efield_profile, impedance, local_limit_impedance
from .spectrum import classify_delta, find_discrete_zeros, index_kappa, l_curve, lambda_curve
from .dispersion import build_branch_table

__all__ = ["main"]


# -- serialization -----------------------------------------------------------

def _fmt(x: float) -> str:
    if not math.isfinite(x):
        raise SkinfxError(f"non-finite value {x!r} in output")
    return f"{x:.17g}"


def _to_json(obj, indent=0) -> str:
    """JSON with floats at 17 significant digits (ints and strings as-is)."""
    pad = "  " * indent
    pad1 = "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f'{pad1}"{k}": {_to_json(v, indent + 1)}' for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [pad1 + _to_json(v, indent + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt(float(obj))
    if isinstance(obj, str):
        return '"' + obj.replace("\\", "\\\\").replace('"', '\\"') + '"'
    raise TypeError(f"cannot serialize {type(obj)!r}")


def _cplx(z: complex) -> dict:
    return {"re": float(z.real), "im": float(z.imag)}


def _write_out(text: str, out: str | None):
    if out:
        with open(out, "w", newline="") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, quoting=csv.QUOTE_MINIMAL)
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) if isinstance(v, (float, np.floating)) else v
                    for v in row])
    return buf.getvalue()


# -- parameter plumbing ------------------------------------------------------

_CONFIG_KEYS = {
    "omega-tau": float, "Q": float, "alpha": float,
    "gamma": float, "eps": float, "vtc": float, "vc": float,
    "which": str, "grid": int, "xmax": float, "points": int,
    "format": str, "out": str, "tol": float,
}


def _read_config(path: str) -> dict:
    values = {}
    with open(path) as f:
        for lineno, raw in enumerate(f, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ParameterDomainError(
                    f"{path}:{lineno}: expected key=value, got {line!r}"
                )
            key, _, val = line.partition("=")
            key = key.strip()
            if key not in _CONFIG_KEYS:
                raise ParameterDomainError(f"{path}:{lineno}: unknown key {key!r}")
            values[key] = _CONFIG_KEYS[key](val.strip())
    return values


def _merged(args, key, default=None):
    """Flag value if given, else config-file value, else default."""
    attr = key.replace("-", "_")
    val = getattr(args, attr, None)
    if val is not None:
        return val
    if args._config and key in args._config:
        return args._config[key]
    return default


def _params_from(args) -> KineticParams:
    transport = [_merged(args, k) for k in ("omega-tau", "Q", "alpha")]
    plasma = [_merged(args, k) for k in ("gamma", "eps", "vtc")]
    have_t = all(v is not None for v in transport)
    have_p = all(v is not None for v in plasma)
    some_t = any(v is not None for v in transport)
    some_p = any(v is not None for v in plasma)
    if have_t and not some_p:
        return from_transport(*transport)
    if have_p and not some_t:
        return from_plasma(PhysicalParams(*plasma))
    raise ParameterDomainError(
        "give exactly one full parameterization: either --omega-tau/--Q/--alpha "
        "or --gamma/--eps/--vtc"
    )


# -- subcommands -------------------------------------------------------------

def _cmd_impedance(args) -> int:
    kp = _params_from(args)
    rep = impedance(kp)
    payload = {
        "omega_tau": kp.omega_tau, "Q": kp.Q, "alpha": kp.alpha,
        "kappa": rep.kappa,
        "Z": _cplx(rep.Z),
        "e_prime_0": _cplx(rep.e_prime_0),
        "x_logderiv_0": _cplx(rep.logderiv),
        "zeros": [_cplx(z) for z in rep.zeros],
    }
    _write_out(_to_json(payload) + "\n", _merged(args, "out"))
    return 0


def _cmd_spectrum(args) -> int:
    kp = _params_from(args)
    table = build_branch_table(kp)
    kappa = index_kappa(kp, table)
    spec = find_discrete_zeros(kp, kappa)
    dom = classify_delta(kp)
    payload = {
        "omega_tau": kp.omega_tau, "Q": kp.Q, "alpha": kp.alpha,
        "kappa": spec.kappa,
        "n_zeros": spec.n_zeros,
        "zeros": [_cplx(z) for z in spec.zeros],
        "residuals": list(spec.residuals),
        "delta": _cplx(kp.delta),
        "domain": dom.label,
        "domain_distance": dom.distance,
    }
    _write_out(_to_json(payload) + "\n", _merged(args, "out"))
    return 0


def _cmd_domain(args) -> int:
    vc = _merged(args, "vc")
    if vc is None:
        raise ParameterDomainError("domain sweep requires --vc")
    n = int(_merged(args, "grid", 20))
    if n < 2:
        raise ParameterDomainError("--grid must be >= 2")
    # sweep box scaled to the boundary curve's extent in the (gamma, eps) plane
    curve = l_curve(float(vc), 200)
    gmax = 1.5 * float(curve.coords[:, 0].max())
    emax = 1.5 * float(curve.coords[:, 1].max())
    vtc = float(vc) / math.sqrt(math.pi / 4.0)
    rows = []
    for gam in np.linspace(gmax / n, gmax, n):
        for eps in np.linspace(emax / n, emax, n):
            kp = from_plasma(PhysicalParams(float(gam), float(eps), vtc))
            dom = classify_delta(kp)
            try:
                kap = str(index_kappa(kp))
            except SkinfxError:
                kap = ""  # too close to the spectral boundary
            rows.append([float(gam), float(eps), dom.label, kap])
    _write_out(_csv_text(["gamma", "eps", "class", "kappa"], rows),
               _merged(args, "out"))
    return 0


def _cmd_curves(args) -> int:
    which = _merged(args, "which")
    n = int(_merged(args, "points", 400))
    if which == "lambda":
        cp = lambda_curve(n)
        rows = [[float(m), int(b), float(c[0]), float(c[1])]
                for m, b, c in zip(cp.mu, cp.branch, cp.coords)]
        text = _csv_text(["mu", "branch", "delta1", "delta2"], rows)
    elif which == "L":
        vc = _merged(args, "vc")
        if vc is None:
            raise ParameterDomainError("curves --which L requires --vc")
        cp = l_curve(float(vc), n)
        rows = [[float(m), float(c[0]), float(c[1])]
                for m, c in zip(cp.mu, cp.coords)]
        text = _csv_text(["mu", "gamma", "eps"], rows)
    else:
        raise ParameterDomainError("--which must be 'lambda' or 'L'")
    _write_out(text, _merged(args, "out"))
    return 0


def _cmd_profile(args) -> int:
    kp = _params_from(args)
    x_max = float(_merged(args, "xmax", 10.0))
    n = int(_merged(args, "points", 200))
    if n < 2:
        raise ParameterDomainError("--points must be >= 2")
    grid = np.linspace(0.0, x_max, n)
    table = efield_profile(kp, grid)
    rows = [[float(x), float(e.real), float(e.imag)]
            for x, e in zip(table.x, table.e)]
    _write_out(_csv_text(["x", "re_e", "im_e"], rows), _merged(args, "out"))
    return 0


_VALIDATE_POINTS = [
    (0.1, 1e-3, 0.1),   # index 0
    (0.5, 1e-3, 1.0),   # index 1
    (1.0, 1e-3, 10.0),  # index 1, strongly anomalous
]


def _cmd_validate(args) -> int:
    tol = float(_merged(args, "tol", 0.005))
    lines = []
    ok = True
    for (wt, q, al) in _VALIDATE_POINTS:
        kp = from_transport(wt, q, al)
        za = impedance(kp).Z
        zo = solve_bvp(kp, default_config(kp)).Z
        rel = abs(za - zo) / abs(zo)
        good = rel < tol
        ok &= good
        lines.append(
            f"{'PASS' if good else 'FAIL'}  omega_tau={wt} Q={q} alpha={al}  "
            f"analytic-vs-direct rel={rel:.3e} (tol {tol:g})"
        )
    kp = from_transport(0.5, 1e-3, 1e-3)
    zl = local_limit_impedance(kp)
    za = impedance(kp).Z
    rel = abs(za - zl) / abs(zl)
    good = rel < 0.01
    ok &= good
    lines.append(
        f"{'PASS' if good else 'FAIL'}  omega_tau=0.5 Q=0.001 alpha=0.001  "
        f"analytic-vs-local-limit rel={rel:.3e} (tol 0.01)"
    )
    text = "\n".join(lines) + "\n"
    _write_out(text, _merged(args, "out"))
    return 0 if ok else 3


# -- argument parsing --------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_param_flags(p):
    p.add_argument("--omega-tau", type=float, help="omega*tau (transport triple)")
    p.add_argument("--Q", type=float, help="omega*l/c (transport triple)")
    p.add_argument("--alpha", type=float, help="anomaly parameter (transport triple)")
    p.add_argument("--gamma", type=float, help="omega/omega_p (plasma triple)")
    p.add_argument("--eps", type=float, help="nu/omega_p (plasma triple)")
    p.add_argument("--vtc", type=float, help="v_T/c (plasma triple)")


def _add_common(p):
    p.add_argument("--config", help="flat key=value file; flags override it")
    p.add_argument("--format", choices=["json", "csv"], help="output format")
    p.add_argument("--out", help="output path (default: stdout)")


def _build_parser() -> _Parser:
    parser = _Parser(prog="skinfx",
                     description="Half-space skin-effect solver "
                                 "(exact analytic solution + direct kinetic solver)")
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("impedance", parents=[], help="surface impedance (JSON)",
                       description="JSON fields: omega_tau, Q, alpha, kappa, "
                                   "Z{re,im}, e_prime_0{re,im}, "
                                   "x_logderiv_0{re,im}, zeros[{re,im}]")
    _add_param_flags(p); _add_common(p)
    p.set_defaults(func=_cmd_impedance)

    p = sub.add_parser("spectrum", help="index and discrete zeros (JSON)",
                       description="JSON fields: omega_tau, Q, alpha, kappa, "
                                   "n_zeros, zeros[{re,im}], residuals, "
                                   "delta{re,im}, domain, domain_distance")
    _add_param_flags(p); _add_common(p)
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("domain", help="(gamma, eps) class sweep (CSV)",
                       description="CSV columns: gamma, eps, class, kappa; "
                                   "kappa blank where the point is too close "
                                   "to the boundary curve")
    p.add_argument("--vc", type=float, help="thermal-velocity scale v_c")
    p.add_argument("--grid", type=int, help="grid size per axis (default 20)")
    _add_common(p)
    p.set_defaults(func=_cmd_domain)

    p = sub.add_parser("curves", help="boundary curves (CSV)",
                       description="--which lambda: CSV columns mu, branch, "
                                   "delta1, delta2; --which L: CSV columns "
                                   "mu, gamma, eps")
    p.add_argument("--which", choices=["lambda", "L"])
    p.add_argument("--vc", type=float, help="v_c for --which L")
    p.add_argument("--points", type=int, help="points per branch (default 400)")
    _add_common(p)
    p.set_defaults(func=_cmd_curves)

    p = sub.add_parser("profile", help="field profile e(x) (CSV)",
                       description="CSV columns: x, re_e, im_e")
    _add_param_flags(p)
    p.add_argument("--xmax", type=float, help="domain length (default 10)")
    p.add_argument("--points", type=int, help="grid points (default 200)")
    _add_common(p)
    p.set_defaults(func=_cmd_profile)

    p = sub.add_parser("validate", help="analytic-vs-direct comparison table",
                       description="exit 0 if every row passes, 3 otherwise")
    p.add_argument("--tol", type=float,
                   help="relative tolerance for the comparison (default 0.005)")
    _add_common(p)
    p.set_defaults(func=_cmd_validate)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        args._config = _read_config(args.config) if getattr(args, "config", None) else {}
        return args.func(args)
    except ParameterDomainError as exc:
        print(f"skinfx: argument error: {exc}", file=sys.stderr)
        return 1
    except SkinfxError as exc:
        print(f"skinfx: numerical error ({type(exc).__name__}): {exc}",
              file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
