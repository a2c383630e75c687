"""Command-line harness: ``conecollapse <subcommand> [flags]``.

Exit codes: 0 ok, 2 configuration or domain error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import sys

from conecollapse import __version__
from conecollapse.classical import ClassicalParams
from conecollapse.cli.config import ConfigError, RunConfig, build_config, resolve_threads
from conecollapse.cli.presets import PRESETS, manifest_text, presets_for
from conecollapse.errors import ConeCollapseError, DomainError

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3

SPECFUN_NAMES = ("J", "Y", "I", "K", "F", "G", "Kinu", "Linu")


def _common(p: argparse.ArgumentParser, subcommand: str) -> None:
    p.add_argument("--config", metavar="FILE", help="INI file; keys from [common] and [%s]" % subcommand)
    names = presets_for(subcommand)
    if names:
        p.add_argument("--preset", choices=names, help="regenerate one figure")
    p.add_argument("--alpha", type=float, help="sector fraction in (0, 1)")
    p.add_argument("--rho0", type=float, help="truncation radius in angstrom (default: closure value)")
    p.add_argument("--r", type=float, help="dimensionless distance r >= 1")
    p.add_argument("--eps-min", type=float)
    p.add_argument("--eps-max", type=float)
    p.add_argument("--points-per-decade", type=int)
    p.add_argument("--lmax", type=int)
    p.add_argument("--paper-y-cutoff", action="store_true", default=None,
                   help="clamp |Y| at 100 in the conventional channels")
    p.add_argument("--threads", type=int, help="worker processes (fallback: CONECOLLAPSE_THREADS)")
    p.add_argument("--out-dir")
    p.add_argument("--format", choices=("csv", "csv+svg"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="conecollapse", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(
        dest="command", required=True, metavar="{bound-spectrum,ldos,classical,feasibility,manifest}"
    )

    p = sub.add_parser("bound-spectrum", help="bound levels and the K_{i alpha~} curve")
    _common(p, "bound-spectrum")
    p.add_argument("--n-from", type=int)
    p.add_argument("--n-to", type=int)

    p = sub.add_parser("ldos", help="local density of states scans")
    _common(p, "ldos")

    p = sub.add_parser("classical", help="classical trajectories and regime labels")
    _common(p, "classical")
    p.add_argument("--regime", choices=("bound", "collapse", "scatter"), action="append",
                   help="built-in regime (repeatable; default all three)")
    p.add_argument("--Lz", type=float, help="custom run: angular momentum L_z")
    p.add_argument("--Leff", type=float, help="custom run: effective angular momentum")
    p.add_argument("--E", type=float, help="custom run: energy")
    p.add_argument("--rho-init", type=float, default=5.0)
    p.add_argument("--phi-init", type=float, default=0.0)
    p.add_argument("--t-end", type=float, default=1000.0)
    p.add_argument("--dt", type=float, default=0.5)

    p = sub.add_parser("feasibility", help="graphene mapping and observation window")
    _common(p, "feasibility")
    p.add_argument("--gap", type=float, default=0.1, help="gap in eV")
    p.add_argument("--energy-unit", type=float, default=2.0, help="energy unit in eV")
    p.add_argument("--vf-over-c", type=float, default=1.0 / 300.0)

    p = sub.add_parser("manifest", help="print the figure -> command manifest")

    # Diagnostic only: no help string keeps it out of the top-level listing.
    p = sub.add_parser("specfun")
    ssub = p.add_subparsers(dest="specfun_command", required=True)
    e = ssub.add_parser("eval", help="evaluate one special function")
    e.add_argument("name", help="one of " + ", ".join(SPECFUN_NAMES))
    e.add_argument("nu", type=float)
    e.add_argument("x", type=float)
    return parser


def _flags(ns: argparse.Namespace) -> dict:
    keys = ("alpha", "rho0", "r", "eps_min", "eps_max", "points_per_decade", "lmax", "paper_y_cutoff",
            "out_dir", "format", "preset", "n_from", "n_to")
    flags = {k: getattr(ns, k, None) for k in keys}
    flags["threads"] = resolve_threads(ns.threads)
    return flags


def _config(ns: argparse.Namespace) -> RunConfig:
    preset = PRESETS[ns.preset].overrides if getattr(ns, "preset", None) else None
    return build_config(ns.command, _flags(ns), ns.config, preset)


def specfun_eval(name: str, nu: float, x: float) -> tuple[float, str]:
    from conecollapse import specfun as sf

    if name not in SPECFUN_NAMES:
        raise ConfigError(f"unknown function {name!r}; choose from {', '.join(SPECFUN_NAMES)}")
    if name in ("J", "Y"):
        if x == 0.0 and name == "J":
            return sf.bessel_j(nu, x), "exact"
        jy = sf.bessel_jy_log(nu, x)
        return (jy.j if name == "J" else jy.y), jy.branch
    if name == "I":
        return sf.bessel_i(nu, x), "real"
    if name == "K":
        return sf.bessel_k(nu, x), "real"
    if name in ("F", "G"):
        f, g = sf.fg_inu(nu, x)
        ev = f if name == "F" else g
        return ev.value, ev.branch
    ev = sf.k_inu_eval(nu, x) if name == "Kinu" else sf.l_inu_eval(nu, x)
    return ev.value, ev.branch


def _run(ns: argparse.Namespace) -> int:
    from conecollapse.cli import commands
    from conecollapse.cone import GrapheneMapping

    if ns.command == "manifest":
        sys.stdout.write(manifest_text())
        return EXIT_OK
    if ns.command == "specfun":
        value, branch = specfun_eval(ns.name, ns.nu, ns.x)
        print(f"{value!r} {branch}")
        return EXIT_OK
    cfg = _config(ns)
    if ns.command == "bound-spectrum":
        files = commands.cmd_bound_spectrum(cfg)
    elif ns.command == "ldos":
        files = commands.cmd_ldos(cfg)
    elif ns.command == "classical":
        custom = (ns.Lz, ns.Leff, ns.E)
        if any(v is not None for v in custom):
            if any(v is None for v in custom):
                raise ConfigError("a custom classical run needs --Lz, --Leff and --E")
            params = ClassicalParams(cfg.alpha, ns.Lz, ns.Leff, ns.E)
            files = commands.cmd_classical(
                cfg, overrides=(params, (ns.rho_init, ns.phi_init, None), ns.t_end, ns.dt))
        else:
            files = commands.cmd_classical(cfg, regimes=ns.regime)
    elif ns.command == "feasibility":
        files = commands.cmd_feasibility(cfg, GrapheneMapping(ns.gap, ns.energy_unit, ns.vf_over_c))
    else:  # pragma: no cover - argparse guarantees a known command
        raise ConfigError(f"unknown command {ns.command}")
    for f in files:
        print(f)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_CONFIG
    try:
        return _run(ns)
    except DomainError as exc:
        print(f"conecollapse: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ConeCollapseError, ArithmeticError, OverflowError) as exc:
        print(f"conecollapse: numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


__all__ = ["main", "build_parser", "specfun_eval", "RunConfig", "EXIT_OK", "EXIT_CONFIG", "EXIT_NUMERIC"]
