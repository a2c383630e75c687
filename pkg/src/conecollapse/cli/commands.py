"""Subcommand implementations. Each returns the list of files it wrote."""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from conecollapse.classical import PRESETS as CLASSICAL_PRESETS
from conecollapse.classical import ClassicalParams, classify, integrate, potential_profile, turning_point
from conecollapse.cli.config import RunConfig
from conecollapse.cli.output import write_csv, write_svg
from conecollapse.cone import ConeGeometry, GrapheneMapping, dirac_dispersion, observation_radius
from conecollapse.ldos import (
    average_ldos,
    find_extrema,
    ldos_asymptotic_large_e,
    ldos_grid,
    log_energies,
)
from conecollapse.specfun import DEFAULT_POLICY, k_inu, small_x_forms
from conecollapse.states import (
    ZpieForm,
    bound_mean_radius,
    bound_spectrum,
    bound_turning_radius,
    bound_wavefunction,
    collapse_state,
    plane_state,
    scattering_large_e_density,
    scattering_state,
)

FIG4_ALPHAS = (0.99, 0.01, 5.0 / 6.0, 4.0 / 6.0, 3.0 / 6.0)
FIG5_R_COLLAPSE = (3.0, 5.0, 10.0)
FIG5_R_CONV = (3.0, 5.0)
FIG6_ALPHAS = (2.0 / 6.0, 3.0 / 6.0, 4.0 / 6.0, 5.0 / 6.0)
FIG6C_ALPHAS = (0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)
NEAR_ZERO_TOP = 1e-4
NEAR_ZERO_PERIODS = 3


def _geom(cfg: RunConfig, alpha: float | None = None) -> ConeGeometry:
    return ConeGeometry(cfg.alpha if alpha is None else alpha, cfg.rho0, cfg.E0, cfg.M)


def _dir(cfg: RunConfig, default: str) -> Path:
    return Path(cfg.out_dir) / (cfg.preset or default)


def _meta(cfg: RunConfig, **extra) -> dict:
    m = {f"config.{k}": v for k, v in cfg.echo().items()}
    m["policy.rel_tol"] = DEFAULT_POLICY.rel_tol
    m["policy.asymptotic_switch"] = "auto" if DEFAULT_POLICY.asymptotic_switch_x is None else DEFAULT_POLICY.asymptotic_switch_x
    m.update(extra)
    return m


def _svg(cfg: RunConfig, path: Path, series, **kw) -> list[Path]:
    if cfg.format != "csv+svg":
        return []
    return [write_svg(path.with_suffix(".svg"), series, **kw)]


def near_zero_window(tilde_alpha: float, periods: int = NEAR_ZERO_PERIODS, top: float = NEAR_ZERO_TOP):
    """Energy window below ``top`` holding ``periods`` log-periods of the collapse oscillation."""
    return top * math.exp(-2.0 * periods * math.pi / tilde_alpha), top


def plane_ldos(epsilon: float, rs, l_max: int) -> tuple[np.ndarray, np.ndarray]:
    """(all channels, |l| >= 1 channels) for the flat plane with a hard hole of radius 1."""
    rs = np.atleast_1d(np.asarray(rs, dtype=float))
    l0 = plane_state(0, epsilon).psi(rs) ** 2
    rest = np.zeros_like(rs)
    for l in range(1, l_max + 1):
        rest += 2.0 * plane_state(l, epsilon).psi(rs) ** 2
    return l0 + rest, rest


# ------------------------------------------------------------------ bound-spectrum

def cmd_bound_spectrum(cfg: RunConfig) -> list[Path]:
    geom = _geom(cfg)
    at = geom.tilde_alpha
    out = _dir(cfg, "bound-spectrum")
    rows = bound_spectrum(geom, cfg.n_from, cfg.n_to)
    law = math.exp(-2.0 * math.pi / at)
    table = []
    for i, (n, ex, ap) in enumerate(rows):
        nxt = rows[i + 1][1] / ex if i + 1 < len(rows) else float("nan")
        table.append((n, ex, ap, ap / ex, nxt))
    files = [
        write_csv(
            out / "spectrum.csv",
            ["n", "eps_exact", "eps_approx", "approx_over_exact", "ratio_next"],
            table,
            _meta(cfg, tilde_alpha=at, ratio_law=law),
        )
    ]

    # K curve against x = sqrt(-eps) with the sin-log and exponential asymptotes.
    x_last = math.sqrt(-rows[-1][1])
    xs = log_energies(min(1e-3, 0.5 * x_last), 10.0, cfg.points_per_decade)
    curve = []
    for x in xs:
        k = k_inu(at, float(x))
        small = small_x_forms(at, float(x))["K"]
        large = math.sqrt(math.pi / (2.0 * x)) * math.exp(-x)
        curve.append((x, k, small, large))
    path = write_csv(out / "kinu_curve.csv", ["x", "K", "small_x_form", "large_x_form"], curve,
                     _meta(cfg, tilde_alpha=at))
    files.append(path)
    c = np.array(curve)
    files += _svg(cfg, path, [("K", c[:, 0], c[:, 1]), ("small x", c[:, 0], c[:, 2]),
                              ("large x", c[:, 0], c[:, 3])],
                  title=f"K_i{at:.4g}(x)", xlabel="x = sqrt(-eps)", ylabel="K", logx=True)

    # Ground state in its well.
    e1 = rows[0][1]
    r_turn = bound_turning_radius(geom, e1)
    r_mean = bound_mean_radius(geom, e1)
    r_hi = max(10.0, 5.0 * r_turn)
    rs = np.linspace(1.0, r_hi, 200)
    psi = bound_wavefunction(geom, e1, rs, normalized=True)
    well = -at * at / rs ** 2
    path = write_csv(
        out / "ground_state.csv", ["r", "psi", "potential", "energy"],
        [(r, p, u, e1) for r, p, u in zip(rs, psi, well)],
        _meta(cfg, eps_1=e1, mean_radius=r_mean, turning_radius=r_turn, well_depth=-at * at),
    )
    files.append(path)
    files += _svg(cfg, path, [("psi", rs, psi), ("U", rs, well), ("eps_1", rs, np.full_like(rs, e1))],
                  title="ground state", xlabel="r", ylabel="")
    return files


# ------------------------------------------------------------------ ldos

def _ldos_scan(cfg, geom, eps, rs):
    return ldos_grid(geom, eps, rs, cfg.lmax, cfg.paper_y_cutoff, workers=cfg.threads)


def cmd_ldos(cfg: RunConfig) -> list[Path]:
    handler = {
        None: _ldos_plain,
        "fig3": _ldos_fig3,
        "fig4": _ldos_fig4,
        "fig5": _ldos_fig5,
        "fig6": _ldos_fig6,
    }[cfg.preset]
    return handler(cfg)


def _ldos_plain(cfg: RunConfig) -> list[Path]:
    geom = _geom(cfg)
    eps = log_energies(cfg.eps_min, cfg.eps_max, cfg.points_per_decade)
    grid = _ldos_scan(cfg, geom, eps, [cfg.r])
    rows = []
    for i, e in enumerate(eps):
        base, conv = ldos_asymptotic_large_e(geom, float(e), cfg.r, cfg.lmax)
        rows.append((e, grid.values_total[i, 0], grid.values_l0[i, 0], grid.values_lneq0[i, 0], base, conv))
    path = write_csv(
        _dir(cfg, "ldos") / "ldos.csv",
        ["eps", "total", "collapse", "conventional", "collapse_asymptote", "conventional_asymptote"],
        rows, _meta(cfg, tilde_alpha=geom.tilde_alpha, mean_level_near_zero=average_ldos(geom, cfg.r)),
    )
    a = np.array(rows)
    return [path] + _svg(cfg, path, [("total", a[:, 0], a[:, 1]), ("l=0", a[:, 0], a[:, 2]),
                                     ("l!=0", a[:, 0], a[:, 3])],
                         title=f"LDOS alpha={cfg.alpha:.4g} r={cfg.r:g}", xlabel="eps", ylabel="N", logx=True)


def _ldos_fig3(cfg: RunConfig) -> list[Path]:
    geom = _geom(cfg)
    eps = cfg.eps_max
    k = math.sqrt(eps)
    rs = np.linspace(1.0, 1.0 + 60.0 / k, 400)
    col = collapse_state(geom, eps)
    sc = scattering_state(geom, 1, eps, cfg.paper_y_cutoff)
    psi_c = col.psi(rs)
    psi_s = sc.psi(rs)
    env = np.sqrt(2.0 / (np.pi * k * rs))
    path = write_csv(
        _dir(cfg, "fig3") / "states.csv",
        ["r", "psi_collapse", "psi_conventional_l1", "envelope"],
        zip(rs, psi_c, psi_s, env),
        _meta(cfg, eps=eps, collapse_A=col.A, collapse_B=col.B, conventional_A=sc.A, conventional_B=sc.B),
    )
    return [path] + _svg(cfg, path, [("l=0", rs, psi_c), ("l=1", rs, psi_s), ("+env", rs, env), ("-env", rs, -env)],
                         title=f"states at eps={eps:g}", xlabel="r", ylabel="psi")


def _near_zero_rows(cfg, geom, r, periods=NEAR_ZERO_PERIODS):
    lo, hi = near_zero_window(geom.tilde_alpha, periods)
    eps = log_energies(lo, hi, cfg.points_per_decade)
    grid = _ldos_scan(cfg, geom, eps, [r])
    return eps, grid.values_total[:, 0], grid.values_l0[:, 0]


def _ldos_fig4(cfg: RunConfig) -> list[Path]:
    out = _dir(cfg, "fig4")
    eps = log_energies(cfg.eps_min, cfg.eps_max, cfg.points_per_decade)
    r = cfg.r
    main, inset = [], []
    series = []
    for a in FIG4_ALPHAS:
        geom = _geom(cfg, a)
        g = _ldos_scan(cfg, geom, eps, [r])
        main += [(a, e, t, c, n) for e, t, c, n in zip(eps, g.values_total[:, 0], g.values_l0[:, 0], g.values_lneq0[:, 0])]
        series.append((f"alpha={a:.3g}", eps, g.values_total[:, 0]))
        if 0.1 < a < 0.9:
            ez, tot, l0 = _near_zero_rows(cfg, geom, r)
            inset += [(a, e, t, c) for e, t, c in zip(ez, tot, l0)]
    plane = [plane_ldos(float(e), [r], cfg.lmax)[0][0] for e in eps]
    main += [(1.0, e, t, float("nan"), float("nan")) for e, t in zip(eps, plane)]
    series.append(("alpha=1", eps, np.array(plane)))
    files = [write_csv(out / "total_ldos.csv", ["alpha", "eps", "total", "collapse", "conventional"], main, _meta(cfg))]
    files += _svg(cfg, files[0], series, title=f"total LDOS r={r:g}", xlabel="eps", ylabel="N", logx=True)

    files.append(write_csv(out / "near_zero.csv", ["alpha", "eps", "total", "collapse"], inset,
                           _meta(cfg, periods=NEAR_ZERO_PERIODS, window_top=NEAR_ZERO_TOP)))

    # Small-energy view for the extreme cones.
    small = []
    ez = log_energies(1e-8, cfg.eps_min, cfg.points_per_decade)
    for a in (0.99, 0.01):
        g = _ldos_scan(cfg, _geom(cfg, a), ez, [r])
        small += [(a, e, t) for e, t in zip(ez, g.values_total[:, 0])]
    files.append(write_csv(out / "small_energy.csv", ["alpha", "eps", "total"], small, _meta(cfg)))

    # High-energy decay of the alpha=1 reference against N_l (2/(pi k r)) sin^2.
    eh = log_energies(cfg.eps_max, 100.0 * cfg.eps_max, cfg.points_per_decade)
    high = []
    for e in eh:
        tot = plane_ldos(float(e), [r], cfg.lmax)[0][0]
        asym = (2 * cfg.lmax + 1) * scattering_large_e_density(float(e), r)
        high.append((e, tot, asym))
    files.append(write_csv(out / "plane_high_energy.csv", ["eps", "total", "asymptote"], high,
                           _meta(cfg, channels=2 * cfg.lmax + 1)))
    return files


def _amplitude_projection(u, y):
    ext = find_extrema(u, y)
    vals = np.concatenate([y, [e[1] for e in ext]]) if ext else y
    return 0.5 * (float(vals.max()) - float(vals.min())), 0.5 * (float(vals.max()) + float(vals.min()))


def _ldos_fig5(cfg: RunConfig) -> list[Path]:
    out = _dir(cfg, "fig5")
    geom = _geom(cfg)
    at = geom.tilde_alpha
    eps = log_energies(cfg.eps_min, cfg.eps_max, cfg.points_per_decade)
    radii = sorted(set(FIG5_R_COLLAPSE) | set(FIG5_R_CONV))
    g = _ldos_scan(cfg, geom, eps, radii)
    col_rows, conv_rows = [], []
    for j, r in enumerate(radii):
        for i, e in enumerate(eps):
            base, conv = ldos_asymptotic_large_e(geom, float(e), r, cfg.lmax)
            if r in FIG5_R_COLLAPSE:
                col_rows.append((r, e, g.values_l0[i, j], base))
            if r in FIG5_R_CONV:
                conv_rows.append((r, e, g.values_lneq0[i, j], conv))
    files = [
        write_csv(out / "collapse_part.csv", ["r", "eps", "collapse", "asymptote"], col_rows, _meta(cfg)),
        write_csv(out / "conventional_part.csv", ["r", "eps", "conventional", "asymptote"], conv_rows, _meta(cfg)),
    ]
    c = np.array(col_rows)
    files += _svg(cfg, files[0], [(f"r={r:g}", c[c[:, 0] == r, 1], c[c[:, 0] == r, 2]) for r in FIG5_R_COLLAPSE],
                  title="collapse part", xlabel="eps", ylabel="N", logx=True)

    # High-energy inset at r = 3.
    eh = log_energies(cfg.eps_max, 100.0 * cfg.eps_max, cfg.points_per_decade)
    gh = _ldos_scan(cfg, geom, eh, [3.0])
    high = [(e, v, ldos_asymptotic_large_e(geom, float(e), 3.0, cfg.lmax)[1])
            for e, v in zip(eh, gh.values_lneq0[:, 0])]
    files.append(write_csv(out / "conventional_high_energy.csv", ["eps", "conventional", "asymptote"], high,
                           _meta(cfg, r=3.0, channels=2 * cfg.lmax)))

    # Near-zero (eps, r) surface with the per-r amplitude projection.
    lo, hi = near_zero_window(at)
    ez = log_energies(lo, hi, cfg.points_per_decade)
    rs = np.linspace(1.5, 20.0, 16)
    gz = _ldos_scan(cfg, geom, ez, rs)
    surface = [(r, e, gz.values_total[i, j]) for j, r in enumerate(rs) for i, e in enumerate(ez)]
    files.append(write_csv(out / "near_zero_surface.csv", ["r", "eps", "total"], surface,
                           _meta(cfg, periods=NEAR_ZERO_PERIODS, window_low=lo, window_top=hi)))
    z = ZpieForm(at)
    amp_scale = 0.5 * (1.0 / (z.B - z.C) - 1.0 / z.B) * z.A ** 2
    u = 0.5 * np.log(ez)
    proj = []
    for j, r in enumerate(rs):
        amp, mean = _amplitude_projection(u, gz.values_total[:, j])
        s2 = math.sin(at * math.log(r)) ** 2
        proj.append((r, amp, amp_scale * s2, mean, float(average_ldos(geom, r))))
    path = write_csv(out / "amplitude_projection.csv",
                     ["r", "amplitude", "amplitude_closed_form", "mean_level", "mean_level_closed_form"],
                     proj, _meta(cfg, amplitude_scale=amp_scale))
    files.append(path)
    p = np.array(proj)
    files += _svg(cfg, path, [("numeric", p[:, 0], p[:, 1]), ("closed form", p[:, 0], p[:, 2])],
                  title="near-zero amplitude vs r", xlabel="r", ylabel="amplitude")
    return files


def _ldos_fig6(cfg: RunConfig) -> list[Path]:
    out = _dir(cfg, "fig6")
    r = cfg.r
    eps = log_energies(cfg.eps_min, cfg.eps_max, cfg.points_per_decade)
    col_rows, conv_rows = [], []
    for a in FIG6_ALPHAS:
        geom = _geom(cfg, a)
        g = _ldos_scan(cfg, geom, eps, [r])
        for i, e in enumerate(eps):
            base, _ = ldos_asymptotic_large_e(geom, float(e), r, cfg.lmax)
            col_rows.append((a, e, g.values_l0[i, 0], base))
            conv_rows.append((a, e, g.values_lneq0[i, 0]))
    conv_rows += [(1.0, e, plane_ldos(float(e), [r], cfg.lmax)[1][0]) for e in eps]
    files = [
        write_csv(out / "collapse_part.csv", ["alpha", "eps", "collapse", "asymptote"], col_rows, _meta(cfg)),
        write_csv(out / "conventional_part.csv", ["alpha", "eps", "conventional"], conv_rows,
                  _meta(cfg, plane_reference_alpha=1.0)),
    ]
    c = np.array(conv_rows)
    files += _svg(cfg, files[1], [(f"alpha={a:.3g}", c[c[:, 0] == a, 1], c[c[:, 0] == a, 2])
                                  for a in (*FIG6_ALPHAS, 1.0)],
                  title=f"conventional part r={r:g}", xlabel="eps", ylabel="N", logx=True)

    surface, mean_rows = [], []
    for a in FIG6C_ALPHAS:
        geom = _geom(cfg, a)
        ez, tot, l0 = _near_zero_rows(cfg, geom, r)
        surface += [(a, e, v) for e, v in zip(ez, l0)]
        amp, mean = _amplitude_projection(0.5 * np.log(ez), tot)
        closed = float(average_ldos(geom, r))
        mean_rows.append((a, mean, closed, mean / closed - 1.0 if closed else float("nan")))
    files.append(write_csv(out / "near_zero_surface.csv", ["alpha", "eps", "collapse"], surface,
                           _meta(cfg, periods=NEAR_ZERO_PERIODS, window_top=NEAR_ZERO_TOP)))
    path = write_csv(out / "mean_level.csv", ["alpha", "mean_numeric", "mean_closed_form", "rel_dev"], mean_rows,
                     _meta(cfg))
    files.append(path)
    m = np.array(mean_rows)
    files += _svg(cfg, path, [("numeric", m[:, 0], m[:, 1]), ("closed form", m[:, 0], m[:, 2])],
                  title=f"mean near-zero LDOS r={r:g}", xlabel="alpha", ylabel="N bar")
    return files


# ------------------------------------------------------------------ classical

EVENT_NAMES = {0: "sample", 1: "wall", 2: "turn", 3: "escape"}


def run_classical(params: ClassicalParams, initial, t_end: float, dt: float):
    traj = integrate(params, initial, t_end, dt)
    label = classify(traj, params)
    return traj, label


def cmd_classical(cfg: RunConfig, regimes=None, overrides=None) -> list[Path]:
    """Regimes default to all three presets; ``overrides`` replaces physics of a single run."""
    out = _dir(cfg, "classical")
    files: list[Path] = []
    runs = []
    if overrides is not None:
        params, initial, t_end, dt = overrides
        runs.append(("custom", params, initial, t_end, dt))
    else:
        for name in regimes or ("bound", "collapse", "scatter"):
            params, initial, t_end = CLASSICAL_PRESETS[name]
            runs.append((name, params, initial, t_end, 0.05 if name == "bound" else 0.5))
    for name, params, initial, t_end, dt in runs:
        traj, label = run_classical(params, initial, t_end, dt)
        star = turning_point(params)
        rho_hi = max(float(traj.rho.max()), 2.0 * (star or params.rho0))
        rr = np.linspace(params.rho0, min(rho_hi, 20.0 * params.rho0), 200)
        meta = {
            "label": label.value,
            "alpha": params.alpha, "L_z": params.L_z, "L_eff": params.L_eff, "E": params.E, "M": params.M,
            "rho0": params.rho0, "coupling": params.coupling,
            "turning_point": "none" if star is None else star,
            "reflections": len(traj.reflections), "escaped": str(traj.escaped),
            "t_end": t_end, "dt": dt,
        }
        files.append(write_csv(out / f"{name}_potential.csv", ["rho", "U"], zip(rr, potential_profile(params, rr)), meta))
        h = traj.energy(params)
        drift = np.abs(h - h[0]) / abs(h[0])
        x = traj.rho * np.cos(traj.phi)
        y = traj.rho * np.sin(traj.phi)
        path = write_csv(
            out / f"{name}_trajectory.csv",
            ["t", "rho", "phi", "p_rho", "event", "x", "y", "energy_drift"],
            zip(traj.t, traj.rho, traj.phi, traj.p_rho, traj.event.astype(int), x, y, drift),
            dict(meta, max_energy_drift=float(drift.max()), event_codes="0=sample 1=wall 2=turn 3=escape"),
        )
        files.append(path)
        files += _svg(cfg, path, [(label.value, x, y)], title=f"{name} trajectory", xlabel="x", ylabel="y")
    return files


# ------------------------------------------------------------------ feasibility

def cmd_feasibility(cfg: RunConfig, mapping: GrapheneMapping | None = None) -> list[Path]:
    out = _dir(cfg, "feasibility")
    mapping = mapping or GrapheneMapping()
    geom = _geom(cfg)
    r_obs = observation_radius(geom)
    eps = log_energies(cfg.eps_min, cfg.eps_max, cfg.points_per_decade)
    g = _ldos_scan(cfg, geom, eps, [r_obs])
    z = ZpieForm(geom.tilde_alpha)
    mean = float(average_ldos(geom, r_obs))
    rows = []
    for i, e in enumerate(eps):
        base, _ = ldos_asymptotic_large_e(geom, float(e), r_obs, cfg.lmax)
        rows.append((e, g.values_total[i, 0], g.values_l0[i, 0], g.values_lneq0[i, 0],
                     float(z.density(float(e), r_obs)), mean, base))
    files = [write_csv(
        out / "ldos_observation_radius.csv",
        ["eps", "total", "collapse", "conventional", "near_zero_form", "mean_level", "large_e_form"],
        rows, _meta(cfg, r_observation=r_obs),
    )]
    a = np.array(rows)
    files += _svg(cfg, files[0], [("total", a[:, 0], a[:, 1]), ("l=0", a[:, 0], a[:, 2]),
                                  ("near-zero form", a[:, 0], a[:, 4])],
                  title=f"LDOS at r*={r_obs:.3g}", xlabel="eps", ylabel="N", logx=True)

    kt = np.linspace(0.0, 0.5, 101)
    dirac, delta = dirac_dispersion(mapping, kt)
    gap = mapping.gap_tilde
    files.append(write_csv(out / "dispersion.csv", ["k_tilde", "dirac", "schrodinger"],
                           zip(kt, dirac, gap + delta), _meta(cfg, gap_tilde=gap)))

    xi0 = mapping.xi0_nm
    table = [
        ("gap_eV", mapping.gap),
        ("energy_unit_eV", mapping.energy_unit),
        ("fermi_velocity_m_per_s", mapping.fermi_velocity),
        ("gap_tilde", gap),
        ("xi0_nm", xi0),
        ("observation_radius", r_obs),
        ("observation_rho_nm", r_obs * xi0),
        ("delta_eps_low", cfg.eps_min),
        ("delta_eps_high", cfg.eps_max),
        ("k_tilde_low", mapping.k_tilde(cfg.eps_min)),
        ("k_tilde_high", mapping.k_tilde(cfg.eps_max)),
        ("window_low_ueV", mapping.energy_window_ueV(cfg.eps_min)),
        ("window_high_ueV", mapping.energy_window_ueV(cfg.eps_max)),
    ]
    files.append(write_csv(out / "mapping.csv", ["quantity", "value"], table, _meta(cfg)))
    return files
