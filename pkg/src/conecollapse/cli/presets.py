"""Named runs that regenerate each figure; one subcommand + preset per figure."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Preset:
    name: str
    subcommand: str
    figure: str
    summary: str
    overrides: dict = field(default_factory=dict)


PRESETS: dict[str, Preset] = {
    p.name: p
    for p in (
        Preset(
            "fig2", "bound-spectrum", "Fig. 2",
            "bound levels, K_{i alpha~} curve with both asymptotes, ground state in its well",
            {"alpha": 1.0 / 6.0, "n_from": 1, "n_to": 8, "points_per_decade": 32},
        ),
        Preset(
            "fig3", "ldos", "Fig. 3",
            "collapse (l=0) and conventional (l=1) states at eps=eps_max against their far-field envelopes",
            {"alpha": 5.0 / 6.0, "eps_min": 0.5, "eps_max": 1.0},
        ),
        Preset(
            "fig4", "ldos", "Fig. 4",
            "total LDOS at r=10 for alpha in {0.99, 0.01, 5/6, 4/6, 3/6} with the alpha=1 reference "
            "and near-zero insets spanning three collapse periods",
            {"r": 10.0, "eps_min": 1e-3, "eps_max": 10.0, "points_per_decade": 32},
        ),
        Preset(
            "fig5", "ldos", "Fig. 5",
            "alpha=5/6: collapse part at r=3,5,10, conventional part at r=3,5, high-energy inset, "
            "near-zero (eps, r) surface and amplitude projection",
            {"alpha": 5.0 / 6.0, "eps_min": 1e-3, "eps_max": 10.0, "points_per_decade": 32},
        ),
        Preset(
            "fig6", "ldos", "Fig. 6",
            "r=5: collapse and conventional parts for alpha in {2/6..5/6}, near-zero (eps, alpha) "
            "surface and numeric mean level against the closed form",
            {"r": 5.0, "eps_min": 1e-3, "eps_max": 10.0, "points_per_decade": 32},
        ),
        Preset(
            "fig7", "classical", "Fig. 7",
            "potential profiles and trajectories for the Bound, CollapseEscape and Scatter regimes",
            {"alpha": 0.5},
        ),
        Preset(
            "fig8", "feasibility", "Fig. 8",
            "alpha=0.5 LDOS at the observation radius, gapped Dirac dispersion, graphene mapping table",
            {"alpha": 0.5, "eps_min": 1e-6, "eps_max": 1e-3, "points_per_decade": 32},
        ),
    )
}


def presets_for(subcommand: str) -> list[str]:
    return [p.name for p in PRESETS.values() if p.subcommand == subcommand]


def manifest_text() -> str:
    lines = [
        "# figure -> producing command; every run writes CSV under --out-dir/<preset>/",
        "# figure\tcommand\tcontents",
    ]
    for p in PRESETS.values():
        lines.append(f"{p.figure}\tconecollapse {p.subcommand} --preset {p.name}\t{p.summary}")
    return "\n".join(lines) + "\n"

