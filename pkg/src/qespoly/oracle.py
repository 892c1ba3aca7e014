"""Independent finite-difference Schroedinger eigensolver.

Second-order three-point discretization of -psi'' + V psi on either a
truncated line with Dirichlet ends or a circle with periodic wrap.  Line
problems are tridiagonal and solved by bisection on the Sturm sequence of
the tridiagonal matrix (LAPACK stebz); circle problems pick up corner
couplings and go through a dense symmetric diagonalization.  Every solve is
repeated on the half-resolution grid so convergence can be judged from the
Richardson pair, and analytic levels are matched to oracle levels
injectively, nearest first.

This solver shares nothing with the polynomial route except the potential
evaluators, which is what makes the comparison a genuine cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
import scipy.linalg

from .duality import DualReport, dual_energies
from .potentials import (
    PotentialSpec,
    potential_eval,
    sextic_qes_levels,
)


class OracleError(RuntimeError):
    pass


@dataclass(frozen=True)
class OracleConfig:
    spec: PotentialSpec
    l: float | None = None        # half-width of the truncated line
    n: int = 2048                 # interior points (line) or circle points
    count: int = 4                # eigenvalues requested
    e_max_hint: float | None = None
    period_multiplier: int = 1    # circle diagnostic: solve on k potential periods

    def __post_init__(self):
        if self.spec.is_circle():
            if self.l is not None:
                raise ValueError("circle potentials take no half-width")
        elif self.l is None or self.l <= 0:
            raise ValueError("line potentials need a positive half-width")
        if self.count < 1:
            raise ValueError("need at least one eigenvalue")
        if self.period_multiplier < 1:
            raise ValueError("period multiplier must be a positive integer")

    @property
    def boundary(self) -> str:
        return "periodic" if self.spec.is_circle() else "dirichlet"


@dataclass(frozen=True)
class Discretization:
    """Symmetric matrix description: tridiagonal plus an optional corner."""

    diag: np.ndarray
    offdiag: np.ndarray
    corner: float | None
    grid: np.ndarray
    h: float


@dataclass(frozen=True)
class LevelMatch:
    analytic: float
    oracle: float
    oracle_index: int

    @property
    def deviation(self) -> float:
        return abs(self.analytic - self.oracle)


@dataclass(frozen=True)
class OracleResult:
    config: OracleConfig
    eigenvalues: tuple
    h: float
    richardson: tuple             # same levels on the half-resolution grid
    extrapolated: tuple
    matches: tuple = ()

    def to_json_dict(self) -> dict:
        return {
            "eigenvalues": list(self.eigenvalues),
            "h": self.h,
            "richardson": list(self.richardson),
            "extrapolated": list(self.extrapolated),
            "matches": [
                {"analytic": m.analytic, "oracle": m.oracle, "deviation": m.deviation}
                for m in self.matches
            ],
        }


def discretize(config: OracleConfig) -> Discretization:
    """Assemble the stencil: (-1/h^2, 2/h^2 + V(x_i), -1/h^2).

    Line grids hold the interior points of [-l, l] (Dirichlet ends are
    eliminated); circle grids hold n points over one period with the wrap
    entering as a corner coupling.
    """
    spec = config.spec
    if spec.is_circle():
        h = spec.period * config.period_multiplier / config.n
        grid = h * np.arange(config.n)
        corner = -1.0 / (h * h)
    else:
        h = 2.0 * config.l / (config.n + 1)
        grid = -config.l + h * (1.0 + np.arange(config.n))
        corner = None
        if config.e_max_hint is not None and not _line_domain_ok(
                spec, config.l, config.e_max_hint):
            raise OracleError("domain too small")
    v = potential_eval(spec, grid)
    diag = 2.0 / (h * h) + v
    offdiag = np.full(config.n - 1, -1.0 / (h * h))
    return Discretization(diag, offdiag, corner, grid, h)


def _solve(config: OracleConfig) -> np.ndarray:
    disc = discretize(config)
    k = min(config.count, config.n - 1)
    if disc.corner is None:
        vals = scipy.linalg.eigvalsh_tridiagonal(
            disc.diag, disc.offdiag, select="i", select_range=(0, k - 1)
        )
    else:
        mat = np.diag(disc.diag)
        idx = np.arange(config.n - 1)
        mat[idx, idx + 1] = disc.offdiag
        mat[idx + 1, idx] = disc.offdiag
        mat[0, -1] += disc.corner
        mat[-1, 0] += disc.corner
        vals = scipy.linalg.eigh(mat, eigvals_only=True, subset_by_index=[0, k - 1])
    return np.sort(vals)


def _line_domain_ok(spec: PotentialSpec, l: float, e_max: float) -> bool:
    edge = float(potential_eval(spec, l))
    if edge >= 10.0 * (e_max + 1.0):
        return True
    # bounded wells never satisfy the dominance rule; accept once the
    # evanescent tail exp(-2*kappa*l) is negligible at the cut
    if edge > e_max:
        kappa = np.sqrt(edge - e_max)
        return kappa * l >= 5.5
    return False


def lowest_eigenvalues(config: OracleConfig) -> OracleResult:
    """The requested lowest eigenvalues plus their half-resolution pair.

    Line domains are auto-enlarged until the edge value of the potential
    dominates the computed spectrum (or, for bounded wells, until the decay
    tail at the cut is negligible).
    """
    if config.n < 64:
        raise ValueError("need at least 64 grid points")
    cfg = config
    for _ in range(8):
        fine = _solve(cfg)
        e_top = cfg.e_max_hint if cfg.e_max_hint is not None else float(fine[-1])
        if cfg.spec.is_circle() or _line_domain_ok(cfg.spec, cfg.l, e_top):
            break
        cfg = replace(cfg, l=1.5 * cfg.l)
    else:
        raise OracleError("domain too small")
    coarse = _solve(replace(cfg, n=cfg.n // 2))
    k = min(len(fine), len(coarse))
    extrapolated = tuple((4.0 * fine[i] - coarse[i]) / 3.0 for i in range(k))
    if cfg.spec.is_circle():
        disc_h = cfg.spec.period * cfg.period_multiplier / cfg.n
    else:
        disc_h = 2.0 * cfg.l / (cfg.n + 1)
    return OracleResult(
        cfg, tuple(float(v) for v in fine), disc_h, tuple(float(v) for v in coarse),
        extrapolated,
    )


def match_levels(analytic, eigenvalues) -> tuple:
    """Nearest-neighbor matching with injectivity enforced."""
    eigenvalues = list(eigenvalues)
    used = {}
    matches = []
    for a in analytic:
        idx = int(np.argmin([abs(a - e) for e in eigenvalues]))
        if idx in used:
            raise OracleError(
                f"ambiguous eigenvalue matching: levels {used[idx]} and {a} "
                f"both nearest oracle level {eigenvalues[idx]}"
            )
        used[idx] = a
        matches.append(LevelMatch(a, float(eigenvalues[idx]), idx))
    return tuple(matches)


def verify_qes(m: int, zeta: float, tolerance: float = 1e-4,
               l: float = 5.0, n: int = 8000) -> OracleResult:
    """Match every algebraic sinh-Gordon level to an oracle level."""
    from .spectrum import qes_energies

    report = qes_energies(m, zeta)
    config = OracleConfig(
        PotentialSpec("dshg", {"m": float(m), "zeta": float(zeta)}),
        l=l, n=n, count=m + 3,
    )
    result = lowest_eigenvalues(config)
    matches = match_levels(report.energies(), result.eigenvalues)
    worst = max(mt.deviation for mt in matches)
    if worst > tolerance:
        raise OracleError(f"QES level deviates by {worst} > {tolerance}")
    return replace(result, matches=matches)


def analytic_qes_levels(spec: PotentialSpec) -> list:
    """The algebraic levels a potential family is known to hold."""
    from .spectrum import qes_energies

    p = spec.params
    if spec.family == "dshg":
        return qes_energies(int(p["m"]), p["zeta"]).energies()
    if spec.family == "dsg":
        return dual_energies(qes_energies(int(p["m"]), p["zeta"]).energies())
    if spec.family == "sextic_plus":
        return sextic_qes_levels(p["m"], p["a"], p["b"])
    if spec.family == "sextic_minus":
        return sextic_qes_levels(p["m"], p["a"], -p["b"])
    if spec.family == "phi6_kink":
        mu2 = p["mu"] ** 2
        levels = [0.0]
        if abs(p["epsilon_sq"] - 0.5) <= 1e-12:
            levels.append(0.75 * mu2)
        return levels
    if spec.family == "phi6_kink_dual":
        # the E = 0 state is antiperiodic over one potential period, so it
        # only shows up when the circle is the doubled cover
        mu2 = p["mu"] ** 2
        levels = [0.0]
        if abs(p["epsilon_sq"] - 0.5) <= 1e-12:
            levels = [-0.75 * mu2, 0.0]
        return levels
    raise OracleError(f"no algebraic levels known for family {spec.family!r}")


_DEFAULT_LINE = {"dshg": (5.0, 8000), "sextic_plus": (8.0, 6000),
                 "sextic_minus": (8.0, 6000), "phi6_kink": (12.0, 6000)}


def _default_config(spec: PotentialSpec, count: int,
                    e_max_hint: float | None = None) -> OracleConfig:
    if spec.is_circle():
        mult = 2 if spec.family == "phi6_kink_dual" else 1
        return OracleConfig(spec, n=1024 * mult, count=count, period_multiplier=mult)
    l, n = _DEFAULT_LINE.get(spec.family, (8.0, 6000))
    return OracleConfig(spec, l=l, n=n, count=count, e_max_hint=e_max_hint)


def verify_duality_pair(spec_a: PotentialSpec, spec_b: PotentialSpec,
                        tolerance: float = 1e-3,
                        config_a: OracleConfig | None = None,
                        config_b: OracleConfig | None = None) -> DualReport:
    """Check the negate-and-reverse pairing of two dual potentials.

    The algebraic levels of spec_a are mapped to spec_b's expected levels;
    both oracle spectra must contain their side within tolerance.
    """
    levels_a = analytic_qes_levels(spec_a)
    levels_b = dual_energies(levels_a)
    count = len(levels_a)
    res_a = lowest_eigenvalues(
        config_a or _default_config(spec_a, count + 4, max(levels_a)))
    res_b = lowest_eigenvalues(
        config_b or _default_config(spec_b, count + 4, max(levels_b)))
    matches_a = match_levels(levels_a, res_a.eigenvalues)
    matches_b = match_levels(levels_b, res_b.eigenvalues)
    worst = max(
        [mt.deviation for mt in matches_a] + [mt.deviation for mt in matches_b]
    )
    ok = worst <= tolerance
    return DualReport(
        source=tuple(levels_a),
        dual=tuple(levels_b),
        pairs=tuple((k, count - 1 - k) for k in range(count)),
        rejected=not ok,
        reason="" if ok else f"pairing deviation {worst} above {tolerance}",
    )
