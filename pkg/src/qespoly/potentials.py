"""The five potential families handled by the toolkit.

Line potentials (hbar = 2m = 1 throughout):

    dshg         (zeta*cosh(2x) - M)**2, the double sinh-Gordon double well
    phi6_kink    the bounded well from phi^6 kink stability analysis,
                 parameters epsilon**2 and mu
    sextic_plus  x**2 (a x**2 + b)**2 - a (2M+3) x**2
    sextic_minus x**2 (a x**2 - b)**2 - a (2M+3) x**2

Circle potentials, the images of a line potential under x -> i*theta
(which flips the sign of the potential and of the spectrum):

    dsg             -(zeta*cos(2 theta) - M)**2 on the circle of period pi
    phi6_kink_dual  the negated trigonometric image of phi6_kink on the
                    circle of period 2 pi / mu

Evaluators accept scalars or numpy arrays and are the single callable
contract the finite-difference oracle consumes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

LINE_FAMILIES = ("dshg", "phi6_kink", "sextic_plus", "sextic_minus", "harmonic")
CIRCLE_FAMILIES = ("dsg", "phi6_kink_dual")


@dataclass(frozen=True)
class PotentialSpec:
    family: str
    params: dict = field(default_factory=dict)
    period: float | None = None   # None means the real line

    def is_circle(self) -> bool:
        return self.period is not None

    def to_json_dict(self) -> dict:
        return {"family": self.family, "params": dict(self.params), "period": self.period}


def dshg(m: float, zeta: float) -> PotentialSpec:
    return PotentialSpec("dshg", {"m": float(m), "zeta": float(zeta)})


def dsg(m: float, zeta: float) -> PotentialSpec:
    return PotentialSpec("dsg", {"m": float(m), "zeta": float(zeta)}, period=np.pi)


def phi6_kink(epsilon_sq: float, mu: float) -> PotentialSpec:
    if epsilon_sq <= 0 or mu <= 0:
        raise ValueError("epsilon_sq and mu must be positive")
    return PotentialSpec("phi6_kink", {"epsilon_sq": float(epsilon_sq), "mu": float(mu)})


def phi6_kink_dual(epsilon_sq: float, mu: float) -> PotentialSpec:
    if epsilon_sq <= 0 or mu <= 0:
        raise ValueError("epsilon_sq and mu must be positive")
    return PotentialSpec(
        "phi6_kink_dual",
        {"epsilon_sq": float(epsilon_sq), "mu": float(mu)},
        period=2.0 * np.pi / mu,
    )


def sextic_plus(m: int, a: float = 1.0, b: float = 1.0) -> PotentialSpec:
    return PotentialSpec("sextic_plus", {"m": int(m), "a": float(a), "b": float(b)})


def sextic_minus(m: int, a: float = 1.0, b: float = 1.0) -> PotentialSpec:
    return PotentialSpec("sextic_minus", {"m": int(m), "a": float(a), "b": float(b)})


def harmonic() -> PotentialSpec:
    """V = x**2, the sanity case with spectrum 2n + 1."""
    return PotentialSpec("harmonic", {})


def free() -> PotentialSpec:
    """V = 0, for bare-stencil checks."""
    return PotentialSpec("free", {})


def potential_eval(spec: PotentialSpec, x):
    """Potential value at x (or array of x); x is the angle for circles."""
    x = np.asarray(x, dtype=float)
    p = spec.params
    if spec.family == "dshg":
        v = (p["zeta"] * np.cosh(2.0 * x) - p["m"]) ** 2
    elif spec.family == "dsg":
        v = -((p["zeta"] * np.cos(2.0 * x) - p["m"]) ** 2)
    elif spec.family == "phi6_kink":
        mu = p["mu"]
        inv2 = 1.0 / p["epsilon_sq"]
        s2 = np.sinh(0.5 * mu * x) ** 2
        num = 8.0 * s2 * s2 - 4.0 * (5.0 * inv2 - 1.0) * s2 + 2.0 * (inv2 * inv2 - inv2 - 2.0)
        den = 1.0 + inv2 + s2
        v = mu * mu * num / (8.0 * den * den)
    elif spec.family == "phi6_kink_dual":
        # image of phi6_kink under sinh**2 -> -sin**2 with the overall sign flip
        mu = p["mu"]
        inv2 = 1.0 / p["epsilon_sq"]
        s2 = np.sin(0.5 * mu * x) ** 2
        num = 8.0 * s2 * s2 + 4.0 * (5.0 * inv2 - 1.0) * s2 + 2.0 * (inv2 * inv2 - inv2 - 2.0)
        den = 1.0 + inv2 - s2
        v = -(mu * mu) * num / (8.0 * den * den)
    elif spec.family in ("sextic_plus", "sextic_minus"):
        sgn = 1.0 if spec.family == "sextic_plus" else -1.0
        a, b, m = p["a"], p["b"], p["m"]
        v = x * x * (a * x * x + sgn * b) ** 2 - a * (2 * m + 3) * x * x
    elif spec.family == "harmonic":
        v = x * x
    elif spec.family == "free":
        v = np.zeros_like(x)
    else:
        raise ValueError(f"unknown potential family {spec.family!r}")
    return v if v.shape else float(v)


def sextic_qes_levels(m: int, a: float = 1.0, b: float = 1.0) -> list:
    """Algebraic levels of the sextic well x**2 (a x**2 + b)**2 - a(2M+3) x**2.

    The polynomial sector has parity M mod 2 and dimension floor(M/2) + 1;
    its energies are the eigenvalues of the small sector matrix.  The minus
    well is the same formula with b negated.
    """
    if m < 0 or int(m) != m:
        raise ValueError("M must be a nonnegative integer")
    m = int(m)
    p = m % 2
    size = (m - p) // 2 + 1
    t = np.zeros((size, size))
    for j in range(size):
        t[j, j] = b * (4 * j + 2 * p + 1)
        if j > 0:
            t[j, j - 1] = 2.0 * a * (2 * j - 2 + p - m)
        if j + 1 < size:
            t[j, j + 1] = -(2 * j + 2 + p) * (2 * j + 1 + p)
    vals = np.linalg.eigvals(t)
    if np.max(np.abs(vals.imag)) > 1e-9 * (1.0 + np.max(np.abs(vals))):
        raise RuntimeError("sextic sector produced complex energies")
    return sorted(float(v) for v in vals.real)
