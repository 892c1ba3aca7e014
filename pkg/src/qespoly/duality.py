"""The anti-isospectral map x -> i*theta and its consequences.

A symmetric line potential V(x) maps to Vbar(theta) = -V(i theta) on a
circle, and the algebraic levels map by negate-and-reverse:

    Ebar_k = -E_{count-1-k},   psibar_k(theta) = psi_{count-1-k}(i theta).

Applied to the double sinh-Gordon well this produces the double sine-Gordon
potential -(zeta cos 2theta - M)**2.  Because the circle problem demands
psi(theta + pi) = psi(theta) while the transformed states flip sign under a
half turn whenever M is even, only odd M survives: the sine-Gordon side is
algebraically solvable for roughly half the parameter values of its dual.

The same map applied to the bounded kink-stability well yields a periodic
well whose ground state (at epsilon**2 = 1/2) and second excited state
(at every epsilon) are known in closed form; those states live here too.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .families import ChainSpec, gen_family
from .potentials import (
    PotentialSpec,
    dsg as dsg_potential,
    dshg as dshg_potential,
    phi6_kink,
    phi6_kink_dual,
    potential_eval,
    sextic_minus,
    sextic_plus,
    sextic_qes_levels,
)
from .spectrum import (
    MomentSequence,
    QESDomainError,
    QESLevel,
    SpectrumReport,
    WeightTable,
    chain_plan,
    chain_roots,
    qes_energies,
)

__all__ = [
    "PotentialSpec",
    "potential_eval",
    "dshg_potential",
    "dsg_potential",
    "phi6_kink",
    "phi6_kink_dual",
    "sextic_plus",
    "sextic_minus",
    "sextic_qes_levels",
    "DualReport",
    "DsgRejection",
    "dual_energies",
    "dsg_spectrum",
    "periodicity_character",
    "dsg_weights_moments",
    "new_potential_states",
]

PERIODIC = 1
ANTIPERIODIC = -1
MIXED = 0


@dataclass(frozen=True)
class DualReport:
    """Outcome of pairing two spectra under negate-and-reverse."""

    source: tuple
    dual: tuple
    pairs: tuple              # ((k, count-1-k), ...)
    rejected: bool = False
    reason: str = ""

    def to_json_dict(self) -> dict:
        return {
            "source": list(self.source),
            "dual": list(self.dual),
            "pairs": [list(p) for p in self.pairs],
            "rejected": self.rejected,
            "reason": self.reason,
        }


@dataclass(frozen=True)
class DsgRejection:
    """Typed rejection of the sine-Gordon levels at even M, with the
    half-turn characters of the candidate states as evidence."""

    m: int
    zeta: float
    characters: tuple
    reason: str

    def to_json_dict(self) -> dict:
        return {
            "m": self.m,
            "zeta": self.zeta,
            "rejected": True,
            "characters": list(self.characters),
            "reason": self.reason,
        }


def dual_energies(levels) -> list:
    """Negate and reverse; an involution on sorted level lists."""
    return [-e for e in reversed(list(levels))]


def periodicity_character(values, rel_tol: float = 1e-8) -> int:
    """Half-turn character of a state sampled over one full period.

    values must have even length on a uniform grid covering the full
    period; returns +1 (invariant), -1 (sign flip) or 0 (mixed).
    """
    v = np.asarray(values, dtype=float)
    if v.size % 2:
        raise ValueError("need an even sample count over the full period")
    half = v.size // 2
    shifted = np.roll(v, -half)
    scale = np.max(np.abs(v))
    if scale == 0.0:
        return PERIODIC
    if np.max(np.abs(shifted - v)) <= rel_tol * scale:
        return PERIODIC
    if np.max(np.abs(shifted + v)) <= rel_tol * scale:
        return ANTIPERIODIC
    return MIXED


def _dual_candidate_characters(m: int, zeta: float, samples: int = 512) -> tuple:
    """Characters of the transformed line states on the 2*pi circle."""
    from .wavefunctions import build_qes_state

    theta = np.linspace(0.0, 2.0 * np.pi, samples, endpoint=False)
    chars = []
    for level in range(m):
        state = build_qes_state(m, zeta, level)
        chars.append(periodicity_character(state.eval_dual(theta)))
    return tuple(chars)


def dsg_spectrum(m: int, zeta: float):
    """Sine-Gordon levels for odd M; a typed rejection for even M.

    Odd M: the image of the sinh-Gordon spectrum under negate-and-reverse,
    with node labels by energy rank and the chain inherited from the source
    level.  Even M: every candidate state is odd under a half turn, so no
    pi-periodic eigenstate exists at the mapped energies.
    """
    if int(m) != m or m < 1:
        raise QESDomainError("QES requires positive integer M")
    m = int(m)
    source = qes_energies(m, zeta)
    if m % 2 == 0:
        return DsgRejection(
            m,
            zeta,
            _dual_candidate_characters(m, zeta),
            "candidate states change sign under a half turn (even M)",
        )
    shift = (m + zeta) ** 2
    levels = []
    for k in range(m):
        src = source.levels[m - 1 - k]
        e = -src.energy
        levels.append(QESLevel(e, e - shift, k, src.chain))
    return SpectrumReport(m, zeta, tuple(levels))


def dsg_weights_moments(m: int, zeta: float, chain: str = "P"):
    """Weights and moments on the sine-Gordon side, for odd M.

    The chain recursions keep their form with the energy negated, so the
    weight system is solved on the negated, reversed support; the result is
    the sinh-Gordon table with the entries interchanged end to end, and the
    moments pick up a factor (-1)**n.
    """
    if int(m) != m or m < 1 or m % 2 == 0:
        raise QESDomainError("sine-Gordon weights exist only for odd positive M")
    m = int(m)
    entry = chain_plan(m).entry(chain)
    if entry.level_count < 1:
        raise QESDomainError("chain has no QES levels")
    spec = ChainSpec(entry.chain_kind, Fraction(m), entry.s)
    fam = gen_family(spec, max(entry.level_count - 1, 0))
    shift = (m + zeta) ** 2
    src_roots = chain_roots(m, zeta, entry)           # shifted energies, ascending
    dual_e = sorted(-(r + shift) for r in src_roots)  # circle energies, ascending
    count = entry.level_count
    # chain polynomial at a circle energy ebar: evaluate at the source
    # shifted energy -ebar - shift
    a = np.array(
        [
            [fam[n].eval_numeric(zeta, -eb - shift) for eb in dual_e]
            for n in range(count)
        ]
    )
    rhs = np.zeros(count)
    rhs[0] = 1.0
    sol = np.linalg.solve(a, rhs)
    residual = float(np.max(np.abs(a @ sol - rhs)))
    if residual > 1e-10:
        raise QESDomainError(f"weight system residual {residual} above tolerance")
    table = WeightTable(
        chain,
        tuple((e, float(w)) for e, w in zip(dual_e, sol)),
        condition=float(np.linalg.cond(a)),
        residual=residual,
    )
    energies = np.array(dual_e)
    w = np.array(table.weights())
    n_max = 12
    values = [1.0]
    for n in range(1, n_max + 1):
        values.append(float(np.dot(w, energies**n)))
    growth = tuple(
        abs(values[n]) ** (1.0 / n) if values[n] != 0 else 0.0
        for n in range(1, n_max + 1)
    )
    momseq = MomentSequence(
        chain,
        zeta,
        tuple(values),
        growth,
        float(np.max(np.abs(energies))),
        (m + zeta) ** 2,
    )
    return table, momseq


# ----------------------------------------------------------------------
# The periodic well discovered through the map
# ----------------------------------------------------------------------

def new_potential_states(epsilon_sq: float, mu: float, samples: int = 2048) -> list:
    """Closed-form states of the periodic kink-dual well.

    Always returns the E = 0 state (valid at every epsilon); at
    epsilon**2 = 1/2 the ground state E = -(3/4) mu**2 is also known.
    States are normalized to unit sup norm on a uniform grid over their own
    period and returned as (energy, callable) pairs sorted by energy.

    These are the analytic continuations of the line states, which fixes
    the surviving exponents: the ground state is (1 + sin**2)-type and
    invariant under a shift by one potential period 2 pi / mu, while the
    E = 0 state (the image of the kink translation mode) carries a
    cos(mu*theta/2) factor, so it changes sign under that shift and is
    genuinely periodic only on the doubled circle 4 pi / mu.
    """
    if epsilon_sq <= 0 or mu <= 0:
        raise ValueError("epsilon_sq and mu must be positive")
    period = 2.0 * np.pi / mu

    def psi2_raw(theta):
        theta = np.asarray(theta, dtype=float)
        s2 = np.sin(0.5 * mu * theta) ** 2
        den = epsilon_sq + 1.0 - epsilon_sq * s2
        return np.cos(0.5 * mu * theta) / den**1.5

    states = []
    if abs(epsilon_sq - 0.5) <= 1e-12:

        def psi0_raw(theta):
            theta = np.asarray(theta, dtype=float)
            s2 = np.sin(0.5 * mu * theta) ** 2
            return (1.0 + s2) / (3.0 - s2) ** 1.5

        grid0 = np.linspace(0.0, period, samples, endpoint=False)
        n0 = float(np.max(np.abs(psi0_raw(grid0))))
        states.append((-0.75 * mu * mu, lambda th, _n=n0: psi0_raw(th) / _n))

    grid2 = np.linspace(0.0, 2.0 * period, samples, endpoint=False)
    n2 = float(np.max(np.abs(psi2_raw(grid2))))
    states.append((0.0, lambda th, _n=n2: psi2_raw(th) / _n))
    states.sort(key=lambda pair: pair[0])
    return states
