"""Generators for the energy-polynomial chains of the double sinh-Gordon well.

The Schroedinger series solution produces one combined chain R with seeds
R0 = R1 = 1 that splits into two decoupled monic three-term chains: P
(even series order, P_n = R_{2n}) and Q (odd series order, Q_n = R_{2n+1}).
Both are polynomials in the shifted energy variable

    script_E = E - (M + zeta)**2

with exact rational coefficients in zeta.  For positive integer M of the
right parity the lag coefficient C_n vanishes at a finite index, the chain
terminates, and every later member factors through the critical member; the
four quotient chains (Pbar, Qbar for odd M; Rbar, Sbar for even M) are the
cofactors of that factorization and are generated here by the same
recursion with the index shifted past the critical member.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactpoly import (
    ENERGY_ONE,
    PARAM_ZERO,
    EnergyPoly,
    ParamPoly,
    as_rational,
)

MAIN_KINDS = ("P", "Q")
QUOTIENT_KINDS = ("Pbar", "Qbar", "Rbar", "Sbar")
CHAIN_KINDS = MAIN_KINDS + ("R",) + QUOTIENT_KINDS

# quotient kind -> (base chain, required s, M parity ("odd"/"even"))
_QUOTIENT_TABLE = {
    "Pbar": ("P", Fraction(0), "odd"),
    "Qbar": ("Q", Fraction(1, 2), "odd"),
    "Rbar": ("P", Fraction(1, 2), "even"),
    "Sbar": ("Q", Fraction(0), "even"),
}


class ChainSpecError(ValueError):
    pass


@dataclass(frozen=True)
class ChainSpec:
    """Which chain to generate: kind, coupling parameter M, indicial root s."""

    kind: str
    m: Fraction
    s: Fraction

    def __post_init__(self):
        if self.kind not in CHAIN_KINDS:
            raise ChainSpecError(f"unknown chain kind {self.kind!r}")
        object.__setattr__(self, "m", as_rational(self.m))
        object.__setattr__(self, "s", as_rational(self.s))
        if self.s not in (Fraction(0), Fraction(1, 2)):
            raise ChainSpecError("s must be 0 or 1/2")
        if self.kind in QUOTIENT_KINDS:
            base, s_req, parity = _QUOTIENT_TABLE[self.kind]
            m = self.m
            if m.denominator != 1 or m <= 0:
                raise ChainSpecError("invalid quotient chain")
            odd = int(m) % 2 == 1
            if (parity == "odd") != odd or self.s != s_req:
                raise ChainSpecError("invalid quotient chain")


@dataclass(frozen=True)
class PolyFamily:
    """A generated chain: members[n] is the n-th polynomial, monic of degree n
    for the P/Q/quotient chains (the combined R chain has degree floor(n/2))."""

    spec: ChainSpec
    members: tuple
    termination_index: int | None = None

    def __len__(self):
        return len(self.members)

    def __getitem__(self, n: int) -> EnergyPoly:
        return self.members[n]


@dataclass(frozen=True)
class ThreeTermForm:
    """Monic three-term data: member_n = (E + B_n) member_{n-1} + C_n member_{n-2}.

    A_n is identically 1; index 1 carries C_1 = 0.  first_zero_C is the
    least n >= 2 with C_n identically zero in zeta (termination), if any.
    The chain is an orthogonal-polynomial system in the sense of the
    three-term criterion exactly up to that index.
    """

    spec: ChainSpec
    b: tuple
    c: tuple
    first_zero_C: int | None

    def order(self) -> int:
        return len(self.b)


@dataclass(frozen=True)
class FinkelForm:
    """Numeric recursion data in the positivity-criterion normalization
    Phat_{k+1} = (E - b_k) Phat_k - a_k Phat_{k-1}, so a_k = -C_{k+1}(zeta)
    and b_k = -B_{k+1}(zeta).  All a_k > 0 would force positive weights."""

    zeta: float
    b: tuple
    a: tuple
    a_signs_before_termination: tuple


def _b_p(m: Fraction, s: Fraction, n: int) -> ParamPoly:
    const = 4 * n * n + 8 * n * (s - 1) + 4 * s * s - 8 * s + 4
    return ParamPoly((const, 8 * n - 6))


def _c_p(m: Fraction, s: Fraction, n: int) -> ParamPoly:
    return ParamPoly.monomial(8 * (n - 1) * (2 * n - 3) * (m + 3 - 2 * s - 2 * n), 1)


def _b_q(m: Fraction, s: Fraction, n: int) -> ParamPoly:
    const = 4 * n * n + 4 * n * (2 * s - 1) + 4 * s * s - 4 * s + 1
    return ParamPoly((const, 8 * n - 2))


def _c_q(m: Fraction, s: Fraction, n: int) -> ParamPoly:
    return ParamPoly.monomial(8 * (n - 1) * (2 * n - 1) * (m + 2 - 2 * s - 2 * n), 1)


def critical_index(kind: str, m: Fraction, s: Fraction) -> Fraction:
    """Index of the critical (terminating) member: P: (M+1-2s)/2, Q: (M-2s)/2."""
    if kind == "P":
        return (m + 1 - 2 * s) / 2
    if kind == "Q":
        return (m - 2 * s) / 2
    raise ChainSpecError(f"no critical index for chain {kind!r}")


def recursion_coeffs(spec: ChainSpec, n: int):
    """(B_n, C_n) of the monic step at index n >= 1; C_1 is identically zero.

    Quotient chains reuse the parent recursion with the index offset past
    the critical member, which is exactly what long division of the parent
    chain produces (the offset lands index 1 on the vanished lag term).
    """
    if n < 1:
        raise ValueError("recursion index starts at 1")
    kind, m, s = spec.kind, spec.m, spec.s
    if kind in QUOTIENT_KINDS:
        base, _, _ = _QUOTIENT_TABLE[kind]
        offset = critical_index(base, m, s)
        kind, n = base, n + int(offset)
    if kind == "P":
        return _b_p(m, s, n), _c_p(m, s, n)
    if kind == "Q":
        return _b_q(m, s, n), _c_q(m, s, n)
    raise ChainSpecError(f"chain {spec.kind!r} has no adjacent three-term step")


def _termination(spec: ChainSpec) -> int | None:
    """Smallest n >= 2 with C_n identically zero, for integer M; else None."""
    kind, m, s = spec.kind, spec.m, spec.s
    if kind not in MAIN_KINDS:
        return None
    t = (m + 3 - 2 * s) / 2 if kind == "P" else (m + 2 - 2 * s) / 2
    if t.denominator == 1 and t >= 2:
        return int(t)
    return None


def gen_family(spec: ChainSpec, order: int) -> PolyFamily:
    """Generate members 0..order of a main chain (P or Q) exactly."""
    if spec.kind not in MAIN_KINDS:
        raise ChainSpecError("gen_family handles the P and Q chains")
    if order < 0:
        raise ValueError("order must be nonnegative")
    members = [ENERGY_ONE]
    for n in range(1, order + 1):
        b, c = recursion_coeffs(spec, n)
        new = EnergyPoly.linear(b) * members[n - 1]
        if n >= 2 and not c.is_zero():
            new = new + members[n - 2].scale(c)
        members.append(new)
    return PolyFamily(spec, tuple(members), _termination(spec))


def gen_quotient(spec: ChainSpec, order: int) -> PolyFamily:
    """Generate members 0..order of a quotient chain (Pbar/Qbar/Rbar/Sbar)."""
    if spec.kind not in QUOTIENT_KINDS:
        raise ChainSpecError("gen_quotient handles the quotient chains")
    members = [ENERGY_ONE]
    for n in range(1, order + 1):
        b, c = recursion_coeffs(spec, n)
        new = EnergyPoly.linear(b) * members[n - 1]
        if n >= 2 and not c.is_zero():
            new = new + members[n - 2].scale(c)
        members.append(new)
    return PolyFamily(spec, tuple(members), None)


def gen_R(spec: ChainSpec, order: int) -> PolyFamily:
    """Generate the combined chain R_0..R_order with seeds R0 = R1 = 1.

    The recursion couples indices four apart in steps of two,
        R_{n+2} = (E + n^2 + 4(s+zeta)n + 4s^2 + 2zeta) R_n
                  + 4 zeta (M+1-2s-n) n (n-1) R_{n-2},
    written in the shifted energy via E - M^2 - zeta^2 - 2(M-1)zeta = E' + 2zeta.
    Even members reproduce P, odd members reproduce Q at the same (M, s).
    """
    if spec.kind != "R":
        raise ChainSpecError("gen_R handles the combined chain")
    if order < 1:
        raise ValueError("need at least the two seed members")
    m, s = spec.m, spec.s
    members = [ENERGY_ONE, ENERGY_ONE]
    for n in range(0, order - 1):
        b = ParamPoly((n * n + 4 * s * n + 4 * s * s, 4 * n + 2))
        c = ParamPoly.monomial(4 * (m + 1 - 2 * s - n) * n * (n - 1), 1)
        new = EnergyPoly.linear(b) * members[n]
        if n >= 2 and not c.is_zero():
            new = new + members[n - 2].scale(c)
        members.append(new)
    term = m + 3 - 2 * s
    termination = int(term) if term.denominator == 1 and term >= 4 else None
    return PolyFamily(spec, tuple(members[: order + 1]), termination)


def three_term_form(family: PolyFamily) -> ThreeTermForm:
    """Read the (A_n = 1, B_n, C_n) data off a generated P/Q/quotient chain."""
    spec = family.spec
    if spec.kind == "R":
        raise ChainSpecError("the combined chain is not an adjacent three-term system")
    order = len(family.members) - 1
    bs, cs = [], []
    first_zero = None
    for n in range(1, order + 1):
        b, c = recursion_coeffs(spec, n)
        bs.append(b)
        cs.append(c)
        if n >= 2 and c.is_zero() and first_zero is None:
            first_zero = n
    return ThreeTermForm(spec, tuple(bs), tuple(cs), first_zero)


def finkel_form(form: ThreeTermForm, zeta: float) -> FinkelForm:
    """Specialize a three-term form at numeric zeta > 0 to the
    (E - b_k, -a_k) normalization and report the sign pattern of a_k."""
    if zeta <= 0:
        raise ValueError("zeta must be positive")
    b = tuple(-bn.eval_float(zeta) for bn in form.b)
    a = tuple(-cn.eval_float(zeta) for cn in form.c)
    stop = form.first_zero_C - 1 if form.first_zero_C is not None else len(a)
    signs = tuple(
        1 if a[k] > 0 else (-1 if a[k] < 0 else 0) for k in range(1, stop)
    )
    return FinkelForm(zeta, b, a, signs)
