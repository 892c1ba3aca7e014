"""Exact arithmetic layer: rational polynomials in the coupling and energy.

Everything symbolic in this package lives in Q[zeta][E]: a ParamPoly is a
dense univariate polynomial over the rationals in the coupling zeta, and an
EnergyPoly is a dense univariate polynomial in the shifted energy variable
whose coefficients are ParamPoly.  Both are immutable and canonical
(trailing zeros stripped; the zero polynomial has an empty coefficient
tuple), so generated families can be compared coefficient for coefficient.

Binary floats enter in exactly two places: numeric evaluation (Horner in E
after Horner in zeta) and the real-root finder, which polishes
companion-matrix eigenvalues with Newton steps and certifies the number of
distinct real roots against an exact Sturm chain.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

ZETA_SYMBOL = "ζ"


class ExactDivisionError(ValueError):
    """Raised when exact polynomial division is not possible."""


class RootCountMismatch(RuntimeError):
    """Numeric real roots disagree with the exact Sturm count."""


def as_rational(x) -> Fraction:
    """Coerce ints, Fractions and binary floats to an exact Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    raise TypeError(f"cannot represent {type(x).__name__} exactly")


def _strip(coeffs):
    end = len(coeffs)
    while end > 0 and not coeffs[end - 1]:
        end -= 1
    return tuple(coeffs[:end])


@dataclass(frozen=True)
class ParamPoly:
    """Polynomial in the coupling zeta with Fraction coefficients.

    coeffs[k] multiplies zeta**k.  The zero polynomial is ParamPoly(()).
    """

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _strip([as_rational(c) for c in self.coeffs]))

    @staticmethod
    def const(value) -> "ParamPoly":
        return ParamPoly((as_rational(value),))

    @staticmethod
    def zero() -> "ParamPoly":
        return ParamPoly(())

    @staticmethod
    def monomial(value, power: int) -> "ParamPoly":
        return ParamPoly((0,) * power + (as_rational(value),))

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        """Degree in zeta; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    def __bool__(self):
        return not self.is_zero()

    def __add__(self, other):
        other = _coerce_param(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [Fraction(0)] * (n - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            a[i] += c
        return ParamPoly(a)

    def __sub__(self, other):
        return self + (-_coerce_param(other))

    def __neg__(self):
        return ParamPoly(tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        other = _coerce_param(other)
        if self.is_zero() or other.is_zero():
            return ParamPoly(())
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return ParamPoly(out)

    __radd__ = __add__
    __rmul__ = __mul__

    def scale(self, factor) -> "ParamPoly":
        f = as_rational(factor)
        return ParamPoly(tuple(c * f for c in self.coeffs))

    def eval_exact(self, zeta) -> Fraction:
        z = as_rational(zeta)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def eval_float(self, zeta: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * zeta + float(c)
        return acc

    def render(self) -> str:
        """Canonical text form, descending zeta powers, e.g. '20ζ^2+24ζ'."""
        if self.is_zero():
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            if k == 0:
                body = str(mag)
            else:
                var = ZETA_SYMBOL if k == 1 else f"{ZETA_SYMBOL}^{k}"
                body = var if mag == 1 else f"{mag}{var}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += sign + body
        return text


def _coerce_param(x) -> ParamPoly:
    if isinstance(x, ParamPoly):
        return x
    return ParamPoly.const(x)


PARAM_ONE = ParamPoly.const(1)
PARAM_ZERO = ParamPoly.zero()


@dataclass(frozen=True)
class EnergyPoly:
    """Polynomial in the shifted energy variable with ParamPoly coefficients.

    coeffs[k] (a ParamPoly) multiplies E**k where E here denotes the shifted
    energy; families generated elsewhere are monic in this variable.
    """

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "coeffs", _strip([_coerce_param(c) for c in self.coeffs])
        )

    @staticmethod
    def const(value) -> "EnergyPoly":
        return EnergyPoly((_coerce_param(value),))

    @staticmethod
    def zero() -> "EnergyPoly":
        return EnergyPoly(())

    @staticmethod
    def variable() -> "EnergyPoly":
        """The monic degree-one polynomial E."""
        return EnergyPoly((PARAM_ZERO, PARAM_ONE))

    @staticmethod
    def linear(constant: ParamPoly) -> "EnergyPoly":
        """E + constant, for recursion steps."""
        return EnergyPoly((constant, PARAM_ONE))

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def leading(self) -> ParamPoly:
        if self.is_zero():
            return PARAM_ZERO
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return not self.is_zero() and self.leading() == PARAM_ONE

    def coeff(self, k: int) -> ParamPoly:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return PARAM_ZERO

    def __add__(self, other):
        other = _coerce_energy(other)
        n = max(len(self.coeffs), len(other.coeffs))
        out = [self.coeff(i) + other.coeff(i) for i in range(n)]
        return EnergyPoly(out)

    def __sub__(self, other):
        return self + (-_coerce_energy(other))

    def __neg__(self):
        return EnergyPoly(tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        other = _coerce_energy(other)
        if self.is_zero() or other.is_zero():
            return EnergyPoly(())
        out = [PARAM_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return EnergyPoly(out)

    __radd__ = __add__
    __rmul__ = __mul__

    def scale(self, factor) -> "EnergyPoly":
        p = _coerce_param(factor)
        return EnergyPoly(tuple(c * p for c in self.coeffs))

    def specialize(self, zeta) -> list:
        """Exact univariate coefficients in E at a rational zeta value."""
        z = as_rational(zeta)
        return list(_strip([c.eval_exact(z) for c in self.coeffs]))

    def eval_numeric(self, zeta: float, eps: float) -> float:
        """Float value at (zeta, shifted energy eps) by nested Horner."""
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * eps + c.eval_float(zeta)
        return acc

    def render(self) -> str:
        """Canonical text, descending E powers: 'E^2 + (12ζ+4)E + (20ζ^2+24ζ)'."""
        if self.is_zero():
            return "0"
        deg = self.degree()
        if deg == 0:
            return self.coeffs[0].render()
        parts = []
        for k in range(deg, -1, -1):
            c = self.coeff(k)
            if c.is_zero():
                continue
            if k == deg and c == PARAM_ONE:
                head = ""
            else:
                head = f"({c.render()})"
            if k == 0:
                term = head if head else "(1)"
            elif k == 1:
                term = f"{head}E"
            else:
                term = f"{head}E^{k}"
            parts.append(term)
        return " + ".join(parts)


def _coerce_energy(x) -> EnergyPoly:
    if isinstance(x, EnergyPoly):
        return x
    if isinstance(x, ParamPoly):
        return EnergyPoly((x,))
    return EnergyPoly.const(x)


ENERGY_ONE = EnergyPoly.const(1)
ENERGY_ZERO = EnergyPoly.zero()


def poly_arith(a: EnergyPoly, b: EnergyPoly, op: str) -> EnergyPoly:
    """Exact add/sub/mul on energy polynomials."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def poly_divide_exact(a: EnergyPoly, b: EnergyPoly):
    """Exact long division a = q*b + r with deg r < deg b.

    The divisor's leading coefficient must be a nonzero rational constant
    (in practice every divisor here is monic); a zeta-dependent leading
    coefficient is not invertible in Q[zeta] and is rejected.
    """
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    lead = b.leading()
    if lead.degree() > 0:
        raise ExactDivisionError("non-divisible leading coefficient")
    inv = 1 / lead.coeffs[0]
    quo = EnergyPoly.zero()
    rem = a
    while not rem.is_zero() and rem.degree() >= b.degree():
        shift = rem.degree() - b.degree()
        factor = rem.leading().scale(inv)
        term = EnergyPoly((PARAM_ZERO,) * shift + (factor,))
        quo = quo + term
        rem = rem - term * b
    return quo, rem


def eval_numeric(p: EnergyPoly, zeta: float, eps: float) -> float:
    return p.eval_numeric(zeta, eps)


# ----------------------------------------------------------------------
# Sturm chains and real roots
# ----------------------------------------------------------------------

def _uni_strip(c):
    c = list(c)
    while c and not c[-1]:
        c.pop()
    return c


def _uni_deriv(c):
    return [k * c[k] for k in range(1, len(c))]


def _uni_rem(a, b):
    """Remainder of a / b over Fraction coefficient lists."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and any(a):
        a = _uni_strip(a)
        if len(a) - 1 < db:
            break
        f = a[-1] / lb
        shift = len(a) - 1 - db
        for i, bc in enumerate(b):
            a[shift + i] -= f * bc
        a = _uni_strip(a)
        if not a:
            break
    return _uni_strip(a)


def sturm_real_root_count(coeffs) -> int:
    """Distinct real roots of an exact univariate polynomial over (-inf, inf).

    coeffs[k] is the Fraction coefficient of x**k; chain signs are taken at
    both infinities from leading terms.
    """
    c = _uni_strip([as_rational(x) for x in coeffs])
    if len(c) <= 1:
        return 0
    chain = [c, _uni_strip(_uni_deriv(c))]
    while chain[-1]:
        r = _uni_rem(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-x for x in r])

    def sign_changes(at_plus_inf: bool) -> int:
        signs = []
        for p in chain:
            if not p:
                continue
            lead = p[-1]
            s = 1 if lead > 0 else -1
            if not at_plus_inf and (len(p) - 1) % 2 == 1:
                s = -s
            signs.append(s)
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    return sign_changes(False) - sign_changes(True)


def real_roots(p: EnergyPoly, zeta) -> list:
    """All real roots of p at fixed zeta, ascending, as (root, multiplicity).

    Companion-matrix eigenvalues of the float-specialized polynomial are
    polished by Newton iteration on the exactly specialized coefficients,
    clustered into multiplicities, and the number of distinct real roots is
    certified against a Sturm count of the exact integerized polynomial.
    """
    exact = p.specialize(as_rational(zeta))
    if not exact:
        raise ValueError("polynomial vanishes identically at this zeta")
    deg = len(exact) - 1
    if deg == 0:
        raise ValueError("no roots")

    coeffs = [float(c) for c in exact]

    def val_dval(x: float):
        v = 0.0
        d = 0.0
        for c in reversed(coeffs):
            d = d * x + v
            v = v * x + c
        return v, d

    n_exact = sturm_real_root_count(exact)

    raw = np.roots(list(reversed(coeffs)))
    # multiple roots scatter the companion eigenvalues by ~eps**(1/m), so
    # admit candidates generously and let the Sturm count settle clustering
    candidates = [z for z in raw if abs(z.imag) <= 1e-5 * (1.0 + abs(z))]
    polished = []
    for z in candidates:
        x = float(z.real)
        for _ in range(60):
            v, d = val_dval(x)
            if d == 0.0:
                break
            step = v / d
            x -= step
            if abs(step) <= 1e-15 * (1.0 + abs(x)):
                break
        polished.append(x)
    polished.sort()

    def cluster(radius: float):
        groups = []
        for x in polished:
            if groups and abs(x - groups[-1][-1]) <= radius * (1.0 + abs(x)):
                groups[-1].append(x)
            else:
                groups.append([x])
        return groups

    groups = []
    radius = 1e-8
    while radius <= 1e-3:
        groups = cluster(radius)
        if len(groups) <= n_exact:
            break
        radius *= 10.0
    if len(groups) != n_exact:
        raise RootCountMismatch(
            f"numeric distinct real roots {len(groups)} != Sturm count {n_exact}"
        )
    if not groups:
        return []

    roots = []
    for g in groups:
        mult = len(g)
        x = sum(g) / mult
        if mult > 1:
            # multiplicity-aware Newton to sharpen the cluster center
            for _ in range(30):
                v, d = val_dval(x)
                if d == 0.0:
                    break
                step = mult * v / d
                x -= step
                if abs(step) <= 1e-15 * (1.0 + abs(x)):
                    break
        roots.append((x, mult))

    scale = 1e-10 * (1.0 + max(abs(r) for r, _ in roots) ** deg)
    for r, mult in roots:
        v, _ = val_dval(r)
        if mult == 1 and abs(v) > scale:
            raise RootCountMismatch(f"root {r} residual {v} above tolerance")
    return roots
