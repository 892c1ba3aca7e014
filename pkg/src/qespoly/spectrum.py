"""QES level extraction, factorization checks, norms, weights and moments
for the double sinh-Gordon well.

For positive integer M the first M levels are algebraic: they are the roots
of the critical members of the two chains, shifted back from the recursion
variable by (M + zeta)**2.  Which chain carries which node parity depends
on the parity of M:

    M odd  = 2k+1:  even nodes from P(s=0), critical index k+1 (k+1 levels)
                    odd  nodes from Q(s=1/2), critical index k (k levels)
    M even = 2k+2:  even nodes from Q(s=0), critical index k+1 (k+1 levels)
                    odd  nodes from P(s=1/2), critical index k+1 (k+1 levels)

The discrete weight function supported on a chain's own levels makes that
chain an orthogonal set; weights are generically indefinite here, which the
sign pattern of the recursion (all a_k < 0 before termination) predicts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exactpoly import (
    EnergyPoly,
    ParamPoly,
    as_rational,
    poly_divide_exact,
    real_roots,
)
from .families import (
    ChainSpec,
    ThreeTermForm,
    critical_index,
    gen_family,
    gen_quotient,
)


class QESDomainError(ValueError):
    """Raised when QES extraction is requested outside its domain."""


@dataclass(frozen=True)
class ChainPlanEntry:
    node_parity: str          # "even" | "odd"
    chain_kind: str           # "P" | "Q"
    s: Fraction
    critical_index: int
    level_count: int


@dataclass(frozen=True)
class ChainPlan:
    m: int
    entries: tuple

    def entry(self, chain_kind: str) -> ChainPlanEntry:
        for e in self.entries:
            if e.chain_kind == chain_kind:
                return e
        raise QESDomainError(f"chain {chain_kind} carries no QES levels at M={self.m}")


@dataclass(frozen=True)
class QESLevel:
    energy: float
    script_energy: float
    nodes: int
    chain: str


@dataclass(frozen=True)
class SpectrumReport:
    m: int
    zeta: float
    levels: tuple

    def energies(self) -> list:
        return [lv.energy for lv in self.levels]

    def to_json_dict(self) -> dict:
        return {
            "m": self.m,
            "zeta": self.zeta,
            "levels": [
                {
                    "E": lv.energy,
                    "script_E": lv.script_energy,
                    "nodes": lv.nodes,
                    "chain": lv.chain,
                }
                for lv in self.levels
            ],
        }

    def to_csv_rows(self) -> list:
        rows = [["E", "script_E", "nodes", "chain"]]
        for lv in self.levels:
            rows.append([repr(lv.energy), repr(lv.script_energy), str(lv.nodes), lv.chain])
        return rows


@dataclass(frozen=True)
class WeightTable:
    chain: str
    support: tuple            # ((E_k, w_k), ...) ascending in E
    condition: float
    residual: float
    exact: bool = False

    def weights(self) -> list:
        return [w for _, w in self.support]

    def to_json_dict(self) -> dict:
        return {
            "chain": self.chain,
            "weights": [{"E": e, "w": w} for e, w in self.support],
            "condition": self.condition,
            "residual": self.residual,
            "exact": self.exact,
        }


@dataclass(frozen=True)
class NormSequence:
    chain: str
    values: tuple             # ParamPoly, exact closed forms gamma_0..gamma_n
    zeta: float | None = None
    numeric: tuple = ()

    def to_json_dict(self) -> dict:
        out = {"chain": self.chain, "norms": [g.render() for g in self.values]}
        if self.zeta is not None:
            out["zeta"] = self.zeta
            out["norms_numeric"] = list(self.numeric)
        return out


@dataclass(frozen=True)
class MomentSequence:
    chain: str
    zeta: float
    values: tuple
    growth: tuple             # |mu_n|**(1/n) for n >= 1
    max_abs_energy: float
    leading_order_comparator: float   # (M + zeta)**2

    def to_json_dict(self) -> dict:
        return {
            "chain": self.chain,
            "zeta": self.zeta,
            "moments": list(self.values),
            "growth": list(self.growth),
            "max_abs_energy": self.max_abs_energy,
            "leading_order_comparator": self.leading_order_comparator,
        }


def _require_positive_int(m) -> int:
    mr = as_rational(m)
    if mr.denominator != 1 or mr < 1:
        raise QESDomainError("QES requires positive integer M")
    return int(mr)


def chain_plan(m) -> ChainPlan:
    """Which chains carry the M algebraic levels, and where they terminate."""
    m = _require_positive_int(m)
    entries = []
    if m % 2 == 1:
        k = (m - 1) // 2
        entries.append(ChainPlanEntry("even", "P", Fraction(0), k + 1, k + 1))
        if k >= 1:
            entries.append(ChainPlanEntry("odd", "Q", Fraction(1, 2), k, k))
    else:
        k = (m - 2) // 2
        entries.append(ChainPlanEntry("even", "Q", Fraction(0), k + 1, k + 1))
        entries.append(ChainPlanEntry("odd", "P", Fraction(1, 2), k + 1, k + 1))
    return ChainPlan(m, tuple(entries))


def critical_polynomial(m: int, entry: ChainPlanEntry) -> EnergyPoly:
    spec = ChainSpec(entry.chain_kind, Fraction(m), entry.s)
    fam = gen_family(spec, entry.critical_index)
    return fam[entry.critical_index]


def chain_roots(m: int, zeta: float, entry: ChainPlanEntry) -> list:
    """Simple real roots (shifted energy) of a chain's critical member."""
    poly = critical_polynomial(m, entry)
    roots = real_roots(poly, zeta)
    if sum(mult for _, mult in roots) != entry.level_count:
        raise QESDomainError("non-real QES root")
    if any(mult > 1 for _, mult in roots):
        raise QESDomainError("degenerate QES root")
    return [r for r, _ in roots]


def qes_energies(m, zeta: float) -> SpectrumReport:
    """The M algebraic levels, sorted, with node counts and chain labels."""
    m = _require_positive_int(m)
    if zeta <= 0:
        raise QESDomainError("zeta must be positive")
    shift = (m + zeta) ** 2
    levels = []
    for entry in chain_plan(m).entries:
        base = 0 if entry.node_parity == "even" else 1
        for rank, root in enumerate(chain_roots(m, zeta, entry)):
            levels.append(
                QESLevel(root + shift, root, base + 2 * rank, entry.chain_kind)
            )
    levels.sort(key=lambda lv: lv.energy)
    if [lv.nodes for lv in levels] != list(range(m)):
        raise QESDomainError("node interlacing violated")
    return SpectrumReport(m, zeta, tuple(levels))


# ----------------------------------------------------------------------
# Factorization through the critical member
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class FactorizationEntry:
    chain_kind: str
    s: Fraction
    quotient_kind: str
    critical: int
    remainders_zero: tuple
    quotients_match: tuple

    def ok(self) -> bool:
        return all(self.remainders_zero) and all(self.quotients_match)


@dataclass(frozen=True)
class FactorizationReport:
    m: int
    depth: int
    entries: tuple

    def ok(self) -> bool:
        return all(e.ok() for e in self.entries)


def factorization_check(m, depth: int) -> FactorizationReport:
    """Divide post-critical members by the critical member, exactly.

    For every n <= depth the remainder must vanish identically and the
    quotient must equal the corresponding quotient-chain member.
    """
    m = _require_positive_int(m)
    if m % 2 == 1:
        combos = [("P", Fraction(0), "Pbar"), ("Q", Fraction(1, 2), "Qbar")]
    else:
        combos = [("P", Fraction(1, 2), "Rbar"), ("Q", Fraction(0), "Sbar")]
    entries = []
    for kind, s, qkind in combos:
        crit = int(critical_index(kind, Fraction(m), s))
        spec = ChainSpec(kind, Fraction(m), s)
        fam = gen_family(spec, crit + depth)
        quot = gen_quotient(ChainSpec(qkind, Fraction(m), s), depth)
        critical = fam[crit]
        rems, matches = [], []
        for n in range(depth + 1):
            q, r = poly_divide_exact(fam[crit + n], critical)
            rems.append(r.is_zero())
            matches.append(q == quot[n])
        entries.append(
            FactorizationEntry(kind, s, qkind, crit, tuple(rems), tuple(matches))
        )
    return FactorizationReport(m, depth, tuple(entries))


# ----------------------------------------------------------------------
# Norms
# ----------------------------------------------------------------------

def norms_closed(chain: str, m, s, n: int) -> ParamPoly:
    """Closed-form squared norm gamma_n as an exact monomial in zeta.

    Main chains alternate in sign and vanish at the termination index;
    quotient-chain norms are positive for zeta > 0.
    """
    m = as_rational(m)
    s = as_rational(s)
    if n < 0:
        raise ValueError("n must be nonnegative")
    spec = ChainSpec(chain, m, s)  # validates the chain/parity combination
    coef = Fraction(1)
    if chain == "P":
        for k in range(1, n + 1):
            coef *= Fraction(-8) * k * (2 * k - 1) * (m - 2 * s - 2 * k + 1)
    elif chain == "Q":
        for k in range(1, n + 1):
            coef *= Fraction(-8) * k * (2 * k + 1) * (m - 2 * s - 2 * k)
    elif chain in ("Pbar", "Sbar"):
        for k in range(1, n + 1):
            coef *= Fraction(4) * (m + 2 * k + 1) * (m + 2 * k) * (2 * k + 2 * s)
    elif chain in ("Qbar", "Rbar"):
        for k in range(1, n + 1):
            coef *= Fraction(4) * (m + 2 * k) * (m + 2 * k - 1) * (2 * k + 2 * s - 1)
    else:
        raise QESDomainError(f"no norm formula for chain {chain!r}")
    if coef == 0:
        return ParamPoly.zero()
    return ParamPoly.monomial(coef, n)


def norms_from_recursion(form: ThreeTermForm, zeta: float | None = None) -> NormSequence:
    """Norms by the monic identity gamma_n = -C_{n+1} gamma_{n-1}, exactly."""
    gammas = [ParamPoly.const(1)]
    # form.c[k] is C_{k+1}; gamma_n needs C_2..C_{n+1}
    for k in range(1, len(form.c)):
        gammas.append(gammas[-1] * (-form.c[k]))
    numeric = ()
    if zeta is not None:
        numeric = tuple(g.eval_float(zeta) for g in gammas)
    return NormSequence(form.spec.kind, tuple(gammas), zeta, numeric)


# ----------------------------------------------------------------------
# Weights
# ----------------------------------------------------------------------

def _divisors(n: int, budget: int = 200000):
    n = abs(n)
    if n == 0 or n > 10**12:
        return None
    out = []
    d = 1
    steps = 0
    while d * d <= n:
        steps += 1
        if steps > budget:
            return None
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def _exact_rational_roots(uni: list) -> list | None:
    """All roots as Fractions if every root is rational, else None."""
    coeffs = list(uni)
    roots = []
    while coeffs and coeffs[0] == 0:
        roots.append(Fraction(0))
        coeffs = coeffs[1:]
    while len(coeffs) > 1:
        den = 1
        for c in coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        ints = [int(c * den) for c in coeffs]
        ps = _divisors(ints[0])
        qs = _divisors(ints[-1])
        if ps is None or qs is None:
            return None
        found = None
        for p in ps:
            for q in qs:
                for cand in (Fraction(p, q), Fraction(-p, q)):
                    acc = Fraction(0)
                    for c in reversed(coeffs):
                        acc = acc * cand + c
                    if acc == 0:
                        found = cand
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            return None
        roots.append(found)
        # synthetic deflation by (x - found)
        new = []
        acc = Fraction(0)
        for c in reversed(coeffs):
            acc = acc * found + c
            new.append(acc)
        coeffs = list(reversed(new[:-1]))
    return sorted(roots)


def _exact_solve(a, rhs):
    """Gaussian elimination over Fractions; a is a list of rows."""
    n = len(a)
    m = [row[:] + [rhs[i]] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise QESDomainError("degenerate support")
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [m[r][n] for r in range(n)]


def weights(m, zeta: float, chain: str) -> WeightTable:
    """Discrete weights on a chain's own levels from sum_k p_n(E_k) w_k = delta_n0.

    The square system runs over n = 0 .. (level count - 1).  The float path
    uses a partial-pivot solve with the condition number recorded; when
    every critical root is rational at this zeta (detected by the rational
    root theorem on the integerized polynomial) the system is solved in
    exact arithmetic instead.
    """
    m = _require_positive_int(m)
    entry = chain_plan(m).entry(chain)
    if entry.level_count < 1:
        raise QESDomainError("chain has no QES levels")
    spec = ChainSpec(entry.chain_kind, Fraction(m), entry.s)
    fam = gen_family(spec, max(entry.level_count - 1, 0))
    poly = critical_polynomial(m, entry)
    shift = (m + zeta) ** 2

    zr = as_rational(zeta)
    exact_roots = _exact_rational_roots(poly.specialize(zr))
    if exact_roots is not None:
        if len(set(exact_roots)) != len(exact_roots):
            raise QESDomainError("degenerate support")
        rows = []
        for n in range(entry.level_count):
            uni = fam[n].specialize(zr)
            rows.append([_eval_uni(uni, rk) for rk in exact_roots])
        rhs = [Fraction(1)] + [Fraction(0)] * (entry.level_count - 1)
        sol = _exact_solve(rows, rhs)
        support = tuple(
            (float(r) + shift, float(w)) for r, w in zip(exact_roots, sol)
        )
        return WeightTable(chain, support, condition=1.0, residual=0.0, exact=True)

    roots = chain_roots(m, zeta, entry)
    a = np.array(
        [[fam[n].eval_numeric(zeta, r) for r in roots] for n in range(entry.level_count)]
    )
    rhs = np.zeros(entry.level_count)
    rhs[0] = 1.0
    try:
        sol = np.linalg.solve(a, rhs)
    except np.linalg.LinAlgError as exc:
        raise QESDomainError("degenerate support") from exc
    residual = float(np.max(np.abs(a @ sol - rhs)))
    if residual > 1e-10:
        raise QESDomainError(f"weight system residual {residual} above tolerance")
    cond = float(np.linalg.cond(a))
    support = tuple((r + shift, float(w)) for r, w in zip(roots, sol))
    return WeightTable(chain, support, condition=cond, residual=residual)


def _eval_uni(coeffs, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


@dataclass(frozen=True)
class CrosscheckReport:
    chain: str
    zeta: float
    norm_deviations: tuple
    orthogonality_max: float
    ok: bool


def norm_weight_crosscheck(m, zeta: float, chain: str) -> CrosscheckReport:
    """Verify sum_k w_k p_n(E_k)^2 = gamma_n and the off-diagonal vanishing."""
    m = _require_positive_int(m)
    entry = chain_plan(m).entry(chain)
    table = weights(m, zeta, chain)
    count = entry.level_count
    spec = ChainSpec(entry.chain_kind, Fraction(m), entry.s)
    fam = gen_family(spec, count)
    shift = (m + zeta) ** 2
    script = [e - shift for e, _ in table.support]
    w = np.array(table.weights())
    values = np.array(
        [[fam[n].eval_numeric(zeta, r) for r in script] for n in range(count + 1)]
    )
    devs = []
    ok = True
    for n in range(count + 1):
        gamma = norms_closed(entry.chain_kind, m, entry.s, n).eval_float(zeta)
        total = float(np.dot(w, values[n] ** 2))
        dev = abs(total - gamma)
        devs.append(dev)
        if dev > 1e-9 * (1.0 + abs(gamma)):
            ok = False
    ortho = 0.0
    for i in range(count):
        for j in range(i + 1, count):
            ortho = max(ortho, abs(float(np.dot(w, values[i] * values[j]))))
    if ortho > 1e-9:
        ok = False
    return CrosscheckReport(chain, zeta, tuple(devs), ortho, ok)


def moments(m, zeta: float, chain: str, n_max: int) -> MomentSequence:
    """Power moments of the discrete weight, mu_n = sum_k w_k E_k**n.

    The growth sequence |mu_n|**(1/n) tends to max_k |E_k| for a finite
    atomic measure; the coarser comparator (M + zeta)**2 is reported
    alongside, not asserted.
    """
    m = _require_positive_int(m)
    table = weights(m, zeta, chain)
    energies = np.array([e for e, _ in table.support])
    w = np.array(table.weights())
    values = [1.0]
    for n in range(1, n_max + 1):
        values.append(float(np.dot(w, energies**n)))
    growth = tuple(
        abs(values[n]) ** (1.0 / n) if values[n] != 0 else 0.0
        for n in range(1, n_max + 1)
    )
    return MomentSequence(
        chain,
        zeta,
        tuple(values),
        growth,
        float(np.max(np.abs(energies))),
        (m + zeta) ** 2,
    )
