"""Asymptotic Hilbert functions/polynomials: closed forms for disjoint
linear flats, the intersecting-lines family, and exact finite-m
convergence reports.

Limits are never numerically extrapolated: reports place exact finite-m
values next to exact closed-form targets.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial, floor

from .configs import (
    Config,
    FlatConfig,
    PointConfig,
    UnionConfig,
    config_to_dict,
    configs_disjoint,
    symbolic_power,
    _flats_disjoint,
)
from .groebner import (
    ComputationLimitError,
    GenericityError,
    derive_seed,
    gin,
    regularity_surrogate,
)
from .polyhedra import clipped_volume, newton_polyhedron, scale
from .staircase import lattice_volume_error_bound

TOOL_VERSION = "0.1.0"


# -- exact polynomial carriers ---------------------------------------------


@dataclass(frozen=True)
class UniPoly:
    """Univariate polynomial in t, ascending Fraction coefficients."""

    coeffs: tuple

    @classmethod
    def of(cls, coeffs):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        return cls(tuple(cs))

    @classmethod
    def constant(cls, c):
        return cls.of([c])

    @classmethod
    def t_power(cls, k, c=1):
        return cls.of([0] * k + [c])

    def degree(self):
        return len(self.coeffs) - 1

    def __add__(self, other):
        if not isinstance(other, UniPoly):
            other = UniPoly.constant(other)
        size = max(len(self.coeffs), len(other.coeffs))
        return UniPoly.of(
            [
                (self.coeffs[i] if i < len(self.coeffs) else 0)
                + (other.coeffs[i] if i < len(other.coeffs) else 0)
                for i in range(size)
            ]
        )

    def __neg__(self):
        return UniPoly.of([-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, UniPoly):
            other = UniPoly.constant(other)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            return UniPoly.of([c * Fraction(other) for c in self.coeffs])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs))
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly.of(out)

    __rmul__ = __mul__

    def __call__(self, t):
        t = Fraction(t)
        total = Fraction(0)
        for c in reversed(self.coeffs):
            total = total * t + c
        return total

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            if k == 0:
                body = str(abs(c))
            else:
                var = "t" if k == 1 else f"t^{k}"
                body = var if abs(c) == 1 else f"{abs(c)}*{var}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)


@dataclass(frozen=True)
class BiPoly:
    """Polynomial in (m, t): mapping (m_power, t_power) -> Fraction."""

    coeffs: tuple  # sorted ((i, j), Fraction) pairs

    @classmethod
    def of(cls, mapping):
        items = tuple(
            sorted(((i, j), Fraction(c)) for (i, j), c in mapping.items() if c)
        )
        return cls(items)

    def as_dict(self):
        return dict(self.coeffs)

    def degree_m(self):
        return max((i for (i, _), _ in self.coeffs), default=-1)

    def coefficient_of_m(self, k) -> UniPoly:
        out = {}
        for (i, j), c in self.coeffs:
            if i == k:
                out[j] = c
        size = max(out, default=-1) + 1
        return UniPoly.of([out.get(j, 0) for j in range(size)])

    def __add__(self, other):
        out = self.as_dict()
        for key, c in other.coeffs:
            out[key] = out.get(key, 0) + c
        return BiPoly.of(out)

    def __call__(self, m, t):
        m, t = Fraction(m), Fraction(t)
        return sum((c * m**i * t**j for (i, j), c in self.coeffs), Fraction(0))


def power_sum(k) -> UniPoly:
    """S_k(m) = sum_{i=0}^{m-1} i^k as a polynomial in m (Faulhaber)."""
    sums = []
    for j in range(k + 1):
        p = UniPoly.t_power(j + 1)  # m^{j+1}
        for i in range(j):
            p = p - comb(j + 1, i) * sums[i]
        sums.append(p * Fraction(1, j + 1))
    return sums[k]


# -- closed forms for s disjoint r-flats -----------------------------------


def _check_flat_params(n, r, s, m=1):
    if not (0 <= r < n):
        raise ValueError(f"need 0 <= r < n, got r={r}, n={n}")
    if s < 1 or m < 1:
        raise ValueError("need s >= 1 and m >= 1")


def _binom_poly(shift, r) -> UniPoly:
    """C(t + shift, r) expanded in t: prod_{k=0..r-1} (t + shift - k) / r!."""
    p = UniPoly.constant(1)
    for k in range(r):
        p = p * UniPoly.of([Fraction(shift - k), 1])
    return p * Fraction(1, factorial(r))


def flats_hp(n, r, s, m) -> UniPoly:
    """Hilbert polynomial of the m-th symbolic power of s disjoint r-flats
    in P^n, as an exact polynomial in t:
    s * sum_{0 <= i < m} C(t-i+r, r) * C(i+n-r-1, n-r-1)."""
    _check_flat_params(n, r, s, m)
    total = UniPoly.of([])
    for i in range(m):
        total = total + _binom_poly(r - i, r) * comb(i + n - r - 1, n - r - 1)
    return total * s


def flats_hp_bivariate(n, r, s) -> BiPoly:
    """HP_{I^(m)}(m*t) as an exact polynomial in (m, t).

    The summand C(mt-i+r, r)*C(i+n-r-1, n-r-1) is expanded as a polynomial
    in (u, i) with u = m*t, the i-sum is closed by Faulhaber power sums,
    and u^a is rewritten as m^a t^a.
    """
    _check_flat_params(n, r, s)
    # polynomial in (u, i): dict (u_pow, i_pow) -> Fraction
    term = {(0, 0): Fraction(1)}

    def times_linear(poly, cu, ci, const):
        out = {}
        for (a, b), c in poly.items():
            for da, db, f in ((1, 0, cu), (0, 1, ci), (0, 0, const)):
                if f:
                    key = (a + da, b + db)
                    out[key] = out.get(key, 0) + c * Fraction(f)
        return out

    for k in range(r):
        term = times_linear(term, 1, -1, r - k)  # (u - i + r - k)
    for k in range(n - r - 1):
        term = times_linear(term, 0, 1, k + 1)  # (i + k + 1)
    scale_c = Fraction(s, factorial(r) * factorial(n - r - 1))

    # sum over i = 0..m-1: i^b -> S_b(m); then u^a -> m^a t^a
    out = {}
    for (a, b), c in term.items():
        for mp, fc in enumerate(power_sum(b).coeffs):
            if fc:
                key = (mp + a, a)
                out[key] = out.get(key, 0) + c * fc * scale_c
    return BiPoly.of(out)


def ahp_flats(n, r, s):
    """(aHP, Lambda) for s disjoint r-flats in P^n.

    aHP is the m^n slice of the bivariate polynomial; Lambda(n,r,s) is
    t^n/n! - aHP.
    """
    bi = flats_hp_bivariate(n, r, s)
    assert bi.degree_m() <= n, "bivariate degree in m exceeds ambient dimension"
    ahp = bi.coefficient_of_m(n)
    lam = UniPoly.t_power(n, Fraction(1, factorial(n))) - ahp
    return ahp, lam


# -- the intersecting-lines family (two lines through a point in P^3) ------


def intersecting_lines_hp(m) -> UniPoly:
    """HP of the m-th symbolic power of two lines meeting in a point in P^3:
    (m^2+m) t - m^3 + m^2/2 + 3m/2."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return UniPoly.of(
        [-(m**3) + Fraction(m**2, 2) + Fraction(3 * m, 2), m**2 + m]
    )


def intersecting_lines_bivariate() -> BiPoly:
    """HP_{L^(m)}(m*t) for the intersecting-lines pair, in (m, t)."""
    return BiPoly.of(
        {
            (3, 1): 1,
            (2, 1): 1,
            (3, 0): -1,
            (2, 0): Fraction(1, 2),
            (1, 0): Fraction(3, 2),
        }
    )


def ahp_intersecting_lines() -> UniPoly:
    """m^3 slice of the intersecting-lines bivariate polynomial: t - 1."""
    return intersecting_lines_bivariate().coefficient_of_m(3)


# -- closed-form aHP per configuration -------------------------------------


def ahp_of_config(config: Config) -> UniPoly:
    """Closed-form aHP where one is known: point sets, pairwise-disjoint
    flats, the intersecting-lines pair in P^3, and disjoint unions of
    these."""
    n = config.n
    if isinstance(config, PointConfig):
        return UniPoly.constant(Fraction(len(config.points), factorial(n)))
    if isinstance(config, FlatConfig):
        if config.pairwise_disjoint:
            total = UniPoly.of([])
            for r in config.flat_dimensions:
                total = total + ahp_flats(n, r, 1)[0]
            return total
        if (
            n == 3
            and len(config.flats) == 2
            and config.flat_dimensions == (1, 1)
            and _lines_meet_in_point(config)
        ):
            return ahp_intersecting_lines()
        raise ValueError("no closed-form aHP for this flat configuration")
    if isinstance(config, UnionConfig):
        parts = config.parts
        for i in range(len(parts)):
            for j in range(i + 1, len(parts)):
                if not configs_disjoint(parts[i], parts[j]):
                    raise ValueError("union parts are not disjoint")
        total = UniPoly.of([])
        for p in parts:
            total = total + ahp_of_config(p)
        return total
    raise TypeError(f"unsupported configuration {type(config).__name__}")


def _lines_meet_in_point(config: FlatConfig) -> bool:
    a, b = config.flats
    return not _flats_disjoint(a, b, config.n)


@dataclass(frozen=True)
class AdditivityReport:
    ahp_a: UniPoly
    ahp_b: UniPoly
    total: UniPoly


def ahp_additivity_check(config_a: Config, config_b: Config) -> AdditivityReport:
    """aHP additivity over disjoint configurations; disjointness is checked
    exactly and non-disjoint inputs are rejected."""
    if not configs_disjoint(config_a, config_b):
        raise ValueError("configurations are not disjoint")
    pa, pb = ahp_of_config(config_a), ahp_of_config(config_b)
    return AdditivityReport(pa, pb, pa + pb)


# -- convergence reports ---------------------------------------------------


@dataclass
class ReportRow:
    m: int
    count: int = None
    count_over_mn: Fraction = None
    vol_lm_scaled: Fraction = None  # vol(L_{m,t}/m), staircase path
    vol_gamma_scaled: Fraction = None  # vol(Gamma_{m,t})/m^n, staircase path
    vol_gamma_convex: Fraction = None  # t^n/n! - vol(conv(L_m)/m within T_t)
    regularity: int = None
    below_regularity: bool = None
    lattice_bound_ok: bool = None
    staircase = None
    error: str = None


@dataclass
class ConvergenceReport:
    family: str
    n: int
    t: Fraction
    seed: int
    entry_bound: int
    config: dict
    rows: list
    target: UniPoly | None = None
    factorial_chain_monotone: bool = None
    sandwich_checks: list = field(default_factory=list)  # (m_fact, p, ok)

    def target_value(self):
        return None if self.target is None else self.target(self.t)

    def to_rows(self):
        tv = self.target_value()
        out = []
        for r in self.rows:
            if r.error:
                out.append([r.m, "ERROR", r.error, "", "", "", ""])
                continue
            gap = "" if tv is None else str(tv - r.count_over_mn)
            out.append(
                [
                    r.m,
                    r.count,
                    str(r.count_over_mn),
                    str(r.vol_gamma_scaled),
                    str(r.vol_gamma_convex),
                    "" if tv is None else str(tv),
                    gap,
                ]
            )
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(
            ["m", "count", "count_over_mn", "vol_staircase", "vol_convex",
             "target", "gap"]
        )
        writer.writerows(self.to_rows())
        return buf.getvalue()

    def to_json(self) -> str:
        tv = self.target_value()
        return json.dumps(
            {
                "family": self.family,
                "n": self.n,
                "t": str(self.t),
                "seed": self.seed,
                "entry_bound": self.entry_bound,
                "tool_version": TOOL_VERSION,
                "config": self.config,
                "target": None if self.target is None else str(self.target),
                "target_value": None if tv is None else str(tv),
                "factorial_chain_monotone": self.factorial_chain_monotone,
                "sandwich_checks": [
                    {"m_factorial": a, "p": b, "ok": ok}
                    for a, b, ok in self.sandwich_checks
                ],
                "rows": [
                    {
                        "m": r.m,
                        "error": r.error,
                        "count": r.count,
                        "count_over_mn": _s(r.count_over_mn),
                        "vol_lm_scaled": _s(r.vol_lm_scaled),
                        "vol_gamma_scaled": _s(r.vol_gamma_scaled),
                        "vol_gamma_convex": _s(r.vol_gamma_convex),
                        "regularity": r.regularity,
                        "below_regularity": r.below_regularity,
                        "lattice_bound_ok": r.lattice_bound_ok,
                    }
                    for r in self.rows
                ],
            },
            indent=2,
        )


def _s(x):
    return None if x is None else str(x)


def _is_factorial(m):
    f, k = 1, 1
    while f < m:
        k += 1
        f *= k
    return f == m


def compute_report_row(config: Config, t, m, seed, entry_bound) -> ReportRow:
    """One (config, m) row: symbolic power -> gin -> staircase, lattice
    count of the complement and both volume paths.  Resource and
    genericity failures are captured in the row, not raised."""
    t = Fraction(t)
    n = config.n
    row = ReportRow(m=m)
    try:
        sp = symbolic_power(config, m)
        g = gin(sp.ideal, derive_seed(seed, "row", m), entry_bound)
        st = g.staircase
        mt = Fraction(m) * t
        row.count = st.count_gamma(floor(mt))
        row.count_over_mn = Fraction(row.count, m**n)
        row.vol_lm_scaled = st.lm_volume(mt) / m**n
        row.vol_gamma_scaled = st.gamma_volume(mt) / m**n
        if st.is_empty():
            row.vol_gamma_convex = t**n / factorial(n)
        else:
            hull = scale(newton_polyhedron(st), Fraction(1, m))
            row.vol_gamma_convex = t**n / factorial(n) - clipped_volume(hull, t)
        row.regularity = regularity_surrogate(g)
        row.below_regularity = mt < row.regularity
        row.lattice_bound_ok = abs(
            row.count - st.gamma_volume(mt)
        ) <= lattice_volume_error_bound(n, m, t)
        row.staircase = st
    except (ComputationLimitError, GenericityError) as exc:
        row.error = f"{type(exc).__name__}: {exc}"
    return row


def ahf_estimate(
    config: Config,
    t,
    m_list,
    seed: int = 0,
    entry_bound: int = 100,
    family: str = "config",
    jobs: int = 1,
) -> ConvergenceReport:
    """Exact finite-m data for the asymptotic Hilbert function at t.

    Closed-form target attached when the configuration has one.  Rows
    failing with resource or genericity errors are flagged, not fatal.
    Rows are independent; jobs > 1 computes them in worker processes and
    merges in m order.
    """
    if not m_list or list(m_list) != sorted(set(m_list)):
        raise ValueError("m_list must be nonempty and strictly increasing")
    t = Fraction(t)
    n = config.n
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(
                pool.map(
                    compute_report_row,
                    [config] * len(m_list),
                    [t] * len(m_list),
                    m_list,
                    [seed] * len(m_list),
                    [entry_bound] * len(m_list),
                )
            )
    else:
        rows = [
            compute_report_row(config, t, m, seed, entry_bound) for m in m_list
        ]

    try:
        target = ahp_of_config(config)
    except (ValueError, TypeError):
        target = None

    report = ConvergenceReport(
        family=family,
        n=n,
        t=t,
        seed=seed,
        entry_bound=entry_bound,
        config=config_to_dict(config),
        rows=rows,
        target=target,
    )

    good = {r.m: r for r in rows if r.error is None}
    fact_ms = [m for m in sorted(good) if _is_factorial(m)]
    vols = [good[m].vol_lm_scaled for m in fact_ms]
    report.factorial_chain_monotone = all(
        a <= b for a, b in zip(vols, vols[1:])
    )
    for mf in fact_ms:
        for p in sorted(good):
            if p >= mf:
                lhs = Fraction(p - mf, p) ** n * good[mf].vol_lm_scaled
                report.sandwich_checks.append(
                    (mf, p, lhs <= good[p].vol_lm_scaled)
                )
    return report
