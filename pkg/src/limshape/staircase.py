"""Monomial-ideal staircases: membership, lattice counts, Hilbert functions.

A staircase is the upward-closed exponent set of a monomial ideal in n
(dehomogenized) variables, stored by its antichain of minimal generators.
Lattice counting is done by inclusion-exclusion over generator joins, with
a brute-force enumerator kept as the independent oracle.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, factorial, floor

from .rings import divides, exp_lcm, degree

# inclusion-exclusion is exponential in #generators; beyond this we enumerate
IE_GENERATOR_LIMIT = 20


def minimalize(gens):
    """Antichain of componentwise-minimal elements, canonically sorted."""
    gens = sorted(set(tuple(g) for g in gens))
    keep = []
    for g in gens:
        if any(divides(h, g) for h in keep if h != g):
            continue
        keep = [h for h in keep if not (divides(g, h) and g != h)]
        keep.append(g)
    return tuple(sorted(keep))


def simplex_count(bound: int, n: int) -> int:
    """#{a in Z^n_{>=0} : sum a_i <= bound}."""
    if bound < 0:
        return 0
    return comb(bound + n, n)


def monomials_in_ideal_count(gens, d: int, nvars: int) -> int:
    """Number of exponent vectors a with sum(a) = d lying in the monomial
    ideal generated by gens (inclusion-exclusion over generator joins)."""
    total = 0
    gens = list(gens)
    for k in range(1, len(gens) + 1):
        for sub in combinations(gens, k):
            join = sub[0]
            for g in sub[1:]:
                join = exp_lcm(join, g)
            rem = d - degree(join)
            if rem >= 0:
                total += (-1) ** (k + 1) * comb(rem + nvars - 1, nvars - 1)
    return total


@dataclass(frozen=True)
class MonomialStaircase:
    nvars: int
    min_gens: tuple  # antichain of exponent tuples, sorted

    @classmethod
    def from_generators(cls, nvars, gens):
        gens = [tuple(g) for g in gens]
        for g in gens:
            if len(g) != nvars:
                raise ValueError("generator length != nvars")
            if any(e < 0 for e in g):
                raise ValueError("negative exponent in generator")
        return cls(nvars, minimalize(gens))

    def is_empty(self):
        """True for the zero ideal (no generators)."""
        return not self.min_gens

    def membership(self, alpha) -> bool:
        alpha = tuple(alpha)
        if len(alpha) != self.nvars:
            raise ValueError("exponent length != nvars")
        return any(divides(g, alpha) for g in self.min_gens)

    # -- lattice counting --------------------------------------------------

    def count_inside(self, bound: int) -> int:
        """#{a : a in staircase, sum a_i <= bound} by inclusion-exclusion."""
        if len(self.min_gens) > IE_GENERATOR_LIMIT:
            return sum(
                monomials_in_ideal_count(self.min_gens, d, self.nvars)
                for d in range(bound + 1)
            )
        n = self.nvars
        total = 0
        for k in range(1, len(self.min_gens) + 1):
            for sub in combinations(self.min_gens, k):
                join = sub[0]
                for g in sub[1:]:
                    join = exp_lcm(join, g)
                total += (-1) ** (k + 1) * simplex_count(bound - degree(join), n)
        return total

    def count_gamma(self, bound: int) -> int:
        """Lattice points of the complement within the corner simplex:
        #{a in Z^n_{>=0} : a not in staircase, sum a_i <= bound}."""
        if bound < 0:
            raise ValueError("bound must be >= 0")
        return simplex_count(bound, self.nvars) - self.count_inside(bound)

    def count_gamma_bruteforce(self, bound: int) -> int:
        """Direct enumeration; the oracle for count_gamma."""
        count = 0
        for alpha in _simplex_points(self.nvars, bound):
            if not self.membership(alpha):
                count += 1
        return count

    def hilbert_function(self, d: int) -> int:
        """HF of the homogenized ideal in n+1 variables at degree d.

        Counts degree-d monomials in x1..x_{n+1} outside the ideal (its
        generators never involve x_{n+1}).  Via the x_{n+1}-filler bijection
        this equals count_gamma(d); both routes are computed and must agree.
        """
        if d < 0:
            raise ValueError("degree must be >= 0")
        n1 = self.nvars + 1
        slice_count = comb(d + n1 - 1, n1 - 1) - monomials_in_ideal_count(
            [g + (0,) for g in self.min_gens], d, n1
        )
        cumulative = self.count_gamma(d)
        assert slice_count == cumulative, (
            f"slice/cumulative mismatch at degree {d}: "
            f"{slice_count} vs {cumulative}"
        )
        return slice_count

    # -- semigroup containment checks -------------------------------------

    def contains_scaled(self, other: "MonomialStaircase", k: int):
        """Check k*alpha in self for every minimal generator alpha of other.

        Returns (ok, witness): witness is the first failing generator.
        """
        for g in other.min_gens:
            if not self.membership(tuple(k * e for e in g)):
                return False, g
        return True, None

    def contains_minkowski(self, p: "MonomialStaircase", q: "MonomialStaircase"):
        """Check g+h in self for all generators g of p, h of q."""
        for g in p.min_gens:
            for h in q.min_gens:
                s = tuple(a + b for a, b in zip(g, h))
                if not self.membership(s):
                    return False, (g, h)
        return True, None

    # -- exact volume of the complement region -----------------------------

    def gamma_volume(self, cutoff: Fraction) -> Fraction:
        """vol({x >= 0, sum x_i <= cutoff} \\ staircase region), exact.

        The staircase region is the union of corners g + R^n_{>=0}; each
        inclusion-exclusion join contributes a shifted corner simplex.
        """
        cutoff = Fraction(cutoff)
        if cutoff < 0:
            raise ValueError("cutoff must be >= 0")
        n = self.nvars
        vol = cutoff**n / factorial(n)
        for k in range(1, len(self.min_gens) + 1):
            for sub in combinations(self.min_gens, k):
                join = sub[0]
                for g in sub[1:]:
                    join = exp_lcm(join, g)
                rem = cutoff - degree(join)
                if rem > 0:
                    vol -= (-1) ** (k + 1) * rem**n / factorial(n)
        return vol

    def lm_volume(self, cutoff: Fraction) -> Fraction:
        """vol(staircase region intersected with the corner simplex)."""
        cutoff = Fraction(cutoff)
        return cutoff ** self.nvars / factorial(self.nvars) - self.gamma_volume(
            cutoff
        )

    # -- serialization -----------------------------------------------------

    def to_json(self) -> str:
        return json.dumps(
            {"nvars": self.nvars, "generators": [list(g) for g in self.min_gens]}
        )

    @classmethod
    def from_json(cls, text: str):
        data = json.loads(text)
        return cls.from_generators(data["nvars"], data["generators"])


def _simplex_points(n, bound):
    if n == 0:
        yield ()
        return
    for e in range(bound + 1):
        for rest in _simplex_points(n - 1, bound - e):
            yield (e,) + rest


def gamma_count_for(staircase: MonomialStaircase, m: int, t) -> int:
    """#Gamma_{m,t}: complement lattice points with coordinate sum <= floor(m*t)."""
    return staircase.count_gamma(floor(Fraction(m) * Fraction(t)))


def lattice_volume_error_bound(n: int, m: int, t) -> int:
    """Bound on |#Gamma_{m,t} - vol(Gamma_m within the mt-simplex)|:
    (n+2) * C(floor(mt)+n, n-1)."""
    return (n + 2) * comb(floor(Fraction(m) * Fraction(t)) + n, n - 1)
