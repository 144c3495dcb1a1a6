"""Dot-action normal form, Bott cohomology and filtered-bundle determinacy.

Orientation convention, pinned by the test vectors: a dominant weight has its
cohomology in degree 0 (sections), and the unique nonzero degree of a regular
weight is the Weyl length of the normalizing element.  Highest-weight labels
follow the sections-are-duals bookkeeping: the degree-0 label of O(lam) for
dominant lam is lam itself, standing for the dual representation; dimensions
are unaffected.

The characteristic-0 Bott theorem is implemented; the source conventions never
state a base field, and positive-characteristic Kempf subtleties are out of
scope.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .rootdata import RootSystem, Weight, WeylElement, wadd


@dataclass(frozen=True)
class CohomologyProfile:
    """Finite multiset of (cohomological degree, dominant weight, multiplicity)."""

    entries: tuple[tuple[int, Weight, int], ...]

    @staticmethod
    def zero() -> "CohomologyProfile":
        return CohomologyProfile(())

    @staticmethod
    def of(entries: Iterable[tuple[int, Weight, int]]) -> "CohomologyProfile":
        merged: dict[tuple[int, Weight], int] = {}
        for deg, hw, mult in entries:
            if mult <= 0:
                raise ValueError("multiplicities must be positive")
            merged[(deg, hw)] = merged.get((deg, hw), 0) + mult
        return CohomologyProfile(
            tuple((d, hw, m) for (d, hw), m in sorted(merged.items()))
        )

    @property
    def is_zero(self) -> bool:
        return not self.entries

    def degrees(self) -> tuple[int, ...]:
        return tuple(sorted({d for d, _, _ in self.entries}))

    def shift(self, by: int) -> "CohomologyProfile":
        return CohomologyProfile.of((d + by, hw, m) for d, hw, m in self.entries)

    def union(self, other: "CohomologyProfile") -> "CohomologyProfile":
        return CohomologyProfile.of(self.entries + other.entries)

    def dimensions(self, rs: RootSystem) -> dict[int, int]:
        dims: dict[int, int] = {}
        for d, hw, m in self.entries:
            dims[d] = dims.get(d, 0) + m * weyl_dim(rs, hw)
        return dims

    def total_dim(self, rs: RootSystem) -> int:
        return sum(self.dimensions(rs).values())

    def euler(self, rs: RootSystem) -> int:
        return sum((-1) ** d * n for d, n in self.dimensions(rs).items())


#: The profile "k": one-dimensional, trivial weight, degree 0.
def trivial_profile(degree: int = 0) -> CohomologyProfile:
    return CohomologyProfile(((degree, (0, 0), 1),))


@dataclass(frozen=True)
class BottOutcome:
    """Result of the dot-action normal form: singular, or (w, nu) with
    w(lam+rho) = nu+rho strictly dominant."""

    singular: bool
    w: Optional[WeylElement] = None
    nu: Optional[Weight] = None


@lru_cache(maxsize=None)
def dot_normalize(rs: RootSystem, lam: Weight) -> BottOutcome:
    """Normalize lam under the dot action w.lam = w(lam+rho)-rho."""
    mu = wadd(lam, rs.rho)
    pairings = rs.coroot_pairings(mu)
    if any(p == 0 for p in pairings):
        return BottOutcome(singular=True)
    negatives = sum(1 for p in pairings if p < 0)
    matrix = rs.identity.matrix
    steps = 0
    while True:
        try:
            i = next(k for k, c in enumerate(mu) if c < 0)
        except StopIteration:
            break
        mu = rs.reflect(i, mu)
        # the composite applied so far becomes s_i o (previous)
        steps += 1
        matrix = _compose_reflection(rs, i, matrix)
        if steps > rs.weyl_order:
            raise RuntimeError("dominance walk failed to terminate")
    w = rs.element_from_matrix(matrix)
    if w.length != negatives:
        raise RuntimeError("dot-normal form length mismatch")
    nu = tuple(c - 1 for c in mu)
    return BottOutcome(singular=False, w=w, nu=nu)


def _compose_reflection(rs: RootSystem, i: int, matrix):
    alpha = rs.simple_roots[i].weight_coords
    n = rs.rank
    refl = tuple(
        tuple(int(r == c) - (alpha[r] if c == i else 0) for c in range(n))
        for r in range(n)
    )
    return tuple(
        tuple(sum(refl[r][k] * matrix[k][c] for k in range(n)) for c in range(n))
        for r in range(n)
    )


@lru_cache(maxsize=None)
def line_cohomology(rs: RootSystem, lam: Weight) -> CohomologyProfile:
    """Bott cohomology of the line bundle O(lam) on the full flag variety."""
    outcome = dot_normalize(rs, lam)
    if outcome.singular:
        return CohomologyProfile.zero()
    return CohomologyProfile(((outcome.w.length, outcome.nu, 1),))


@lru_cache(maxsize=None)
def weyl_dim(rs: RootSystem, lam: Weight) -> int:
    """Dimension of the irreducible with highest weight lam (Weyl formula)."""
    if not rs.is_dominant(lam):
        raise ValueError(f"{lam} is not dominant")
    num = Fraction(1)
    shifted = wadd(lam, rs.rho)
    for alpha in rs.positive_roots:
        num *= Fraction(rs.pairing(shifted, alpha), rs.pairing(rs.rho, alpha))
    if num.denominator != 1:
        raise RuntimeError("Weyl dimension did not come out integral")
    return int(num)


@dataclass(frozen=True)
class FilteredResult:
    """Outcome of evaluating a filtered bundle through its graded pieces.

    ``pieces`` is the E1 page: the exact profile of each piece in filtration
    order.  ``determined`` means the spectral sequence cannot connect any two
    pieces (their nonzero degrees are pairwise >= 2 apart), so the union is
    the answer.
    """

    determined: bool
    profile: Optional[CohomologyProfile]
    pieces: tuple[tuple[object, CohomologyProfile], ...]

    @property
    def is_zero(self) -> bool:
        return self.determined and self.profile.is_zero


def combine_pieces(
    labeled: Sequence[tuple[object, CohomologyProfile]],
) -> FilteredResult:
    """Combine exact piece profiles under the degree-gap determinacy rule.

    Determined iff (a) all pieces vanish, (b) exactly one piece is nonzero, or
    (c) the occupied degrees of distinct nonzero pieces are pairwise separated
    by at least 2.  Anything else is honestly Indeterminate.
    """
    nonzero = [(lab, p) for lab, p in labeled if not p.is_zero]
    if not nonzero:
        return FilteredResult(True, CohomologyProfile.zero(), tuple(labeled))
    if len(nonzero) == 1:
        return FilteredResult(True, nonzero[0][1], tuple(labeled))
    for i in range(len(nonzero)):
        for j in range(i + 1, len(nonzero)):
            for d1 in nonzero[i][1].degrees():
                for d2 in nonzero[j][1].degrees():
                    if abs(d1 - d2) < 2:
                        return FilteredResult(False, None, tuple(labeled))
    total = CohomologyProfile.zero()
    for _, p in nonzero:
        total = total.union(p)
    return FilteredResult(True, total, tuple(labeled))


def filtered_cohomology(rs: RootSystem, weights: Sequence[Weight]) -> FilteredResult:
    """Cohomology of a bundle with the given line-bundle filtration weights."""
    ws = tuple(weights)
    if not ws:
        raise ValueError("empty weight filtration is disallowed")
    labeled = [(w, line_cohomology(rs, w)) for w in ws]
    return combine_pieces(labeled)


def euler_characteristic(rs: RootSystem, weights: Sequence[Weight]) -> int:
    """Signed Bott dimension sum; filtration-independent, always exact."""
    total = 0
    for w in weights:
        total += line_cohomology(rs, w).euler(rs)
    return total


def parabolic_cohomology(
    rs: RootSystem, levi_simples: frozenset[int] | set[int], lam: Weight
) -> CohomologyProfile:
    """Bott cohomology of the irreducible equivariant bundle E_lam on G/P.

    Agrees with line_cohomology on the flag variety but enters through the
    Levi highest weight, so results are certified exact with no filtration
    ambiguity.  Requires lam to be Levi-dominant.
    """
    for i in levi_simples:
        if rs.pairing(lam, rs.simple_roots[i]) < 0:
            raise ValueError(f"{lam} is not dominant for the Levi root alpha_{i}")
    return line_cohomology(rs, lam)


def serre_dual_weight(rs: RootSystem, lam: Weight) -> Weight:
    """omega_{G/B} twist partner: omega = O(-2 rho)."""
    return tuple(-2 - c for c in lam)


def format_profile(profile: CohomologyProfile) -> str:
    """Human-readable profile: "0", "k", "k[-1]", "2*V(1,0)[-3] + ..."."""
    if profile.is_zero:
        return "0"
    parts = []
    for d, hw, m in profile.entries:
        if hw == tuple(0 for _ in hw):
            body = "k" if m == 1 else f"k^{m}"
        else:
            label = "V(" + ",".join(str(c) for c in hw) + ")"
            body = label if m == 1 else f"{m}*{label}"
        if d:
            body += f"[-{d}]"
        parts.append(body)
    return " + ".join(parts)
