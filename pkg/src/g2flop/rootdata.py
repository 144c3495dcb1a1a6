"""Exact root-system, weight-lattice and Weyl-group arithmetic.

Everything is integer or Fraction arithmetic on plain tuples; weights live in
fundamental-weight coordinates throughout, so a weight ``(a, b)`` means
``a*omega_1 + b*omega_2``.  Roots carry both simple-root and fundamental-weight
coordinates so that all coroot pairings stay exact.

The engine accepts any finite-type generalized Cartan matrix (A1/A2/B2
instances serve as independent sanity oracles in the test suite), but the rest
of the package is wired to the pinned G2 instance: simple root 0 is the LONG
root, simple root 1 the short one, giving alpha_1 = (2, -3) and
alpha_2 = (-1, 2) in fundamental-weight coordinates.  The fundamental weight
(1, 0) is the class H pulled back from the 5-dimensional Grassmannian side and
(0, 1) is the class h from the quadric side.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

Weight = tuple[int, ...]

_WEYL_ORDER_CAP = 1_000_000


class RootSystemError(ValueError):
    """Raised for Cartan matrices that are not symmetrizable finite type."""


def wadd(*ws: Weight) -> Weight:
    return tuple(sum(cs) for cs in zip(*ws))


def wneg(w: Weight) -> Weight:
    return tuple(-c for c in w)


def wscale(n: int, w: Weight) -> Weight:
    return tuple(n * c for c in w)


@dataclass(frozen=True)
class Root:
    """A root in dual coordinates: simple-root basis and weight basis."""

    simple_coords: tuple[int, ...]
    weight_coords: Weight
    length_sq: Fraction

    def __neg__(self) -> "Root":
        return Root(wneg(self.simple_coords), wneg(self.weight_coords), self.length_sq)

    @property
    def height(self) -> int:
        return sum(self.simple_coords)


@dataclass(frozen=True)
class WeylElement:
    """Weyl group element: reduced word, matrix on weight coordinates, length."""

    word: tuple[int, ...]
    matrix: tuple[tuple[int, ...], ...]

    @property
    def length(self) -> int:
        return len(self.word)

    def apply(self, w: Weight) -> Weight:
        return tuple(sum(row[j] * w[j] for j in range(len(w))) for row in self.matrix)


def _identity(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def _matmul(a, b):
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )


@dataclass(frozen=True, eq=False)
class RootSystem:
    """Immutable finite root system; safe to share between threads."""

    rank: int
    cartan: tuple[tuple[int, ...], ...]
    symmetrizer: tuple[int, ...]
    simple_roots: tuple[Root, ...]
    positive_roots: tuple[Root, ...]
    rho: Weight
    elements: tuple[WeylElement, ...]
    _by_matrix: dict
    _pos_coords: frozenset

    @property
    def weyl_order(self) -> int:
        return len(self.elements)

    @property
    def longest_element(self) -> WeylElement:
        return max(self.elements, key=lambda w: w.length)

    @property
    def identity(self) -> WeylElement:
        return self.elements[0]

    def element_from_matrix(self, matrix) -> WeylElement:
        return self._by_matrix[matrix]

    def reflect(self, i: int, mu: Weight) -> Weight:
        """Simple reflection s_i(mu) = mu - <mu, alpha_i^v> alpha_i."""
        if not 0 <= i < self.rank:
            raise IndexError(f"simple index {i} out of range for rank {self.rank}")
        alpha = self.simple_roots[i].weight_coords
        return tuple(mu[k] - mu[i] * alpha[k] for k in range(self.rank))

    def pairing(self, mu: Weight, alpha: Root) -> int:
        """Coroot pairing <mu, alpha^v> = 2(mu, alpha)/(alpha, alpha)."""
        self._check_root(alpha)
        d = self.symmetrizer
        form = sum(c * d[j] * mu[j] for j, c in enumerate(alpha.simple_coords))
        value = Fraction(2 * form) / alpha.length_sq
        if value.denominator != 1:
            raise RootSystemError(f"non-integral pairing for {mu} and {alpha}")
        return int(value)

    def _check_root(self, alpha: Root) -> None:
        coords = alpha.simple_coords
        if coords not in self._pos_coords and wneg(coords) not in self._pos_coords:
            raise ValueError(f"{coords} is not a root of this system")

    def coroot_pairings(self, mu: Weight) -> tuple[int, ...]:
        return tuple(self.pairing(mu, alpha) for alpha in self.positive_roots)

    def is_dominant(self, mu: Weight) -> bool:
        return all(c >= 0 for c in mu)

    def is_regular(self, mu: Weight) -> bool:
        """True when no positive-root pairing of mu vanishes."""
        return all(p != 0 for p in self.coroot_pairings(mu))

    def orbit(self, mu: Weight) -> set[Weight]:
        return {w.apply(mu) for w in self.elements}

    def root_by_simple_coords(self, coords: Sequence[int]) -> Root:
        coords = tuple(coords)
        for r in self.positive_roots:
            if r.simple_coords == coords:
                return r
            if wneg(r.simple_coords) == coords:
                return -r
        raise ValueError(f"{coords} is not a root of this system")


def _validate_gcm(cartan: Sequence[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    n = len(cartan)
    rows = tuple(tuple(int(x) for x in row) for row in cartan)
    if any(len(row) != n for row in rows):
        raise RootSystemError("Cartan matrix must be square")
    for i in range(n):
        if rows[i][i] != 2:
            raise RootSystemError(f"diagonal entry c_{i}{i} = {rows[i][i]} must be 2")
        for j in range(n):
            if i != j:
                if rows[i][j] > 0:
                    raise RootSystemError(f"off-diagonal c_{i}{j} must be <= 0")
                if (rows[i][j] == 0) != (rows[j][i] == 0):
                    raise RootSystemError(f"c_{i}{j} and c_{j}{i} must vanish together")
    return rows


def _symmetrizer(cartan) -> tuple[int, ...]:
    # d_i c_ij = d_j c_ji; solve along the Dynkin graph, one unit per component.
    n = len(cartan)
    d: list[Fraction | None] = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if i == j or cartan[i][j] == 0:
                    continue
                ratio = d[i] * Fraction(cartan[i][j], cartan[j][i])
                if d[j] is None:
                    d[j] = ratio
                    stack.append(j)
                elif d[j] != ratio:
                    raise RootSystemError("Cartan matrix is not symmetrizable")
    denom_lcm = 1
    for x in d:
        denom_lcm = denom_lcm * x.denominator // _gcd(denom_lcm, x.denominator)
    ints = [int(x * denom_lcm) for x in d]
    g = 0
    for x in ints:
        g = _gcd(g, x)
    ints = [x // g for x in ints]
    for i in range(n):
        for j in range(n):
            if ints[i] * cartan[i][j] != ints[j] * cartan[j][i]:
                raise RootSystemError("Cartan matrix is not symmetrizable")
    return tuple(ints)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a) if a else abs(b)


def _is_positive_definite(b: Sequence[Sequence[Fraction]]) -> bool:
    # Leading principal minors via exact Gaussian elimination.
    n = len(b)
    m = [[Fraction(x) for x in row] for row in b]
    for k in range(n):
        if m[k][k] <= 0:
            return False
        for i in range(k + 1, n):
            factor = m[i][k] / m[k][k]
            for j in range(k, n):
                m[i][j] -= factor * m[k][j]
    return True


def build_root_system(cartan: Sequence[Sequence[int]]) -> RootSystem:
    """Build the full root system and Weyl group of a finite-type Cartan matrix.

    Rejects non-symmetrizable and non-finite-type input with a diagnostic.
    Positive roots are enumerated by root-string closure, the Weyl group by
    breadth-first closure over simple reflections (so stored words are
    reduced).
    """
    rows = _validate_gcm(cartan)
    n = len(rows)
    d = _symmetrizer(rows)
    sym = [[Fraction(d[i] * rows[i][j]) for j in range(n)] for i in range(n)]
    if not _is_positive_definite(sym):
        raise RootSystemError(
            "symmetrized Cartan matrix is not positive definite (not finite type)"
        )

    def weight_coords(simple: tuple[int, ...]) -> Weight:
        return tuple(sum(rows[r][j] * simple[j] for j in range(n)) for r in range(n))

    def length_sq(simple: tuple[int, ...]) -> Fraction:
        wc = weight_coords(simple)
        return Fraction(sum(c * d[j] * wc[j] for j, c in enumerate(simple)))

    def make_root(simple: tuple[int, ...]) -> Root:
        return Root(simple, weight_coords(simple), length_sq(simple))

    # Root-string closure over positive roots, by increasing height.
    simples = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    known: set[tuple[int, ...]] = set(simples)
    frontier = list(simples)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(n):
                pair = sum(rows[i][j] * beta[j] for j in range(n))
                down = list(beta)
                p = 0
                while True:
                    down[i] -= 1
                    if tuple(down) in known:
                        p += 1
                    else:
                        break
                if p - pair > 0:
                    up = list(beta)
                    up[i] += 1
                    up = tuple(up)
                    if up not in known:
                        known.add(up)
                        nxt.append(up)
        frontier = nxt
        if len(known) > 10_000:
            raise RootSystemError("root closure does not terminate")
    positive = tuple(
        make_root(c) for c in sorted(known, key=lambda c: (sum(c), c))
    )
    simple_roots = tuple(make_root(c) for c in simples)

    # Weyl group BFS over the simple-reflection generators.
    refl = []
    for i in range(n):
        alpha = simple_roots[i].weight_coords
        refl.append(
            tuple(
                tuple(int(r == c) - (alpha[r] if c == i else 0) for c in range(n))
                for r in range(n)
            )
        )
    ident = _identity(n)
    by_matrix: dict = {ident: WeylElement((), ident)}
    order = [by_matrix[ident]]
    frontier_w = [by_matrix[ident]]
    while frontier_w:
        nxt_w = []
        for w in frontier_w:
            for i in range(n):
                m = _matmul(w.matrix, refl[i])
                if m not in by_matrix:
                    elem = WeylElement(w.word + (i,), m)
                    by_matrix[m] = elem
                    order.append(elem)
                    nxt_w.append(elem)
        frontier_w = nxt_w
        if len(order) > _WEYL_ORDER_CAP:
            raise RootSystemError("Weyl group closure does not terminate")

    return RootSystem(
        rank=n,
        cartan=rows,
        symmetrizer=d,
        simple_roots=simple_roots,
        positive_roots=positive,
        rho=tuple(1 for _ in range(n)),
        elements=tuple(order),
        _by_matrix=by_matrix,
        _pos_coords=frozenset(r.simple_coords for r in positive),
    )


G2_CARTAN = ((2, -1), (-3, 2))


@lru_cache(maxsize=None)
def g2() -> RootSystem:
    """The pinned G2 instance: alpha_1 long, alpha_2 short."""
    rs = build_root_system(G2_CARTAN)
    assert len(rs.positive_roots) == 6 and rs.weyl_order == 12
    return rs


@lru_cache(maxsize=None)
def g2_flipped() -> RootSystem:
    """G2 with the simple roots swapped (alpha_1 short).

    Exists purely as a negative control: the pinned cohomology test vectors
    must fail under this convention.
    """
    return build_root_system(((2, -3), (-1, 2)))


def reflect(rs: RootSystem, i: int, mu: Weight) -> Weight:
    return rs.reflect(i, mu)


def pairing(rs: RootSystem, mu: Weight, alpha: Root) -> int:
    return rs.pairing(mu, alpha)
