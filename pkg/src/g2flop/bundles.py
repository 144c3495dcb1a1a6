"""Bundle-expression DSL for equivariant bundles on the G2 flag variety.

Atoms
-----
``Line(a, b)``      the line bundle O(aH + bh)
``Universal()``     U, the rank-2 universal-subbundle pullback (= IrrP1(-1, 1))
``Spinor()``        S, the rank-4 extension with sub U and quotient U'(-h)
``IrrP1(a, b)``     pullback of the irreducible P1-bundle with highest weight (a, b)
``IrrP2(a, b)``     pullback of the irreducible P2-bundle with highest weight (a, b)

plus ``Dual``, ``Tensor``, ``Sym`` (rank-2 irreducible arguments only) and
``Twist``.  All expressions denote bundles on the flag variety; objects living
on either Grassmannian are represented by their pullbacks, which is harmless
for cohomology because both projections have O as derived pushforward of O.

Evaluation offers two independent routes.  Route A filters any expression by
its line-bundle weights and applies per-weight Bott under the degree-gap
determinacy rule.  Route B applies to one-sided expressions (all non-line
atoms from a single parabolic): the non-line part is decomposed into
irreducibles by rank-1 Clebsch-Gordan, the fiber-direction twist is pushed
down the relevant P1-fibration exactly (Sym / zero / Sym-twist-by-det,
according to the twist degree), and parabolic Bott finishes the job with no
spectral ambiguity.  Expressions containing the opaque extension S are
additionally resolved through its two-piece filtration.  Whenever several
routes determine an answer they are required to agree.

The expression grammar for the CLI::

    expr  := term { "*" term }
    term  := atom [ "(" twist ")" ] [ "'" ]
    atom  := "O" | "U" | "S" | "E(" int "," int ")" | "F(" int "," int ")"
           | "Sym^" int " " atom
    twist := signed combination of "h", "H"  |  int "," int

with ``'`` for duals, e.g. ``U*U(h)``, ``O(H-2h)``, ``Sym^2 E(1,1)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional, Union

from .rootdata import RootSystem, Weight, wadd, wneg
from .weylbott import (
    CohomologyProfile,
    combine_pieces,
    filtered_cohomology,
    parabolic_cohomology,
)


class BundleError(ValueError):
    """Raised for structurally invalid bundle expressions."""


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class RouteMismatchError(AssertionError):
    """Two exact evaluation routes disagreed; indicates an engine bug."""


@dataclass(frozen=True)
class Line:
    a: int
    b: int


@dataclass(frozen=True)
class Universal:
    pass


@dataclass(frozen=True)
class Spinor:
    pass


@dataclass(frozen=True)
class IrrP1:
    a: int
    b: int


@dataclass(frozen=True)
class IrrP2:
    a: int
    b: int


@dataclass(frozen=True)
class Dual:
    arg: "BundleExpr"


@dataclass(frozen=True)
class Tensor:
    left: "BundleExpr"
    right: "BundleExpr"


@dataclass(frozen=True)
class Sym:
    power: int
    arg: "BundleExpr"


@dataclass(frozen=True)
class Twist:
    arg: "BundleExpr"
    a: int
    b: int


BundleExpr = Union[Line, Universal, Spinor, IrrP1, IrrP2, Dual, Tensor, Sym, Twist]

# Parabolic bookkeeping: P1 has Levi root alpha_2 (fiber class h),
# P2 has Levi root alpha_1 (fiber class H).
P1_LEVI = frozenset({1})
P2_LEVI = frozenset({0})


def _string_weights(rs: RootSystem, hw: Weight, levi_index: int) -> tuple[Weight, ...]:
    n = rs.pairing(hw, rs.simple_roots[levi_index])
    if n < 0:
        raise BundleError(f"highest weight {hw} has negative Levi pairing {n}")
    alpha = rs.simple_roots[levi_index].weight_coords
    return tuple(
        tuple(hw[k] - j * alpha[k] for k in range(rs.rank)) for j in range(n + 1)
    )


def weights(rs: RootSystem, e: BundleExpr) -> tuple[Weight, ...]:
    """Line-bundle filtration weights of the expression, in a stable order."""
    if isinstance(e, Line):
        return ((e.a, e.b),)
    if isinstance(e, Universal):
        return _string_weights(rs, (-1, 1), 1)
    if isinstance(e, Spinor):
        # sub U, quotient U'(-h): the defining two-step filtration, flattened
        return weights(rs, Universal()) + weights(
            rs, Twist(Dual(Universal()), 0, -1)
        )
    if isinstance(e, IrrP1):
        return _string_weights(rs, (e.a, e.b), 1)
    if isinstance(e, IrrP2):
        return _string_weights(rs, (e.a, e.b), 0)
    if isinstance(e, Dual):
        return tuple(wneg(w) for w in weights(rs, e.arg))
    if isinstance(e, Tensor):
        lws = weights(rs, e.left)
        rws = weights(rs, e.right)
        return tuple(wadd(lw, rw) for lw in lws for rw in rws)
    if isinstance(e, Twist):
        t = (e.a, e.b)
        return tuple(wadd(w, t) for w in weights(rs, e.arg))
    if isinstance(e, Sym):
        base = _sym_base_weights(rs, e)
        lam, lam_minus_alpha = base
        alpha = tuple(x - y for x, y in zip(lam, lam_minus_alpha))
        return tuple(
            tuple(e.power * lam[k] - j * alpha[k] for k in range(rs.rank))
            for j in range(e.power + 1)
        )
    raise BundleError(f"unknown expression node {e!r}")


def _sym_base_weights(rs: RootSystem, e: Sym) -> tuple[Weight, Weight]:
    # The string {m*w1 - j*(w1-w2)} is symmetric in (w1, w2), so no ordering
    # of the two base weights is needed.
    if e.power < 1:
        raise BundleError("Sym power must be >= 1")
    inner = e.arg
    if isinstance(inner, Dual):
        inner = inner.arg
        dualize = True
    else:
        dualize = False
    if not isinstance(inner, (Universal, IrrP1, IrrP2)):
        raise BundleError("Sym is only supported on rank-2 irreducible atoms")
    ws = weights(rs, Dual(inner) if dualize else inner)
    if len(ws) != 2:
        raise BundleError("Sym is only supported on rank-2 irreducible atoms")
    return ws[0], ws[1]


def rank(e: BundleExpr) -> int:
    if isinstance(e, Line):
        return 1
    if isinstance(e, Universal):
        return 2
    if isinstance(e, Spinor):
        return 4
    if isinstance(e, IrrP1):
        if e.b < 0:
            raise BundleError(f"IrrP1({e.a},{e.b}) has negative Levi pairing")
        return e.b + 1
    if isinstance(e, IrrP2):
        if e.a < 0:
            raise BundleError(f"IrrP2({e.a},{e.b}) has negative Levi pairing")
        return e.a + 1
    if isinstance(e, Dual):
        return rank(e.arg)
    if isinstance(e, Tensor):
        return rank(e.left) * rank(e.right)
    if isinstance(e, Twist):
        return rank(e.arg)
    if isinstance(e, Sym):
        return e.power + 1
    raise BundleError(f"unknown expression node {e!r}")


def det_weight(rs: RootSystem, e: BundleExpr) -> Weight:
    ws = weights(rs, e)
    return tuple(sum(w[k] for w in ws) for k in range(rs.rank))


def levi_tensor(
    rs: RootSystem,
    levi_simples: frozenset[int] | set[int],
    lam: Weight,
    mu: Weight,
) -> tuple[Weight, ...]:
    """Clebsch-Gordan for a semisimple-rank-1 Levi, on highest weights.

    Labels m = <lam, alpha^v>, n = <mu, alpha^v>; the summands have highest
    weights lam + mu - j*alpha for j = 0..min(m, n).  Total rank is preserved.
    """
    levi = tuple(sorted(levi_simples))
    if len(levi) != 1:
        raise BundleError("only semisimple-rank-1 Levi subgroups are supported")
    i = levi[0]
    alpha = rs.simple_roots[i]
    m = rs.pairing(lam, alpha)
    n = rs.pairing(mu, alpha)
    if m < 0 or n < 0:
        raise BundleError("both weights must be Levi-dominant")
    total = wadd(lam, mu)
    out = tuple(
        tuple(total[k] - j * alpha.weight_coords[k] for k in range(rs.rank))
        for j in range(min(m, n) + 1)
    )
    assert sum(rs.pairing(w, alpha) + 1 for w in out) == (m + 1) * (n + 1)
    return out


# --- one-sided (route B) decomposition ------------------------------------


@dataclass(frozen=True)
class OneSided:
    """A pullback-from-one-Grassmannian shape: irreducible summands + twist.

    ``levi_index`` is 1 for the P1 side (fiber class h) and 0 for the P2 side
    (fiber class H).  ``opaque`` marks expressions containing the extension S,
    which is a pullback from the quadric side of unknown Levi structure.
    """

    levi_index: int
    summands: tuple[Weight, ...]
    twist: Weight
    opaque: bool


def _factor_irreducible(rs: RootSystem, factor: BundleExpr) -> Optional[tuple[int, Weight]]:
    """Levi side and highest weight of an irreducible factor, if it is one."""
    dualize = False
    if isinstance(factor, Dual):
        dualize = True
        factor = factor.arg
    if isinstance(factor, Sym):
        base = _factor_irreducible(rs, factor.arg)
        if base is None:
            return None
        side, hw = base
        if rs.pairing(hw, rs.simple_roots[side]) != 1:
            return None
        hw = tuple(factor.power * c for c in hw)
        return _maybe_dualize(rs, side, hw, dualize)
    if isinstance(factor, Universal):
        return _maybe_dualize(rs, 1, (-1, 1), dualize)
    if isinstance(factor, IrrP1):
        return _maybe_dualize(rs, 1, (factor.a, factor.b), dualize)
    if isinstance(factor, IrrP2):
        return _maybe_dualize(rs, 0, (factor.a, factor.b), dualize)
    return None


def _maybe_dualize(rs, side, hw, dualize):
    if not dualize:
        return side, hw
    # dual of the Levi irreducible: -s_alpha(hw) for the Levi reflection
    return side, wneg(rs.reflect(side, hw))


def one_sided_form(rs: RootSystem, e: BundleExpr) -> Optional[OneSided]:
    """Decompose into irreducibles from a single parabolic plus a line twist."""
    factors, twist = normal_factors(e)
    sides: set[int] = set()
    opaque = False
    hws: list[Weight] = []
    for f in factors:
        core = f.arg if isinstance(f, Dual) else f
        if isinstance(core, Spinor):
            sides.add(0)  # pullback from the quadric side
            opaque = True
            continue
        info = _factor_irreducible(rs, f)
        if info is None:
            return None
        sides.add(info[0])
        hws.append(info[1])
    if len(sides) > 1 or not sides:
        return None
    side = sides.pop()
    levi = P1_LEVI if side == 1 else P2_LEVI
    summands: tuple[Weight, ...] = ((0,) * rs.rank,)
    for hw in hws:
        summands = tuple(
            w for s in summands for w in levi_tensor(rs, levi, s, hw)
        )
    return OneSided(levi_index=side, summands=summands, twist=twist, opaque=opaque)


def _pushforward_profile(
    rs: RootSystem, side: int, hw: Weight, twist: Weight
) -> CohomologyProfile:
    """Exact cohomology of (pullback of E_hw) tensor O(twist).

    Splits the twist into the base direction (absorbed into the highest
    weight) and the fiber direction f, then pushes down the rank-1 fibration:
    f >= 0 tensors with the rank-(f+1) symmetric power of the dual fiber
    bundle, f = -1 kills everything, f <= -2 lands in relative degree 1
    tensored with Sym^(-f-2) of the fiber bundle twisted by its determinant
    (equivalently, the fiber-direction dot-reflection of the twist).
    """
    levi = P1_LEVI if side == 1 else P2_LEVI
    base_twist = tuple(0 if k == side else twist[k] for k in range(rs.rank))
    fiber = twist[side]
    hw = wadd(hw, base_twist)
    if fiber == -1:
        return CohomologyProfile.zero()
    fiber_weight = tuple(fiber if k == side else 0 for k in range(rs.rank))
    if fiber >= 0:
        partner = fiber_weight
        shift = 0
    else:
        shifted = rs.reflect(side, wadd(fiber_weight, rs.rho))
        partner = tuple(c - 1 for c in shifted)
        shift = 1
    profile = CohomologyProfile.zero()
    for summand in levi_tensor(rs, levi, hw, partner):
        profile = profile.union(parabolic_cohomology(rs, levi, summand).shift(shift))
    return profile


def route_b_cohomology(rs: RootSystem, e: BundleExpr) -> Optional[CohomologyProfile]:
    """Exact one-sided evaluation; None when the shape does not apply."""
    form = one_sided_form(rs, e)
    if form is None:
        return None
    if form.opaque:
        # S-side pullbacks: only the fiber-degree -1 vanishing needs no
        # knowledge of S itself.
        fiber = form.twist[0] if form.levi_index == 0 else form.twist[1]
        if fiber == -1:
            return CohomologyProfile.zero()
        return None
    profile = CohomologyProfile.zero()
    for hw in form.summands:
        profile = profile.union(
            _pushforward_profile(rs, form.levi_index, hw, form.twist)
        )
    return profile


# --- spinor-extension resolution -------------------------------------------


def _substitute_first_spinor(e: BundleExpr, replacement: BundleExpr):
    """Replace the first Spinor occurrence; returns None when there is none."""
    if isinstance(e, Spinor):
        return replacement
    if isinstance(e, Dual):
        inner = _substitute_first_spinor(e.arg, replacement)
        return None if inner is None else Dual(inner)
    if isinstance(e, Twist):
        inner = _substitute_first_spinor(e.arg, replacement)
        return None if inner is None else Twist(inner, e.a, e.b)
    if isinstance(e, Sym):
        inner = _substitute_first_spinor(e.arg, replacement)
        return None if inner is None else Sym(e.power, inner)
    if isinstance(e, Tensor):
        left = _substitute_first_spinor(e.left, replacement)
        if left is not None:
            return Tensor(left, e.right)
        right = _substitute_first_spinor(e.right, replacement)
        return None if right is None else Tensor(e.left, right)
    return None


SPINOR_SUB = Universal()
SPINOR_QUOTIENT = Twist(Dual(Universal()), 0, -1)


# --- full evaluation --------------------------------------------------------


@dataclass(frozen=True)
class CohResult:
    """Cohomology of a bundle expression on the flag variety.

    ``determined`` results carry the exact profile; indeterminate ones carry
    the E1 page of the weight filtration.  ``route`` names the strategy that
    settled the answer.
    """

    determined: bool
    profile: Optional[CohomologyProfile]
    e1: tuple[tuple[Weight, CohomologyProfile], ...]
    route: str

    @property
    def is_zero(self) -> bool:
        return self.determined and self.profile.is_zero


def flag_cohomology(rs: RootSystem, e: BundleExpr) -> CohResult:
    """Best exact evaluation of H^*(flag variety, e).

    Tries the weight filtration, the one-sided pushforward route and (for
    expressions containing S) the extension resolution; all routes that
    determine an answer must agree exactly.
    """
    route_a = filtered_cohomology(rs, weights(rs, e))
    candidates: list[tuple[str, CohomologyProfile]] = []
    if route_a.determined:
        candidates.append(("filtration", route_a.profile))
    route_b = route_b_cohomology(rs, e)
    if route_b is not None:
        candidates.append(("parabolic", route_b))
    split = _substitute_first_spinor(e, SPINOR_SUB)
    if split is not None:
        sub = flag_cohomology(rs, split)
        quot = flag_cohomology(
            rs, _substitute_first_spinor(e, SPINOR_QUOTIENT)
        )
        if sub.determined and quot.determined:
            combined = combine_pieces(
                [("sub", sub.profile), ("quotient", quot.profile)]
            )
            if combined.determined:
                candidates.append(("extension", combined.profile))
    if not candidates:
        return CohResult(False, None, route_a.pieces, "none")
    first_route, first = candidates[0]
    for other_route, other in candidates[1:]:
        if other != first:
            raise RouteMismatchError(
                f"routes disagree on {format_expr(e)}: "
                f"{first_route} gave {first}, {other_route} gave {other}"
            )
    return CohResult(True, first, route_a.pieces, first_route)


# --- normalization and printing ---------------------------------------------


def normal_factors(e: BundleExpr) -> tuple[tuple[BundleExpr, ...], Weight]:
    """Flatten tensors and fold line twists: (non-line factors, total twist).

    Duals are pushed onto atoms (and outside Sym), so each factor is
    atom | Dual(atom) | Sym(m, atom) | Dual(Sym(m, atom)).
    """
    if isinstance(e, Line):
        return (), (e.a, e.b)
    if isinstance(e, (Universal, Spinor, IrrP1, IrrP2)):
        return (e,), (0, 0)
    if isinstance(e, Twist):
        factors, t = normal_factors(e.arg)
        return factors, wadd(t, (e.a, e.b))
    if isinstance(e, Tensor):
        lf, lt = normal_factors(e.left)
        rf, rt = normal_factors(e.right)
        return lf + rf, wadd(lt, rt)
    if isinstance(e, Sym):
        if e.power == 1:
            return normal_factors(e.arg)
        factors, t = normal_factors(e.arg)
        if len(factors) != 1:
            raise BundleError("Sym is only supported on rank-2 irreducible atoms")
        scaled = tuple(e.power * c for c in t)
        inner = factors[0]
        if isinstance(inner, Dual):
            return (Dual(Sym(e.power, inner.arg)),), scaled
        return (Sym(e.power, inner),), scaled
    if isinstance(e, Dual):
        factors, t = normal_factors(e.arg)
        flipped = []
        for f in factors:
            flipped.append(f.arg if isinstance(f, Dual) else Dual(f))
        return tuple(flipped), wneg(t)
    raise BundleError(f"unknown expression node {e!r}")


def normalize(e: BundleExpr) -> BundleExpr:
    """Canonical form: twisted tensor of dual/Sym-wrapped atoms, or a line."""
    factors, twist = normal_factors(e)
    if not factors:
        return Line(*twist)
    expr: BundleExpr = factors[0]
    for f in factors[1:]:
        expr = Tensor(expr, f)
    if twist != (0, 0):
        expr = Twist(expr, *twist)
    return expr


def _format_twist(t: Weight) -> str:
    a, b = t
    parts = []
    if a:
        coeff = "" if a == 1 else "-" if a == -1 else str(a)
        parts.append(f"{coeff}H")
    if b:
        coeff = "" if b == 1 else "-" if b == -1 else str(b)
        if parts and b > 0:
            parts.append(f"+{coeff}h")
        else:
            parts.append(f"{coeff}h")
    return "".join(parts)


def _format_atom(e: BundleExpr) -> str:
    if isinstance(e, Universal):
        return "U"
    if isinstance(e, Spinor):
        return "S"
    if isinstance(e, IrrP1):
        return f"E({e.a},{e.b})"
    if isinstance(e, IrrP2):
        return f"F({e.a},{e.b})"
    if isinstance(e, Sym):
        return f"Sym^{e.power} {_format_atom(e.arg)}"
    raise BundleError(f"not an atomic factor: {e!r}")


def _format_factor(f: BundleExpr, twist: Weight) -> str:
    """Print one factor, folding `twist` into it (the canonical position)."""
    if isinstance(f, Dual):
        inner = _format_atom(f.arg)
        if twist == (0, 0):
            return f"{inner}'"
        return f"{inner}({_format_twist(wneg(twist))})'"
    inner = _format_atom(f)
    if twist == (0, 0):
        return inner
    return f"{inner}({_format_twist(twist)})"


def format_expr(e: BundleExpr) -> str:
    """Canonical printer; parse(format(e)) equals normalize(e)."""
    factors, twist = normal_factors(e)
    if not factors:
        if twist == (0, 0):
            return "O"
        return f"O({_format_twist(twist)})"
    parts = [_format_factor(f, (0, 0)) for f in factors[:-1]]
    parts.append(_format_factor(factors[-1], twist))
    return "*".join(parts)


# --- parser -----------------------------------------------------------------

_INT_RE = re.compile(r"[+-]?\d+")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str) -> ParseError:
        return ParseError(message, self.pos)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos] == " ":
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            raise self.error(f"expected {ch!r}")
        self.pos += 1

    def parse_int(self) -> int:
        m = _INT_RE.match(self.text, self.pos)
        if not m:
            raise self.error("expected an integer")
        self.pos = m.end()
        return int(m.group())

    def parse_expr(self) -> BundleExpr:
        expr = self.parse_term()
        self.skip_ws()
        while self.peek() == "*":
            self.pos += 1
            self.skip_ws()
            expr = Tensor(expr, self.parse_term())
            self.skip_ws()
        return expr

    def parse_term(self) -> BundleExpr:
        self.skip_ws()
        atom = self.parse_atom()
        if self.peek() == "(":
            self.pos += 1
            a, b = self.parse_twist()
            self.expect(")")
            atom = Twist(atom, a, b)
        if self.peek() == "'":
            self.pos += 1
            atom = Dual(atom)
            # convenience beyond the core grammar: a twist may follow the
            # dual, so U'(-h) means (U dual)(-h)
            if self.peek() == "(":
                self.pos += 1
                a, b = self.parse_twist()
                self.expect(")")
                atom = Twist(atom, a, b)
        return atom

    def parse_atom(self) -> BundleExpr:
        if self.text.startswith("Sym^", self.pos):
            self.pos += 4
            power = self.parse_int()
            if power < 1:
                raise self.error("Sym power must be >= 1")
            if self.peek() != " ":
                raise self.error("expected a space after the Sym power")
            self.skip_ws()
            return Sym(power, self.parse_atom())
        ch = self.peek()
        if ch == "O":
            self.pos += 1
            return Line(0, 0)
        if ch == "U":
            self.pos += 1
            return Universal()
        if ch == "S":
            self.pos += 1
            return Spinor()
        if ch in ("E", "F"):
            self.pos += 1
            self.expect("(")
            a = self.parse_int()
            self.skip_ws()
            self.expect(",")
            self.skip_ws()
            b = self.parse_int()
            self.expect(")")
            return IrrP1(a, b) if ch == "E" else IrrP2(a, b)
        if ch == "":
            raise self.error("unexpected end of input")
        raise self.error(f"unknown atom {ch!r}")

    def parse_twist(self) -> Weight:
        start = self.pos
        while self.pos < len(self.text):
            if self.text[self.pos] == ")":
                break
            self.pos += 1
        body = self.text[start : self.pos]
        if "," in body:
            sub = _Parser(body)
            sub.skip_ws()
            a = sub.parse_int()
            sub.skip_ws()
            sub.expect(",")
            sub.skip_ws()
            b = sub.parse_int()
            sub.skip_ws()
            if sub.pos != len(body):
                self.pos = start + sub.pos
                raise self.error("malformed pair twist")
            return (a, b)
        return self._parse_linear_twist(body, start)

    def _parse_linear_twist(self, body: str, start: int) -> Weight:
        a = b = 0
        i = 0
        seen_any = False
        while i < len(body):
            if body[i] == " ":
                i += 1
                continue
            sign = 1
            if body[i] in "+-":
                sign = -1 if body[i] == "-" else 1
                i += 1
                while i < len(body) and body[i] == " ":
                    i += 1
            m = re.match(r"\d+", body[i:])
            coeff = 1
            if m:
                coeff = int(m.group())
                i += m.end()
            if i >= len(body) or body[i] not in "hH":
                self.pos = start + i
                raise self.error("expected 'h' or 'H' in twist")
            if body[i] == "H":
                a += sign * coeff
            else:
                b += sign * coeff
            i += 1
            seen_any = True
        if not seen_any:
            self.pos = start
            raise self.error("empty twist")
        return (a, b)


def parse_expr(text: str) -> BundleExpr:
    """Parse the CLI grammar; raises ParseError with a position on failure."""
    parser = _Parser(text)
    expr = parser.parse_expr()
    parser.skip_ws()
    if parser.pos != len(text):
        raise parser.error("trailing input")
    return expr
