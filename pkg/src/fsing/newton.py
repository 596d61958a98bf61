"""Monomial ideals and their Newton polyhedra, in exact arithmetic.

The Newton polyhedron of a monomial ideal a is the convex hull of the
exponents of a plus the nonnegative orthant.  Facets are found by exact
rational elimination over all candidate support sets, then stored as
primitive integer inequalities <w, u> >= c with w >= 0, c > 0; together
with the coordinate half-spaces u_i >= 0 they cut out the polyhedron.

Membership tests, monomial-ideal extraction, integral-closure powers,
log-canonical thresholds, and jumping-number candidates all reduce to
integer comparisons against those facets.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Iterable, Literal, Sequence

from .errors import DegreeGuardError
from .ring import Exponent, Polynomial, PolyRing

MembershipMode = Literal["closed", "interior"]

MAX_BOX_POINTS = 5_000_000


def _check_mode(mode: str) -> None:
    if mode not in ("closed", "interior"):
        raise ValueError(f"mode must be 'closed' or 'interior', got {mode!r}")


def monomial_divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def exponent_antichain(points: Iterable[Exponent]) -> tuple[Exponent, ...]:
    """Minimal elements of the up-set generated by ``points``, sorted."""
    ordered = sorted(set(points), key=lambda e: (sum(e), e))
    kept: list[Exponent] = []
    for e in ordered:
        if not any(monomial_divides(k, e) for k in kept):
            kept.append(e)
    return tuple(sorted(kept))


class MonomialIdeal:
    """A monomial ideal, stored as the sorted antichain of minimal exponents.

    Immutable and hashable; the antichain is the canonical form, so equality
    is tuple equality.  The unit ideal is ((0,..,0),); the zero ideal has no
    generators.
    """

    __slots__ = ("nvars", "generators")

    def __init__(self, nvars: int, exponents: Iterable[Exponent] = ()):
        pts = []
        for e in exponents:
            e = tuple(e)
            if len(e) != nvars or any(x < 0 for x in e):
                raise ValueError(f"bad exponent vector {e} for {nvars} variables")
            pts.append(e)
        self.nvars = nvars
        self.generators = exponent_antichain(pts)

    @classmethod
    def unit(cls, nvars: int) -> "MonomialIdeal":
        return cls(nvars, [(0,) * nvars])

    @classmethod
    def zero(cls, nvars: int) -> "MonomialIdeal":
        return cls(nvars, [])

    def is_unit(self) -> bool:
        return self.generators == ((0,) * self.nvars,)

    def is_zero(self) -> bool:
        return not self.generators

    def is_proper(self) -> bool:
        return bool(self.generators) and not self.is_unit()

    def contains(self, exponent: Exponent) -> bool:
        return any(monomial_divides(g, exponent) for g in self.generators)

    def contains_ideal(self, other: "MonomialIdeal") -> bool:
        return all(self.contains(g) for g in other.generators)

    def __add__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        self._check(other)
        return MonomialIdeal(self.nvars, self.generators + other.generators)

    def __mul__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        self._check(other)
        return MonomialIdeal(
            self.nvars,
            [tuple(x + y for x, y in zip(a, b)) for a in self.generators for b in other.generators],
        )

    def power(self, n: int) -> "MonomialIdeal":
        """The plain ideal power a^n (not a closure)."""
        if n < 0:
            raise ValueError("negative ideal power")
        result = MonomialIdeal.unit(self.nvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def to_ideal(self, ring: PolyRing) -> "object":
        from .groebner import Ideal

        if ring.nvars != self.nvars:
            raise ValueError("variable count mismatch")
        return Ideal(ring, [Polynomial(ring, {g: 1}) for g in self.generators])

    def _check(self, other: "MonomialIdeal") -> None:
        if self.nvars != other.nvars:
            raise ValueError("variable count mismatch")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MonomialIdeal):
            return NotImplemented
        return self.nvars == other.nvars and self.generators == other.generators

    def __hash__(self) -> int:
        return hash((self.nvars, self.generators))

    def __repr__(self) -> str:
        return f"MonomialIdeal(n={self.nvars}, generators={list(self.generators)})"


# -- exact hull -----------------------------------------------------------------


def _solve_square(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """Solve a square rational system; None if singular."""
    n = len(rows)
    aug = [row[:] + [rhs[i]] for i, row in enumerate(rows)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [v - factor * w for v, w in zip(aug[r], aug[col])]
    return [aug[r][n] for r in range(n)]


class NewtonPolyhedron:
    """P(a) = conv(exponents of a) + R^n_{>=0} for a proper monomial ideal a.

    ``facets`` holds the non-coordinate facets as primitive integer pairs
    (w, c) meaning <w, u> >= c; coordinate half-spaces u_i >= 0 are implicit.
    """

    __slots__ = ("nvars", "generators", "facets")

    def __init__(self, nvars: int, generators: tuple[Exponent, ...], facets: tuple[tuple[Exponent, int], ...]):
        self.nvars = nvars
        self.generators = generators
        self.facets = facets

    def coordinate_maximum(self, i: int) -> int:
        return max(g[i] for g in self.generators)

    def __repr__(self) -> str:
        ineqs = ", ".join(f"<{list(w)},u> >= {c}" for w, c in self.facets)
        return f"NewtonPolyhedron(n={self.nvars}, {ineqs})"


def newton_hull(a: MonomialIdeal) -> NewtonPolyhedron:
    """Exact facet description of P(a); requires a proper.

    Every non-coordinate facet has a supporting hyperplane <w, u> = c with
    w >= 0, c > 0 whose affine span is fixed by some k generators it passes
    through together with n-k coordinate directions it contains; enumerating
    those supports, solving exactly, and keeping the valid inequalities
    yields all facets (duplicates collapse in the final set).
    """
    if not a.is_proper():
        raise ValueError("Newton polyhedron requires a proper nonzero monomial ideal")
    n = a.nvars
    pts = a.generators
    found: set[tuple[Exponent, int]] = set()
    coords = range(n)
    one = Fraction(1)
    for k in range(1, n + 1):
        for support in combinations(pts, k):
            for free in combinations(coords, n - k):
                unknown = [i for i in coords if i not in free]
                rows = [[Fraction(s[i]) for i in unknown] for s in support]
                sol = _solve_square(rows, [one] * k)
                if sol is None:
                    continue
                if any(v < 0 for v in sol):
                    continue
                w_frac = [Fraction(0)] * n
                for i, v in zip(unknown, sol):
                    w_frac[i] = v
                if all(sum(wi * si for wi, si in zip(w_frac, p)) >= 1 for p in pts):
                    scale = 1
                    for v in w_frac:
                        scale = scale * v.denominator // gcd(scale, v.denominator)
                    w_int = [int(v * scale) for v in w_frac]
                    g = scale
                    for v in w_int:
                        g = gcd(g, v)
                    w = tuple(v // g for v in w_int)
                    c = scale // g
                    if any(w):
                        found.add((w, c))
    return NewtonPolyhedron(n, pts, tuple(sorted(found)))


def member(P: NewtonPolyhedron, v: Exponent, t: Fraction | int = 1, mode: MembershipMode = "closed") -> bool:
    """Whether v + (1,..,1) lies in t * P(a); 'interior' asks for the strict cone.

    'interior' requires strict inequality on the scaled non-coordinate
    facets; the coordinate half-spaces are automatically strict since
    v + 1 >= 1 in every coordinate.
    """
    _check_mode(mode)
    t = Fraction(t)
    if t <= 0:
        raise ValueError("scaling factor t must be positive")
    if len(v) != P.nvars or any(x < 0 for x in v):
        raise ValueError(f"bad exponent vector {v}")
    tn, td = t.numerator, t.denominator
    for w, c in P.facets:
        lhs = td * sum(wi * (vi + 1) for wi, vi in zip(w, v))
        rhs = tn * c
        if mode == "closed":
            if lhs < rhs:
                return False
        elif lhs <= rhs:
            return False
    return True


def _box_guard(bounds: Sequence[int]) -> None:
    volume = 1
    for b in bounds:
        volume *= b + 1
        if volume > MAX_BOX_POINTS:
            raise DegreeGuardError(
                f"lattice box larger than {MAX_BOX_POINTS} points; refusing to enumerate"
            )


def _minimal_points(bounds: Sequence[int], pred) -> list[Exponent]:
    """Minimal lattice points of an up-closed predicate within the box."""
    _box_guard(bounds)
    n = len(bounds)
    out: list[Exponent] = []
    point = [0] * n

    def walk(i: int):
        if i == n:
            v = tuple(point)
            if pred(v):
                for j in range(n):
                    if v[j]:
                        point[j] -= 1
                        below = pred(tuple(point))
                        point[j] += 1
                        if below:
                            return
                out.append(v)
            return
        for value in range(bounds[i] + 1):
            point[i] = value
            walk(i + 1)
        point[i] = 0

    walk(0)
    return out


def _ceil_frac(num: int, den: int) -> int:
    # ceil(num / den) for den > 0
    return -((-num) // den)


def _newton_ideal_from_hull(P: NewtonPolyhedron, t: Fraction, mode: MembershipMode) -> MonomialIdeal:
    n = P.nvars
    # every member dominates a member whose i-th coordinate is at most
    # ceil(t * max_i) + 1 (cap against a dominated point of t*conv), so the
    # minimal generators live inside this box
    bounds = []
    for i in range(n):
        m = P.coordinate_maximum(i)
        bounds.append(_ceil_frac(t.numerator * m, t.denominator) + 1 if m else 0)
    pts = _minimal_points(bounds, lambda v: member(P, v, t, mode))
    return MonomialIdeal(n, pts)


def newton_ideal(a: MonomialIdeal, t: Fraction | int, mode: MembershipMode = "closed") -> MonomialIdeal:
    """The monomial ideal of all x^v with v + 1 in t*P(a) (closed or interior).

    For 'interior' this is the multiplier-ideal-style membership; for
    'closed' it is the limit of the interior ideals as the exponent
    increases to t.
    """
    _check_mode(mode)
    t = Fraction(t)
    if t <= 0:
        raise ValueError("exponent t must be positive")
    if a.is_unit():
        return a  # P is the whole orthant; every v + 1 is interior
    if a.is_zero():
        return a  # P is empty
    return _newton_ideal_from_hull(newton_hull(a), t, mode)


def integral_closure_power(a: MonomialIdeal, n: int) -> MonomialIdeal:
    """The integral closure of a^n: lattice points of n * P(a).

    Defined for every monomial ideal: the unit ideal and n = 0 give R, the
    zero ideal stays zero.
    """
    if n < 0:
        raise ValueError("negative power")
    if n == 0 or a.is_unit():
        return MonomialIdeal.unit(a.nvars)
    if a.is_zero():
        return a
    P = newton_hull(a)
    bounds = [n * P.coordinate_maximum(i) for i in range(a.nvars)]
    facets = P.facets

    def inside(u: Exponent) -> bool:
        return all(sum(wi * ui for wi, ui in zip(w, u)) >= n * c for w, c in facets)

    return MonomialIdeal(a.nvars, _minimal_points(bounds, inside))


def lct_monomial(a: MonomialIdeal) -> Fraction:
    """sup{t : interior membership of 0 holds} = min over facets of <w,1>/c."""
    P = newton_hull(a)
    return min(Fraction(sum(w), c) for w, c in P.facets)


def jumping_candidates(a: MonomialIdeal, t_max: Fraction | int) -> tuple[Fraction, ...]:
    """All jumping numbers of a in (0, t_max]: facet-critical values that
    actually change the interior ideal.

    A value t is critical when some v + 1 lies on a scaled facet; it is a
    jump exactly when the closed and interior ideals at t differ.
    """
    t_max = Fraction(t_max)
    if t_max <= 0:
        raise ValueError("t_max must be positive")
    if not a.is_proper():
        raise ValueError("jumping numbers require a proper nonzero monomial ideal")
    P = newton_hull(a)
    n = a.nvars
    candidates: set[Fraction] = set()
    # per-facet witness boxes: <w, v+1> = t*c <= t_max*c forces
    # w_i*(v_i+1) <= t_max*c when w_i > 0, and coordinates with w_i = 0 do
    # not change the value, so v_i = 0 witnesses exist; hence every critical
    # value at or below t_max is seen inside the box
    for w, c in P.facets:
        bounds = [
            _ceil_frac(t_max.numerator * c, t_max.denominator * wi) if wi else 0
            for wi in w
        ]
        _box_guard(bounds)
        point = [0] * n

        def walk(i: int):
            if i == n:
                value = Fraction(sum(wi * (x + 1) for wi, x in zip(w, point)), c)
                if 0 < value <= t_max:
                    candidates.add(value)
                return
            for value in range(bounds[i] + 1):
                point[i] = value
                walk(i + 1)
            point[i] = 0

        walk(0)
    jumps = [
        t
        for t in sorted(candidates)
        if _newton_ideal_from_hull(P, t, "closed") != _newton_ideal_from_hull(P, t, "interior")
    ]
    return tuple(jumps)
