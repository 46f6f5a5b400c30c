"""Rational generating functions in T over the symbolic Grothendieck ring.

A :class:`ZSeries` is a finite sum of terms

    c * T^beta / prod_j (1 - L^{a_j} T^{b_j}),        b_j >= 1,

with ``c`` an :class:`~logzeta.mring.MClass`.  Terms with identical
``(beta, denominators)`` are merged and zero coefficients dropped, giving a
canonical form used for printing and golden tests.  Mathematical equality is
decided exactly by cross-multiplication.

The heart of the module is :func:`cone_series`: the closed form of the sum
of ``L^{-<u,a>} T^{<u,e>}`` over the interior dual points of a marked
monoid, computed by half-open simplicial decomposition.  Dual rays paired to
zero by the marking ("horizontal" directions) contribute pure-L geometric
factors; they are folded into the coefficient as ``L/(L-1)`` and are only
legal when the divisor pairs them to one, so the fold is exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .cones import box_points, triangulate_half_open
from .intlin import dot
from .mring import UNIT_SYMBOL, LaurentPoly, MClass, MCoeff
from .monoids import MarkedMonoid

Denoms = tuple[tuple[int, int], ...]  # sorted multiset of (a, b), b >= 1


def _canon_denoms(denoms: Iterable[tuple[int, int]]) -> Denoms:
    ds = tuple(sorted((int(a), int(b)) for a, b in denoms))
    if any(b < 1 for _, b in ds):
        raise ValueError("denominator T-exponent must be positive")
    return ds


class ZSeries:
    """Finite sum of rational terms in T with MClass coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, Denoms], MClass] | None = None):
        clean: dict[tuple[int, Denoms], MClass] = {}
        if terms:
            for (beta, denoms), c in terms.items():
                if beta < 0:
                    raise ValueError("T-exponent must be nonnegative")
                if not c.is_zero():
                    key = (beta, _canon_denoms(denoms))
                    clean[key] = clean[key] + c if key in clean else c
        self.terms = {k: v for k, v in clean.items() if not v.is_zero()}

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero() -> "ZSeries":
        return ZSeries()

    @staticmethod
    def term(c: MClass, beta: int, denoms: Iterable[tuple[int, int]] = ()) -> "ZSeries":
        return ZSeries({(beta, _canon_denoms(denoms)): c})

    @staticmethod
    def one() -> "ZSeries":
        return ZSeries.term(MClass.one(), 0)

    # -- ring operations ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "ZSeries") -> "ZSeries":
        d = dict(self.terms)
        for k, c in other.terms.items():
            d[k] = d[k] + c if k in d else c
        return ZSeries(d)

    def __neg__(self) -> "ZSeries":
        return ZSeries({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "ZSeries") -> "ZSeries":
        return self + (-other)

    def __mul__(self, other: "ZSeries") -> "ZSeries":
        d: dict[tuple[int, Denoms], MClass] = {}
        for (b1, ds1), c1 in self.terms.items():
            for (b2, ds2), c2 in other.terms.items():
                key = (b1 + b2, _canon_denoms(ds1 + ds2))
                c = c1 * c2
                d[key] = d[key] + c if key in d else c
        return ZSeries(d)

    def scale(self, c: MClass) -> "ZSeries":
        return ZSeries({k: v * c for k, v in self.terms.items()})

    def shift_T(self, k: int) -> "ZSeries":
        if k < 0:
            raise ValueError("shift must be nonnegative")
        return ZSeries({(beta + k, ds): c for (beta, ds), c in self.terms.items()})

    def subst_T_L(self, k: int) -> "ZSeries":
        """Substitute T -> L^k T."""
        out: dict[tuple[int, Denoms], MClass] = {}
        for (beta, ds), c in self.terms.items():
            new_ds = _canon_denoms((a + k * b, b) for a, b in ds)
            key = (beta, new_ds)
            cc = c.scale_l(k * beta)
            out[key] = out[key] + cc if key in out else cc
        return ZSeries(out)

    # -- expansion, limits, poles -------------------------------------------

    def expand(self, degree: int) -> list[MClass]:
        """Coefficients of T^1 ... T^degree of the power-series expansion."""
        total: dict[int, MClass] = {}
        for (beta, ds), c in self.terms.items():
            poly: dict[int, MClass] = {beta: c}
            for a, b in ds:
                new: dict[int, MClass] = {}
                for m, cm in poly.items():
                    k = 0
                    while m + k * b <= degree:
                        e = m + k * b
                        cc = cm.scale_l(k * a)
                        new[e] = new[e] + cc if e in new else cc
                        k += 1
                poly = new
            for m, cm in poly.items():
                if m <= degree:
                    total[m] = total[m] + cm if m in total else cm
        return [total.get(d, MClass.zero()) for d in range(1, degree + 1)]

    def limit_T_inf(self) -> MClass:
        """Value of the series as T grows without bound.

        Substituting T = 1/S and letting S -> 0, a term contributes nothing
        when beta < sum(b_j), and c * (-1)^{#denoms} L^{-sum(a_j)} when equal;
        beta > sum(b_j) has no limit and raises.
        """
        out = MClass.zero()
        for (beta, ds), c in self.terms.items():
            bsum = sum(b for _, b in ds)
            if beta > bsum:
                raise ValueError(
                    f"term with T-exponent {beta} exceeding denominator degree {bsum} has no limit"
                )
            if beta == bsum:
                sign = -1 if len(ds) % 2 else 1
                out = out + c.scale_l(-sum(a for a, _ in ds)) * MClass.from_int(sign)
        return out

    def candidate_poles(self) -> frozenset[Fraction]:
        out = set()
        for (_, ds) in self.terms.keys():
            for a, b in ds:
                out.add(Fraction(a, b))
        return frozenset(out)

    # -- exact equality ------------------------------------------------------

    def _numerator_against(self, common: Denoms) -> dict[int, MClass]:
        """Polynomial (in T) equal to self * prod(1 - L^a T^b) over ``common``."""
        poly: dict[int, MClass] = {}
        for (beta, ds), c in self.terms.items():
            missing = list(common)
            for d in ds:
                missing.remove(d)
            part: dict[int, MClass] = {beta: c}
            for a, b in missing:
                new: dict[int, MClass] = {}
                for m, cm in part.items():
                    new[m] = new.get(m, MClass.zero()) + cm
                    new[m + b] = new.get(m + b, MClass.zero()) - cm.scale_l(a)
                part = new
            for m, cm in part.items():
                poly[m] = poly.get(m, MClass.zero()) + cm
        return {m: c for m, c in poly.items() if not c.is_zero()}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ZSeries):
            return NotImplemented
        return equal(self, other)

    # equality is mathematical, not structural, so series are not hashable
    __hash__ = None

    # -- presentation --------------------------------------------------------

    def sorted_terms(self) -> list[tuple[tuple[int, Denoms], MClass]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (beta, ds), c in self.sorted_terms():
            cs = str(c)
            if len(c.terms) > 1:
                cs = f"({cs})"
            body = cs
            if beta == 1:
                body += "*T"
            elif beta > 1:
                body += f"*T^{beta}"
            if ds:
                factors = [_denom_str(a, b) for a, b in sorted(ds, key=lambda ab: (ab[1], ab[0]))]
                if len(factors) == 1:
                    body += f"/{factors[0]}"
                else:
                    body += "/(" + "*".join(factors) + ")"
            parts.append(body)
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"ZSeries({self})"


def _denom_str(a: int, b: int) -> str:
    t = "T" if b == 1 else f"T^{b}"
    if a == 0:
        return f"(1-{t})"
    l = "L" if a == 1 else f"L^{a}"
    return f"(1-{l}*{t})"


def equal(s1: ZSeries, s2: ZSeries) -> bool:
    """Exact equality in the ring, by cross-multiplication."""
    counts: dict[tuple[int, int], int] = {}
    for s in (s1, s2):
        for (_, ds) in s.terms.keys():
            local: dict[tuple[int, int], int] = {}
            for d in ds:
                local[d] = local.get(d, 0) + 1
            for d, k in local.items():
                counts[d] = max(counts.get(d, 0), k)
    common: list[tuple[int, int]] = []
    for d, k in sorted(counts.items()):
        common.extend([d] * k)
    return s1._numerator_against(tuple(common)) == s2._numerator_against(tuple(common))


def format_poles(poles: frozenset[Fraction]) -> str:
    return ", ".join(str(p) for p in sorted(poles))


# ---------------------------------------------------------------------------
# Cone sums in closed form.


def cone_series(mm: MarkedMonoid, weight: MClass) -> ZSeries:
    """Closed form of ``weight * sum L^{-<u,a>} T^{<u,e>}`` over interior dual
    points ``u`` of the marked monoid.

    Uses the half-open simplicial decomposition of the dual cone and
    fundamental-parallelepiped enumeration.  Dual rays with ``<v,e> = 0``
    must satisfy ``<v,a> = 1`` (checked), and fold into the coefficient as a
    factor ``L/(L-1)`` each.
    """
    if not mm.is_local():
        raise ValueError("cone series needs a local marking (e_pi != 0)")
    dual = mm.base.dual()
    for v in dual.rays:
        if dot(v, mm.e_pi) == 0 and dot(v, mm.a_div) != 1:
            raise ValueError(
                f"horizontal dual ray {v} must pair to 1 with the divisor, got {dot(v, mm.a_div)}"
            )
    acc: dict[tuple[int, Denoms], MClass] = {}
    for piece in triangulate_half_open(dual, "relint"):
        denoms = []
        horiz = 0
        for g in piece.gens:
            b = dot(g, mm.e_pi)
            a = -dot(g, mm.a_div)
            if b == 0:
                horiz += 1  # a == -1 here; factor 1/(1-L^{-1}) = L/(L-1)
            else:
                denoms.append((a, b))
        key_denoms = _canon_denoms(denoms)
        fold = MClass.l_power(horiz).mul_l1_pow(-horiz) if horiz else MClass.one()
        # group the parallelepiped points by T-exponent, summing L-monomials
        numerators: dict[int, dict[int, int]] = {}
        for u0 in box_points(piece):
            beta = dot(u0, mm.e_pi)
            lexp = -dot(u0, mm.a_div)
            bucket = numerators.setdefault(beta, {})
            bucket[lexp] = bucket.get(lexp, 0) + 1
        for beta, bucket in numerators.items():
            poly = MClass({UNIT_SYMBOL: MCoeff.make(LaurentPoly.from_dict(bucket))})
            c = weight * fold * poly
            key = (beta, key_denoms)
            acc[key] = acc[key] + c if key in acc else c
    return ZSeries(acc)
