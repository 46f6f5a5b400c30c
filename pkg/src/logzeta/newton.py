"""Newton-polyhedron pipeline.

From the support of a polynomial vanishing at the origin we compute the
Newton polyhedron (as its normal complex inside the dual orthant), the face
records, the global and local motivic zeta functions of a nondegenerate
polynomial, the corresponding fan model, candidate poles, and a finite-field
nondegeneracy probe.

The polyhedron is never built as a vertex/facet hull: we take the cone over
the lifted support points together with the recession orthant, and read
faces, normal cones and witnesses from its face lattice.  That keeps all
computations inside the exact cone kernel.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Optional, Sequence

from .cones import (
    Cone,
    ConeComplex,
    box_points,
    cone_from_rays,
    faces,
    triangulate_half_open,
)
from .cones import complex_from_cones
from .intlin import Vec, dot, is_zero_vec, vec_add, zero_vec
from .mring import MClass
from .series import ZSeries
from .zeta import FanModel


@dataclass(frozen=True)
class NewtonInput:
    n: int
    support: tuple[Vec, ...]
    coeffs: Optional[dict[Vec, Fraction]] = None

    def __post_init__(self):
        if not self.support:
            raise ValueError("empty support")
        seen = set()
        for w in self.support:
            if len(w) != self.n or any(x < 0 for x in w):
                raise ValueError(f"support point {w} not in N^{self.n}")
            if is_zero_vec(w):
                raise ValueError("support contains the origin (f(0) must vanish)")
            if w in seen:
                raise ValueError(f"duplicate support point {w}")
            seen.add(w)
        if self.coeffs is not None:
            for w in self.coeffs:
                if w not in seen:
                    raise ValueError(f"coefficient for non-support point {w}")


@dataclass(frozen=True)
class FaceRecord:
    """One face of the Newton polyhedron.

    ``normal_cone_closure`` is the closed cone of linear forms minimized on
    the face; its relative interior is the locus where the minimizing set is
    exactly ``argmin_support``.  ``m_witness`` is a support point on the
    face, so the minimum value function is u -> <u, m_witness> there.
    """

    face_id: str
    argmin_support: frozenset
    normal_cone_closure: Cone
    dim_face: int
    is_compact: bool
    m_witness: Vec

    def m_of(self, u: Vec) -> int:
        return dot(u, self.m_witness)


def _lift(w: Vec, last: int) -> Vec:
    return tuple(w) + (last,)


def newton_polyhedron(inp: NewtonInput) -> list[FaceRecord]:
    """All faces of the Newton polyhedron with their normal-cone data.

    The returned records cover the polyhedron itself (zero normal cone) down
    to the vertices (full-dimensional normal cones); their normal cones form
    a complete complex subdividing the dual orthant.
    """
    n = inp.n
    lifted = [_lift(w, 1) for w in inp.support]
    gens = lifted + [tuple(1 if j == i else 0 for j in range(n + 1)) for i in range(n)]
    c = cone_from_rays(n + 1, gens)
    dual_rays = c.facets  # rays of the dual cone
    found = []
    for g in faces(c):
        argmin = frozenset(w for w in inp.support if g.contains(_lift(w, 1)))
        if not argmin:
            continue  # face at infinity
        normals = [y for y in dual_rays if all(dot(y, r) == 0 for r in g.rays)]
        proj = [y[:n] for y in normals if not is_zero_vec(y[:n])]
        ncone = cone_from_rays(n, proj)
        found.append((g.dim - 1, argmin, ncone))
    found.sort(key=lambda t: (t[0], sorted(t[1]), t[2].rays))
    records = []
    for k, (dim_face, argmin, ncone) in enumerate(found):
        records.append(
            FaceRecord(
                face_id=f"tau{k}",
                argmin_support=argmin,
                normal_cone_closure=ncone,
                dim_face=dim_face,
                is_compact=_compact(ncone, inp.n),
                m_witness=min(argmin),
            )
        )
    return records


def _compact(ncone: Cone, n: int) -> bool:
    """Whether the relative interior of the normal cone meets the open orthant.

    Rays of normal cones are nonnegative, so this holds exactly when every
    coordinate is positive on the sum of the rays.
    """
    total = zero_vec(n)
    for r in ncone.rays:
        total = vec_add(total, r)
    return all(x > 0 for x in total)


def is_compact(face: FaceRecord) -> bool:
    return face.is_compact


def normal_complex(records: Sequence[FaceRecord], n: int) -> ConeComplex:
    return complex_from_cones(n, [r.normal_cone_closure for r in records], validate=False)


# ---------------------------------------------------------------------------
# Zeta functions.


def _sigma(u: Vec) -> int:
    return sum(u)


def _face_sum(rec: FaceRecord, n: int) -> ZSeries:
    """Closed form of sum over relint(normal cone) of L^{-sigma(u)} T^{m(u)}."""
    out = ZSeries.zero()
    for piece in triangulate_half_open(rec.normal_cone_closure, "relint"):
        denoms = []
        horiz = 0
        for g in piece.gens:
            b = rec.m_of(g)
            if b == 0:
                # facet normals with m = 0 are coordinate vectors: sigma = 1
                assert _sigma(g) == 1
                horiz += 1
            else:
                denoms.append((-_sigma(g), b))
        fold = MClass.l_power(horiz).mul_l1_pow(-horiz) if horiz else MClass.one()
        for u0 in box_points(piece):
            c = fold.scale_l(-_sigma(u0))
            out = out + ZSeries.term(c, rec.m_of(u0), denoms)
    return out


def _zeta(inp: NewtonInput, which: Literal["global", "local"]) -> ZSeries:
    records = newton_polyhedron(inp)
    jet_factor = ZSeries.term(MClass.l_power(-1), 1, [(-1, 1)])  # L^{-1}T/(1-L^{-1}T)
    out = ZSeries.zero()
    for rec in records:
        if which == "local" and not rec.is_compact:
            continue
        s_tau = _face_sum(rec, inp.n)
        x0 = MClass.symbol(f"X_tau(0)@{rec.face_id}")
        out = out + s_tau.scale(x0) * jet_factor
        # The unit-section term exists only when the uniformizer is not
        # invertible along the face, i.e. m does not vanish identically on
        # the normal cone; it then has positive T-degree throughout.
        if any(rec.m_of(r) != 0 for r in rec.normal_cone_closure.rays):
            x1 = MClass.symbol(f"X_tau(1)@{rec.face_id}")
            out = out + s_tau.scale(x1)
    return out


def newton_zeta(inp: NewtonInput) -> ZSeries:
    """Motivic zeta function of a polynomial nondegenerate for its Newton
    polyhedron, summed over all faces."""
    return _zeta(inp, "global")


def newton_zeta_local(inp: NewtonInput) -> ZSeries:
    """Local motivic zeta function at the origin: compact faces only."""
    return _zeta(inp, "local")


def newton_poles(inp: NewtonInput) -> frozenset[Fraction]:
    """Candidate poles {-1} ∪ {-sigma(v)/m(v) : v facet normal, m(v) > 0}."""
    out = {Fraction(-1)}
    for rec in newton_polyhedron(inp):
        if rec.dim_face == inp.n - 1:
            (v,) = rec.normal_cone_closure.pointed_rays()
            if rec.m_of(v) > 0:
                out.add(Fraction(-_sigma(v), rec.m_of(v)))
    return frozenset(out)


def newton_to_fanmodel(inp: NewtonInput) -> FanModel:
    """Fan model of the toric log model attached to the Newton polyhedron.

    Rank n+1: each face contributes its normal cone at level zero and the
    prism over it in the extra coordinate.  The uniformizer vector on a cell
    over face tau is (witness, 1), the divisor vector ((1,...,1) - witness, 0);
    face consistency holds because all witnesses of a face pair equally
    against its normal cone.
    """
    n = inp.n
    records = newton_polyhedron(inp)
    cells: dict[Cone, MClass] = {}
    vertical: list[tuple[Cone, FaceRecord]] = []
    for rec in records:
        base_rays = [_lift(r, 0) for r in rec.normal_cone_closure.rays]
        flat = cone_from_rays(n + 1, base_rays) if base_rays else cone_from_rays(n + 1, [])
        prism = cone_from_rays(n + 1, base_rays + [_lift(zero_vec(n), 1)])
        cells[flat] = MClass.symbol(f"X_tau(1)@{rec.face_id}")
        cells[prism] = MClass.symbol(f"X_tau(0)@{rec.face_id}")
        vertical.append((prism, rec))
    complex_ = complex_from_cones(n + 1, list(cells.keys()), validate=False)
    e_vecs: dict[Cone, Vec] = {}
    a_vecs: dict[Cone, Vec] = {}
    ones = (1,) * n
    for mc in complex_.maximal_cells():
        rec = next(r for c, r in vertical if c == mc)
        e_vecs[mc] = _lift(rec.m_witness, 1)
        a_vecs[mc] = _lift(tuple(o - w for o, w in zip(ones, rec.m_witness)), 0)
    weights = {c: w for c, w in cells.items() if c in set(complex_.cells)}
    return FanModel(complex_, e_vecs, a_vecs, weights)


def face_report(inp: NewtonInput) -> list[dict]:
    """JSON-ready summary of the polyhedron's faces and normal data."""
    out = []
    for rec in newton_polyhedron(inp):
        rays = rec.normal_cone_closure.pointed_rays()
        out.append(
            {
                "id": rec.face_id,
                "dim": rec.dim_face,
                "compact": rec.is_compact,
                "support_points": [list(w) for w in sorted(rec.argmin_support)],
                "normal_rays": [list(r) for r in rays],
                "m_values": [rec.m_of(r) for r in rays],
                "sigma_values": [_sigma(r) for r in rays],
            }
        )
    return out


# ---------------------------------------------------------------------------
# Nondegeneracy probe.


ProbeResult = tuple[str, Optional[str], Optional[Vec]]  # (status, face_id, witness)


def nondegeneracy_probe(inp: NewtonInput, p: int) -> ProbeResult:
    """Search (F_p^x)^n for singular points of the face polynomials.

    Returns ("pass", None, None) when no modular witness exists (which is
    not a proof of nondegeneracy), ("fail", face_id, point) for a witness
    where the face polynomial and all its torus partials vanish, and
    ("inconclusive", None, None) when p < 3 or the coefficients do not
    reduce faithfully mod p.
    """
    if inp.coeffs is None:
        raise ValueError("probe needs coefficients")
    if len(inp.coeffs) != len(inp.support):
        raise ValueError("probe needs a coefficient for every support point")
    if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
        raise ValueError(f"{p} is not prime")
    if p < 3:
        return ("inconclusive", None, None)
    red: dict[Vec, int] = {}
    for w, c in inp.coeffs.items():
        c = Fraction(c)
        if c.denominator % p == 0:
            raise ValueError(f"coefficient {c} has denominator divisible by {p}")
        num = c.numerator % p
        den_inv = pow(c.denominator % p, -1, p)
        val = num * den_inv % p
        if val == 0:
            return ("inconclusive", None, None)  # support degenerates mod p
        red[w] = val
    units = list(range(1, p))
    from itertools import product

    for rec in newton_polyhedron(inp):
        pts = sorted(rec.argmin_support)
        for x in product(units, repeat=inp.n):
            powers = [[pow(xi, k, p) for k in range(max(w[i] for w in pts) + 1)] for i, xi in enumerate(x)]
            val = 0
            partials = [0] * inp.n
            for w in pts:
                mono = red[w]
                for i in range(inp.n):
                    mono = mono * powers[i][w[i]] % p
                val = (val + mono) % p
                for i in range(inp.n):
                    partials[i] = (partials[i] + w[i] * mono) % p
            if val == 0 and all(pi == 0 for pi in partials):
                return ("fail", rec.face_id, tuple(x))
    return ("pass", None, None)
