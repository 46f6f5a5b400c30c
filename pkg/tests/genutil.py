"""Seeded random generators and independent oracles shared by the tests.

Oracles here deliberately avoid the code paths they check: lattice points
are enumerated with the affine enumerator (or plain boxes), sums are
accumulated term by term, and truncation arguments replace closed forms.
"""

from __future__ import annotations

import random

from logzeta.cones import (
    Cone,
    affine_lattice_points,
    complex_from_cones,
    cone_from_rays,
    star_subdivision,
)
from logzeta.intlin import Vec, dot, is_zero_vec, vec_add, vec_scale
from logzeta.mring import MClass
from logzeta.monoids import MarkedMonoid, SharpFsMonoid, local_dual_points
from logzeta.newton import NewtonInput, newton_polyhedron
from logzeta.zeta import FanModel, SncdComponent, SncdData


# ---------------------------------------------------------------------------
# Random geometry.


def random_cone(rng: random.Random, rank: int, max_entry: int = 6, tries: int = 200) -> Cone:
    """Random full-dimensional strictly convex cone."""
    for _ in range(tries):
        k = rng.randint(rank, rank + 2)
        rays = [
            tuple(rng.randint(0, max_entry) for _ in range(rank)) for _ in range(k)
        ]
        rays = [r for r in rays if not is_zero_vec(r)]
        if not rays:
            continue
        c = cone_from_rays(rank, rays)
        if c.is_strictly_convex() and c.dim == rank:
            return c
    raise RuntimeError("no cone found")


def dual_box_count(c: Cone) -> int:
    """Total fundamental-parallelepiped size of the dual's triangulation."""
    from logzeta.cones import _triangulate
    from logzeta.intlin import det, from_columns, solve_integer
    from logzeta.intlin import saturation_basis

    dual = Cone(c.ambient_rank, c.facets, c.rays)
    total = 0
    for gens in _triangulate(dual):
        span = saturation_basis(gens, c.ambient_rank)
        coords = [solve_integer(from_columns(span), g) for g in gens]
        total += abs(det(from_columns(coords)))
    return total


def random_marked_monoid(
    rng: random.Random,
    rank: int,
    max_entry: int = 6,
    interior_e: bool = True,
    max_box: int = 4000,
) -> MarkedMonoid:
    """Random marked monoid; with ``interior_e`` the marking avoids all facets
    of the cone, so the dual has no horizontal rays and the brute-force
    oracle is finite.  Cones whose dual decomposition has more than
    ``max_box`` parallelepiped points are resampled (enumeration cost grows
    with the index, not the input size)."""
    while True:
        c = random_cone(rng, rank, max_entry)
        if dual_box_count(c) <= max_box:
            break
    base = SharpFsMonoid(rank, c)
    while True:
        e = (0,) * rank
        for r in c.rays:
            e = vec_add(e, vec_scale(rng.randint(1 if interior_e else 0, 2), r))
        if is_zero_vec(e):
            continue
        if interior_e and not c.relint_contains(e):
            continue
        if not interior_e:
            break
        a = tuple(rng.randint(-3, 3) for _ in range(rank))
        return MarkedMonoid(base, e, a)
    a = tuple(rng.randint(-3, 3) for _ in range(rank))
    return MarkedMonoid(base, e, a)


def product_monoid_with_horizontals(
    rng: random.Random, vertical_rank: int, horiz_rank: int
) -> tuple[MarkedMonoid, MarkedMonoid, int]:
    """Marked monoid of the form (vertical block) ⊕ N^h with marking zero and
    divisor one on the horizontal block.

    Returns (product, vertical factor, h).  The interior dual sum of the
    product factorizes as (vertical sum) * (L-1)^{-h}, which is the exact
    reduction used to test horizontal folding against a finite oracle.
    """
    vm = random_marked_monoid(rng, vertical_rank, max_entry=4, interior_e=True)
    n = vertical_rank + horiz_rank
    rays = [r + (0,) * horiz_rank for r in vm.base.cone.rays]
    rays += [
        tuple(0 for _ in range(vertical_rank))
        + tuple(1 if j == i else 0 for j in range(horiz_rank))
        for i in range(horiz_rank)
    ]
    cone = cone_from_rays(n, rays)
    base = SharpFsMonoid(n, cone)
    e = vm.e_pi + (0,) * horiz_rank
    a = vm.a_div + (1,) * horiz_rank
    return MarkedMonoid(base, e, a), vm, horiz_rank


def brute_cone_sum(mm: MarkedMonoid, weight: MClass, degree: int) -> list[MClass]:
    """Coefficients T^1..T^degree of the interior dual sum, by enumeration."""
    out = [MClass.zero() for _ in range(degree)]
    for u in local_dual_points(mm, degree):
        d = dot(u, mm.e_pi)
        if 1 <= d <= degree:
            out[d - 1] = out[d - 1] + weight.scale_l(-dot(u, mm.a_div))
    return out


# ---------------------------------------------------------------------------
# Random sncd data and fan models.


def random_sncd(
    rng: random.Random,
    max_components: int = 4,
    all_strata: bool = True,
    with_nu: bool = False,
) -> SncdData:
    k = rng.randint(1, max_components)
    comps = []
    for i in range(k):
        comps.append(
            SncdComponent(
                id=f"c{i}",
                N=rng.randint(1, 4),
                mu=rng.randint(-3, 3),
                nu=rng.randint(1, 5) if with_nu else None,
            )
        )
    ids = [c.id for c in comps]
    subsets = []
    for mask in range(1, 2**k):
        subsets.append(frozenset(ids[i] for i in range(k) if mask >> i & 1))
    if not all_strata:
        keep = [s for s in subsets if rng.random() < 0.7]
        subsets = keep or subsets[:1]
    strata = tuple((s, "E" + "".join(sorted(x[1:] for x in s))) for s in subsets)
    return SncdData(rng.randint(0, 3), tuple(comps), strata)


def random_fan_model(rng: random.Random, rank: int, horizontals: bool = False) -> FanModel:
    """Random validated fan model on a subdivision of the orthant.

    Weights carry an explicit (L-1)^(dim-1) factor so that expansion
    coefficients stay pole-free at L = 1.  With ``horizontals`` the last
    coordinate's e-entry is zero and its a-entry one.
    """
    n = rank
    orthant = cone_from_rays(n, [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)])
    k = complex_from_cones(n, [orthant])
    for _ in range(rng.randint(0, 2)):
        v = tuple(rng.randint(0, 2) for _ in range(n))
        if is_zero_vec(v) or k.support_cell(v) is None:
            continue
        k = star_subdivision(k, v)
    if horizontals:
        e_vec = tuple(rng.randint(1, 4) for _ in range(n - 1)) + (0,)
        a_vec = tuple(rng.randint(-3, 3) for _ in range(n - 1)) + (1,)
    else:
        e_vec = tuple(rng.randint(1, 4) for _ in range(n))
        a_vec = tuple(rng.randint(-3, 3) for _ in range(n))
    weights = {}
    for i, cell in enumerate(k.cells):
        if cell.dim == 0:
            continue
        if rng.random() < 0.85:
            weights[cell] = MClass.symbol(f"U{i}").mul_l1_pow(cell.dim - 1)
    e_vecs = {mc: e_vec for mc in k.maximal_cells()}
    a_vecs = {mc: a_vec for mc in k.maximal_cells()}
    return FanModel(k, e_vecs, a_vecs, weights)


# ---------------------------------------------------------------------------
# Newton oracles.


def random_support(rng: random.Random, n: int, max_points: int = 6, max_coord: int = 5):
    pts = set()
    for _ in range(rng.randint(1, max_points)):
        w = tuple(rng.randint(0, max_coord) for _ in range(n))
        if not is_zero_vec(w):
            pts.add(w)
    if not pts:
        pts.add(tuple(1 for _ in range(n)))
    return NewtonInput(n, tuple(sorted(pts)))


def newton_expand_oracle(inp: NewtonInput, degree: int, lcut: int) -> list[MClass]:
    """Coefficients T^1..T^degree of the zeta function by direct enumeration,
    exact for Laurent monomials of L-degree >= -lcut.

    Every u in the orthant with sigma(u) <= lcut is assigned to its face (the
    record whose normal cone's relative interior contains it); it contributes
    the unit-section class at T^{m(u)} and the jet classes at T^{m(u)+k}.
    Points beyond the sigma cut only touch L-degrees below -lcut.
    """
    records = newton_polyhedron(inp)
    out = [MClass.zero() for _ in range(degree)]
    n = inp.n
    ineqs = [
        (0, tuple(1 if j == i else 0 for j in range(n))) for i in range(n)
    ] + [(lcut, tuple(-1 for _ in range(n)))]
    for u in affine_lattice_points(n, ineqs):
        rec = next(
            r for r in records if r.normal_cone_closure.relint_contains(u)
        )
        m = rec.m_of(u)
        sigma = sum(u)
        if 1 <= m <= degree:
            out[m - 1] = out[m - 1] + MClass.symbol(f"X_tau(1)@{rec.face_id}").scale_l(-sigma)
        k = 1
        while m + k <= degree:
            out[m + k - 1] = out[m + k - 1] + MClass.symbol(
                f"X_tau(0)@{rec.face_id}"
            ).scale_l(-sigma - k)
            k += 1
    return [c.truncate_l_below(-lcut) for c in out]
