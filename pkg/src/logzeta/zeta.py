"""Zeta-function pipelines over the shared cone/series machinery.

Two kinds of combinatorial input are assembled here:

* :class:`SncdData` — multiplicities and weight orders of the components of
  a normal crossings special fibre, plus one opaque class symbol per
  nonempty stratum;
* :class:`FanModel` — a cone complex in valuation space with a piecewise
  linear uniformizer functional ``e``, a divisor functional ``a`` (both
  given by one dual vector per maximal cell, agreeing on shared faces) and
  one weight class per cell.

The central operation is :func:`fan_poincare`, the closed form of the
weighted sum over the complex's cells of the interior dual-point generating
functions.  Cells on which ``e`` vanishes identically belong to the generic
part of the model and contribute nothing (they are only checked for
smoothness); a ray paired to zero by ``e`` inside a contributing cell must
pair to one with ``a``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .cones import (
    Cone,
    ConeComplex,
    check_subdivision,
    complex_from_cones,
    cone_from_rays,
    resolve_complex,
    star_subdivision,
)
from .intlin import Vec, dot, from_columns, saturation_basis, solve_integer
from .mring import MClass
from .monoids import MarkedMonoid, SharpFsMonoid
from .series import ZSeries, cone_series


# ---------------------------------------------------------------------------
# sncd data and the Denef-Loeser style formulas.


@dataclass(frozen=True)
class SncdComponent:
    id: str
    N: int
    mu: Optional[int] = None
    nu: Optional[int] = None

    def __post_init__(self):
        if self.N < 1:
            raise ValueError(f"component {self.id}: multiplicity must be positive")


@dataclass(frozen=True)
class SncdData:
    m: int
    components: tuple[SncdComponent, ...]
    strata: tuple[tuple[frozenset, str], ...]  # (subset of ids, class symbol)

    def __post_init__(self):
        ids = [c.id for c in self.components]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate component ids")
        seen = set()
        for subset, _ in self.strata:
            if not subset:
                raise ValueError("empty stratum")
            if subset in seen:
                raise ValueError(f"duplicate stratum {sorted(subset)}")
            seen.add(subset)
            for i in subset:
                if i not in ids:
                    raise ValueError(f"stratum references unknown component {i!r}")

    def component(self, cid: str) -> SncdComponent:
        for c in self.components:
            if c.id == cid:
                return c
        raise KeyError(cid)


def _stratum_series(d: SncdData, subset: frozenset, symbol: str, orders: dict[str, int]) -> ZSeries:
    ids = sorted(subset)
    coeff = MClass.symbol(symbol).mul_l1_pow(len(ids) - 1)
    coeff = coeff.scale_l(-sum(orders[i] for i in ids))
    beta = sum(d.component(i).N for i in ids)
    denoms = [(-orders[i], d.component(i).N) for i in ids]
    return ZSeries.term(coeff, beta, denoms)


def sncd_poincare(d: SncdData) -> ZSeries:
    """Volume Poincare series of an sncd model: L^{-m} times the sum over
    strata of (L-1)^{|J|-1} [symbol_J] prod_j L^{-mu_j} T^{N_j} / (1 - L^{-mu_j} T^{N_j}).
    """
    orders = {}
    for c in d.components:
        if c.mu is None:
            raise ValueError(f"component {c.id} carries no mu")
        orders[c.id] = c.mu
    out = ZSeries.zero()
    for subset, symbol in d.strata:
        out = out + _stratum_series(d, subset, symbol, orders)
    return out.scale(MClass.l_power(-d.m))


def dl_zeta(d: SncdData) -> ZSeries:
    """Motivic zeta function from a resolution:
    sum over strata of (L-1)^{|J|-1} [symbol_J] prod_j L^{-nu_j} T^{N_j} / (1 - L^{-nu_j} T^{N_j}).
    """
    orders = {}
    for c in d.components:
        if c.nu is None:
            raise ValueError(f"component {c.id} carries no nu")
        orders[c.id] = c.nu
    out = ZSeries.zero()
    for subset, symbol in d.strata:
        out = out + _stratum_series(d, subset, symbol, orders)
    return out


def nearby_fibre(z: ZSeries) -> MClass:
    """Motivic nearby fibre: minus the T -> infinity limit of the series."""
    return -z.limit_T_inf()


# ---------------------------------------------------------------------------
# Fan models.


@dataclass(frozen=True)
class FanModel:
    """Cone complex with uniformizer/divisor functionals and cell weights.

    ``e_vecs`` and ``a_vecs`` give one dual vector per maximal cell;
    ``weights`` has one class per cell (cells missing from the mapping count
    as zero).  Weights are understood to already include their
    (L-1)^(dim-1) factor.
    """

    complex: ConeComplex
    e_vecs: dict[Cone, Vec]
    a_vecs: dict[Cone, Vec]
    weights: dict[Cone, MClass] = field(default_factory=dict)

    def owning_maximal(self, cell: Cone) -> Cone:
        for mc in self.e_vecs:
            if all(mc.contains(r) for r in cell.rays):
                return mc
        raise KeyError(f"cell {cell} not contained in any maximal cell")

    def e_value(self, v: Vec, cell: Optional[Cone] = None) -> int:
        owner = self.owning_maximal(cell if cell is not None else self._cell_of(v))
        return dot(self.e_vecs[owner], v)

    def a_value(self, v: Vec, cell: Optional[Cone] = None) -> int:
        owner = self.owning_maximal(cell if cell is not None else self._cell_of(v))
        return dot(self.a_vecs[owner], v)

    def _cell_of(self, v: Vec) -> Cone:
        cell = self.complex.support_cell(v)
        if cell is None:
            raise ValueError(f"{v} outside the support")
        return cell

    def weight(self, cell: Cone) -> MClass:
        return self.weights.get(cell, MClass.zero())

    def e_identically_zero(self, cell: Cone) -> bool:
        owner = self.owning_maximal(cell)
        return all(dot(self.e_vecs[owner], r) == 0 for r in cell.rays)


def validate_model(f: FanModel) -> list[str]:
    """Diagnostics for the model invariants; empty when the model is legal.

    Checked: complex validity, nonnegativity of e on the support, face
    consistency of e and a across maximal cells, smoothness of cells with
    identically zero e, and the horizontal-divisor rule (a ray paired to
    zero by e inside a contributing cell must pair to one with a).
    """
    problems = list(f.complex.validate())
    maximal = f.complex.maximal_cells()
    if set(f.e_vecs) != set(maximal) or set(f.a_vecs) != set(maximal):
        problems.append("e/a vectors must be indexed by the maximal cells")
        return problems
    for mc in maximal:
        for r in mc.rays:
            if dot(f.e_vecs[mc], r) < 0:
                problems.append(f"e negative on ray {r} of {mc}")
    # Face consistency: all maximal cells containing a cell agree on it.
    for cell in f.complex.cells:
        owners = [mc for mc in maximal if all(mc.contains(r) for r in cell.rays)]
        for r in cell.rays:
            evals = {dot(f.e_vecs[mc], r) for mc in owners}
            avals = {dot(f.a_vecs[mc], r) for mc in owners}
            if len(evals) > 1:
                problems.append(f"inconsistent e across shared face at ray {r}")
            if len(avals) > 1:
                problems.append(f"inconsistent a across shared face at ray {r}")
    # Generic-part smoothness and the horizontal-divisor rule.
    for cell in f.complex.cells:
        if f.e_identically_zero(cell):
            if not cell.is_smooth():
                problems.append(
                    f"cell {cell} lies in the generic part (e = 0) but is not smooth"
                )
    for mc in maximal:
        if f.e_identically_zero(mc):
            continue
        evec, avec = f.e_vecs[mc], f.a_vecs[mc]
        for r in mc.rays:
            if dot(evec, r) == 0 and dot(avec, r) != 1:
                problems.append(
                    "horizontal-divisor rule: ray "
                    f"{r} has e-value 0 but a-value {dot(avec, r)} (expected 1)"
                )
    return sorted(set(problems))


def _marked_monoid_for_cell(f: FanModel, cell: Cone) -> MarkedMonoid:
    """Sharp monoid dual to a cell, with the restricted markings.

    Dual points of the monoid are exactly the lattice points of the cell; the
    reduction to the cell's span lattice keeps all pairings integral.
    """
    n = f.complex.ambient_rank
    owner = f.owning_maximal(cell)
    evec, avec = f.e_vecs[owner], f.a_vecs[owner]
    span = saturation_basis(cell.rays, n)
    bmat = from_columns(span)
    coords = []
    for r in cell.rays:
        x = solve_integer(bmat, r)
        assert x is not None
        coords.append(x)
    d = len(span)
    cell_c = cone_from_rays(d, coords)
    sigma = Cone(d, cell_c.facets, cell_c.rays)  # dual swap
    e_red = tuple(dot(evec, b) for b in span)
    a_red = tuple(dot(avec, b) for b in span)
    return MarkedMonoid(SharpFsMonoid(d, sigma), e_red, a_red)


def fan_poincare(f: FanModel, m: int) -> ZSeries:
    """Weighted sum of interior cone series over the special cells, times L^{-m}."""
    problems = validate_model(f)
    if problems:
        raise ValueError("invalid model: " + "; ".join(problems[:3]))
    out = ZSeries.zero()
    for cell in f.complex.cells:
        weight = f.weight(cell)
        if weight.is_zero() or f.e_identically_zero(cell):
            continue
        mm = _marked_monoid_for_cell(f, cell)
        out = out + cone_series(mm, weight)
    return out.scale(MClass.l_power(-m))


def fan_poles(f: FanModel) -> frozenset[Fraction]:
    """Candidate poles: -a/e over the rays of the complex with positive e."""
    out = set()
    for cell in f.complex.cells:
        if cell.dim != 1:
            continue
        (ray,) = cell.pointed_rays()
        owner = f.owning_maximal(cell)
        ev = dot(f.e_vecs[owner], ray)
        if ev > 0:
            out.add(Fraction(-dot(f.a_vecs[owner], ray), ev))
    return frozenset(out)


def sncd_to_fanmodel(d: SncdData) -> FanModel:
    """Orthant model of sncd data: one coordinate per component.

    The cell for a declared stratum J is the orthant face spanned by the
    coordinates in J, weighted (L-1)^{|J|-1}[symbol_J]; undeclared faces get
    weight zero.  The uniformizer vector collects the multiplicities, the
    divisor vector the weight orders.
    """
    n = len(d.components)
    index = {c.id: i for i, c in enumerate(d.components)}
    for c in d.components:
        if c.mu is None:
            raise ValueError(f"component {c.id} carries no mu")
    cells = []
    weights: dict[Cone, MClass] = {}
    for subset, symbol in d.strata:
        rays = [tuple(1 if j == index[i] else 0 for j in range(n)) for i in subset]
        cell = cone_from_rays(n, rays)
        cells.append(cell)
        weights[cell] = MClass.symbol(symbol).mul_l1_pow(len(subset) - 1)
    complex_ = complex_from_cones(n, cells, validate=False)
    e_vec = tuple(c.N for c in d.components)
    a_vec = tuple(c.mu for c in d.components)
    e_vecs = {mc: e_vec for mc in complex_.maximal_cells()}
    a_vecs = {mc: a_vec for mc in complex_.maximal_cells()}
    return FanModel(complex_, e_vecs, a_vecs, weights)


def transport_subdivide(f: FanModel, kp: ConeComplex) -> FanModel:
    """Move a model to a subdivision of its complex.

    Weights are copied unchanged from the unique old cell whose relative
    interior contains the new cell's relative interior; the functionals are
    the same dual vectors restricted.
    """
    if not check_subdivision(kp, f.complex):
        raise ValueError("not a subdivision of the model's complex")
    new_weights: dict[Cone, MClass] = {}
    for cell in kp.cells:
        old = f.complex.smallest_containing(cell)
        assert old is not None
        w = f.weight(old)
        if not w.is_zero():
            new_weights[cell] = w
    new_e: dict[Cone, Vec] = {}
    new_a: dict[Cone, Vec] = {}
    for mc in kp.maximal_cells():
        old_owner = f.owning_maximal(mc)
        new_e[mc] = f.e_vecs[old_owner]
        new_a[mc] = f.a_vecs[old_owner]
    return FanModel(kp, new_e, new_a, new_weights)


def subdivide_model(f: FanModel, rho: Vec) -> FanModel:
    return transport_subdivide(f, star_subdivision(f.complex, rho))


def resolve_model(f: FanModel) -> FanModel:
    return transport_subdivide(f, resolve_complex(f.complex))
