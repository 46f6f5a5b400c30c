"""Rational polyhedral cones and cone complexes, exact over the integers.

A :class:`Cone` carries both descriptions at once: a canonical list of
primitive generators (``rays``) and a canonical list of primitive inward
normals (``facets``).  A cone whose lineality space is nonzero lists a pair
``v, -v`` of generators for each line direction; likewise a cone that is not
full dimensional lists complementary ``u, -u`` pairs among its facets, so
``dual_cone`` is literally the swap of the two lists.

The double description computation is done from scratch with incremental
halfspace insertion; everything downstream (faces, subdivision, resolution,
half-open simplicial decomposition, fundamental-parallelepiped enumeration)
is built on it.  Intended scale is small ambient rank and a few dozen rays.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import ceil, floor, gcd
from typing import Iterable, Literal, Optional, Sequence

from .intlin import (
    Vec,
    content_primitive,
    det,
    dot,
    from_columns,
    inverse_rational,
    is_zero_vec,
    kernel_basis,
    rank as mat_rank,
    saturation_basis,
    smith_normal_form,
    solve_integer,
    solve_rational,
    vec_add,
    vec_scale,
    vec_sub,
    zero_vec,
)


class LinealityError(ValueError):
    """Raised when an operation requires a strictly convex cone."""


def primitive(v: Vec) -> Vec:
    g, p = content_primitive(v)
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    return p


# ---------------------------------------------------------------------------
# Double description.

_Ray = tuple[Vec, frozenset]


def _dd_insert(lines: list[Vec], rays: list[_Ray], u: Vec, idx: int) -> tuple[list[Vec], list[_Ray]]:
    """Intersect the cone generated by (lines, rays) with {x : <u,x> >= 0}.

    Each ray carries the set of previously inserted inequality indices it is
    tight on; lines are tight on all of them by construction.
    """
    # Case A: some line pairs nontrivially with u; that line folds into a ray.
    pivot_at = next((i for i, l in enumerate(lines) if dot(u, l) != 0), None)
    if pivot_at is not None:
        pivot = lines[pivot_at]
        d0 = dot(u, pivot)
        if d0 < 0:
            pivot = vec_scale(-1, pivot)
            d0 = -d0
        new_lines = []
        for i, l in enumerate(lines):
            if i == pivot_at:
                continue
            dl = dot(u, l)
            new_lines.append(primitive(vec_sub(vec_scale(d0, l), vec_scale(dl, pivot))))
        new_rays: list[_Ray] = []
        for r, tight in rays:
            dr = dot(u, r)
            rr = vec_sub(vec_scale(d0, r), vec_scale(dr, pivot))
            new_rays.append((primitive(rr), tight | {idx}))
        new_rays.append((primitive(pivot), frozenset(range(idx))))
        return new_lines, new_rays

    plus = [(r, t) for r, t in rays if dot(u, r) > 0]
    zero = [(r, t | {idx}) for r, t in rays if dot(u, r) == 0]
    minus = [(r, t) for r, t in rays if dot(u, r) < 0]
    if not minus:
        return lines, plus + zero
    out = plus + zero
    for (rp, tp), (rm, tm) in itertools.product(plus, minus):
        common = tp & tm
        if any(t >= common for r, t in rays if r != rp and r != rm):
            continue  # rp, rm not adjacent
        w = vec_add(vec_scale(dot(u, rp), rm), vec_scale(-dot(u, rm), rp))
        if not is_zero_vec(w):
            out.append((primitive(w), common | {idx}))
    return lines, out


def _dd_generators(n: int, ineqs: Sequence[Vec]) -> tuple[list[Vec], list[Vec]]:
    """Generators (lines, pointed rays) of {x in R^n : <u,x> >= 0 for all u}."""
    lines: list[Vec] = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    rays: list[_Ray] = []
    clean = [u for u in ineqs if not is_zero_vec(u)]
    for idx, u in enumerate(clean):
        lines, rays = _dd_insert(lines, rays, u, idx)
    return lines, sorted({r for r, _ in rays})


def _canon_generators(lines: Iterable[Vec], rays: Iterable[Vec]) -> tuple[Vec, ...]:
    gens: set[Vec] = set(rays)
    for l in lines:
        gens.add(l)
        gens.add(vec_scale(-1, l))
    return tuple(sorted(gens))


@dataclass(frozen=True)
class Cone:
    """Rational polyhedral cone with canonical ray and facet descriptions."""

    ambient_rank: int
    rays: tuple[Vec, ...]
    facets: tuple[Vec, ...]

    @property
    def dim(self) -> int:
        if not self.rays:
            return 0
        return mat_rank(tuple(self.rays))

    def lineality(self) -> list[Vec]:
        """One representative per line direction contained in the cone."""
        rayset = set(self.rays)
        return [r for r in self.rays if vec_scale(-1, r) in rayset and r > vec_scale(-1, r)]

    def pointed_rays(self) -> list[Vec]:
        rayset = set(self.rays)
        return [r for r in self.rays if vec_scale(-1, r) not in rayset]

    def is_strictly_convex(self) -> bool:
        return not self.lineality()

    def is_full_dim(self) -> bool:
        return self.dim == self.ambient_rank

    def contains(self, v: Vec) -> bool:
        if len(v) != self.ambient_rank:
            raise ValueError("dimension mismatch")
        return all(dot(u, v) >= 0 for u in self.facets)

    def relint_contains(self, v: Vec) -> bool:
        if len(v) != self.ambient_rank:
            raise ValueError("dimension mismatch")
        facetset = set(self.facets)
        for u in self.facets:
            val = dot(u, v)
            if vec_scale(-1, u) in facetset:
                if val != 0:  # span-cutting pair: v must lie on the hyperplane
                    return False
            elif val <= 0:
                return False
        return True

    def is_smooth(self) -> bool:
        """Rays form part of a basis of the ambient lattice."""
        if not self.is_strictly_convex():
            return False
        rays = self.pointed_rays()
        if len(rays) != self.dim:
            return False
        if not rays:
            return True
        s, _, _ = smith_normal_form(from_columns(rays))
        return all(s[i][i] == 1 for i in range(min(len(s), len(s[0]))))

    def _key(self) -> tuple:
        return (self.dim, self.rays, self.facets)

    def __str__(self) -> str:
        return f"Cone(rank {self.ambient_rank}, rays {list(self.rays)})"


def cone_from_rays(ambient_rank: int, rays: Sequence[Vec]) -> Cone:
    """Canonical cone generated by ``rays`` (possibly redundant, any sign)."""
    for r in rays:
        if len(r) != ambient_rank:
            raise ValueError("dimension mismatch")
    gens = [primitive(r) for r in rays if not is_zero_vec(r)]
    dual_lines, dual_rays = _dd_generators(ambient_rank, gens)
    facets = _canon_generators(dual_lines, dual_rays)
    prim_lines, prim_rays = _dd_generators(ambient_rank, facets)
    return Cone(ambient_rank, _canon_generators(prim_lines, prim_rays), facets)


def cone_from_facets(ambient_rank: int, facets: Sequence[Vec]) -> Cone:
    """Canonical cone cut out by the inward normals ``facets``."""
    lines, rays = _dd_generators(ambient_rank, list(facets))
    return cone_from_rays(ambient_rank, _canon_generators(lines, rays))


def dual_cone(c: Cone) -> Cone:
    return Cone(c.ambient_rank, c.facets, c.rays)


def cone_intersection(c1: Cone, c2: Cone) -> Cone:
    if c1.ambient_rank != c2.ambient_rank:
        raise ValueError("dimension mismatch")
    return cone_from_facets(c1.ambient_rank, list(c1.facets) + list(c2.facets))


def cone_le(small: Cone, big: Cone) -> bool:
    """Containment of cones."""
    return all(big.contains(r) for r in small.rays)


@lru_cache(maxsize=None)
def faces(c: Cone) -> tuple[Cone, ...]:
    """All faces of ``c``, including ``c`` itself and the minimal face."""
    pointed = tuple(c.pointed_rays())
    lines = c.lineality()
    facetset = set(c.facets)
    normals = [u for u in c.facets if vec_scale(-1, u) not in facetset]
    seen: set[frozenset] = set()
    queue: list[frozenset] = [frozenset(pointed)]
    while queue:
        rs = queue.pop()
        if rs in seen:
            continue
        seen.add(rs)
        for u in normals:
            sub = frozenset(r for r in rs if dot(u, r) == 0)
            if sub not in seen:
                queue.append(sub)
    out = []
    for rs in seen:
        gens = list(rs) + lines + [vec_scale(-1, l) for l in lines]
        out.append(cone_from_rays(c.ambient_rank, gens))
    return tuple(sorted(set(out), key=Cone._key))


def is_face_of(f: Cone, c: Cone) -> bool:
    return f in faces(c)


# ---------------------------------------------------------------------------
# Cone complexes.


@dataclass(frozen=True)
class ConeComplex:
    """Finite collection of cones closed under taking faces."""

    ambient_rank: int
    cells: tuple[Cone, ...]

    def maximal_cells(self) -> list[Cone]:
        return [
            c
            for c in self.cells
            if not any(o != c and cone_le(c, o) for o in self.cells)
        ]

    def rays_of_complex(self) -> list[Vec]:
        rays: set[Vec] = set()
        for c in self.cells:
            rays.update(c.pointed_rays())
        return sorted(rays)

    def support_cell(self, v: Vec) -> Optional[Cone]:
        """A smallest cell containing ``v``, or None if outside the support."""
        best = None
        for c in self.cells:
            if c.contains(v) and (best is None or c.dim < best.dim):
                best = c
        return best

    def smallest_containing(self, other: Cone) -> Optional[Cone]:
        candidates = [c for c in self.cells if cone_le(other, c)]
        if not candidates:
            return None
        return min(candidates, key=lambda c: (c.dim, c._key()))

    def validate(self) -> list[str]:
        """Diagnostics for the complex axioms (empty list when valid)."""
        problems = []
        cellset = set(self.cells)
        for c in self.cells:
            for f in faces(c):
                if f not in cellset:
                    problems.append(f"missing face {f} of {c}")
        for c1, c2 in itertools.combinations(self.cells, 2):
            inter = cone_intersection(c1, c2)
            if not (is_face_of(inter, c1) and is_face_of(inter, c2)):
                problems.append(f"{c1} and {c2} do not meet in a common face")
        return problems


def complex_from_cones(
    ambient_rank: int, cones: Sequence[Cone], validate: bool = True
) -> ConeComplex:
    cells: set[Cone] = set()
    for c in cones:
        if c.ambient_rank != ambient_rank:
            raise ValueError("dimension mismatch")
        cells.update(faces(c))
    complex_ = ConeComplex(ambient_rank, tuple(sorted(cells, key=Cone._key)))
    if validate:
        problems = complex_.validate()
        if problems:
            raise ValueError("not a cone complex: " + "; ".join(problems[:3]))
    return complex_


def star_subdivision(k: ConeComplex, rho: Vec) -> ConeComplex:
    """Star subdivision of the complex at the primitive lattice point ``rho``."""
    rho = primitive(rho)
    if k.support_cell(rho) is None:
        raise ValueError("subdivision point outside the support")
    new_cells: set[Cone] = set()
    for c in k.cells:
        if not c.contains(rho):
            new_cells.add(c)
            continue
        for g in faces(c):
            if not g.contains(rho):
                new_cells.add(cone_from_rays(k.ambient_rank, list(g.rays) + [rho]))
    return complex_from_cones(k.ambient_rank, list(new_cells), validate=False)


def _interior_dual(c: Cone) -> Vec:
    """A lattice functional strictly positive on ``c`` minus the origin."""
    if not c.is_strictly_convex():
        raise LinealityError("strictly convex cone required")
    total = zero_vec(c.ambient_rank)
    for r in dual_cone(c).pointed_rays():
        total = vec_add(total, r)
    return total


def _volume_sum(cells: Sequence[Cone], ell: Vec, span: Sequence[Vec]) -> Fraction:
    """Sum of normalized volumes of ``cell ∩ {<ell,x> <= 1}`` over ``cells``.

    ``span`` is a basis of the saturated span lattice all cells live in.
    """
    bmat = from_columns(list(span))
    total = Fraction(0)
    for c in cells:
        for piece in _triangulate(c):
            coords = []
            for r in piece:
                x = solve_integer(bmat, r)
                assert x is not None
                coords.append(x)
            vol = Fraction(abs(det(from_columns(coords))))
            for r in piece:
                vol /= dot(ell, r)
            total += vol
    return total


def check_subdivision(kp: ConeComplex, k: ConeComplex) -> bool:
    """Whether ``kp`` refines ``k`` with identical support."""
    if kp.ambient_rank != k.ambient_rank:
        raise ValueError("dimension mismatch")
    for c in kp.cells:
        if k.smallest_containing(c) is None:
            return False
    # Supports agree iff every maximal cell of k is exactly filled by the
    # kp-cells inside it; containment plus exact volume equality decides it.
    for big in k.maximal_cells():
        if big.dim == 0:
            continue
        ell = _interior_dual(big)
        span = saturation_basis(big.rays, big.ambient_rank)
        inside = [c for c in kp.cells if c.dim == big.dim and cone_le(c, big)]
        if _volume_sum(inside, ell, span) != _volume_sum([big], ell, span):
            return False
    return True


# ---------------------------------------------------------------------------
# Triangulation and resolution.


@lru_cache(maxsize=None)
def _triangulate(c: Cone) -> tuple[tuple[Vec, ...], ...]:
    """Pulling triangulation into simplicial pieces using existing rays only."""
    if not c.is_strictly_convex():
        raise LinealityError("strictly convex cone required")
    rays = tuple(c.rays)
    if c.dim == 0:
        return ((),)
    if len(rays) == c.dim:
        return (rays,)
    v = rays[0]
    pieces: list[tuple[Vec, ...]] = []
    for f in faces(c):
        if f.dim != c.dim - 1 or f.contains(v):
            continue
        for sub in _triangulate(f):
            pieces.append((v,) + sub)
    return tuple(pieces)


def _is_pyramid_apex(c: Cone, ray: Vec) -> bool:
    others = [r for r in c.rays if r != ray]
    return is_face_of(cone_from_rays(c.ambient_rank, others), c)


def resolve_complex(k: ConeComplex) -> ConeComplex:
    """Refine ``k`` to a complex all of whose cells are smooth.

    Cells that are smooth together with all their faces are never touched;
    the refinement has the same support and ``check_subdivision`` holds.
    """
    for c in k.cells:
        if not c.is_strictly_convex():
            raise LinealityError("strictly convex cells required")

    # Phase 1: make every cell simplicial by star subdivisions at rays.
    guard = 0
    while True:
        bad = next((c for c in k.cells if len(c.pointed_rays()) > c.dim), None)
        if bad is None:
            break
        pivot = next((r for r in bad.rays if not _is_pyramid_apex(bad, r)), None)
        if pivot is None:
            pivot = primitive(vec_add(bad.rays[0], bad.rays[1]))
        k = star_subdivision(k, pivot)
        guard += 1
        if guard > 10_000:
            raise RuntimeError("simplicialization did not terminate")

    # Phase 2: shrink multiplicities via fundamental-parallelepiped points.
    guard = 0
    while True:
        bad = next((c for c in k.cells if not c.is_smooth()), None)
        if bad is None:
            return k
        box = box_points(
            HalfOpenCone(bad.ambient_rank, tuple(bad.rays), (False,) * len(bad.rays))
        )
        candidates = [primitive(p) for p in box if not is_zero_vec(p)]
        pivot = min(candidates, key=lambda p: (sum(abs(x) for x in p), p))
        k = star_subdivision(k, pivot)
        guard += 1
        if guard > 100_000:
            raise RuntimeError("resolution did not terminate")


# ---------------------------------------------------------------------------
# Half-open decompositions and box points.


@dataclass(frozen=True)
class HalfOpenCone:
    """Simplicial cone with per-generator openness flags.

    The lattice point set is ``{u0 + sum_j k_j g_j : k_j >= 0}`` where ``u0``
    runs over the fundamental parallelepiped with coordinate ``j`` ranging in
    ``(0, 1]`` when ``strict[j]`` and in ``[0, 1)`` otherwise.
    """

    ambient_rank: int
    gens: tuple[Vec, ...]
    strict: tuple[bool, ...]

    def __post_init__(self):
        if len(self.gens) != len(self.strict):
            raise ValueError("one openness flag per generator required")
        if self.gens and mat_rank(tuple(self.gens)) != len(self.gens):
            raise ValueError("generators must be linearly independent")

    def contains_lattice_point(self, v: Vec) -> bool:
        if not self.gens:
            return is_zero_vec(v)
        coords = solve_rational(from_columns(self.gens), v)
        if coords is None:
            return False
        return all(
            lam > 0 if strict else lam >= 0
            for lam, strict in zip(coords, self.strict)
        )


def _piece_normals(gens: tuple[Vec, ...], comp: list[Vec]) -> list[Vec]:
    """For each generator, the functional in span(c) that vanishes on the
    other generators and is positive on it (the inward wall normals)."""
    rows = list(gens) + comp
    inv = inverse_rational(tuple(rows))
    out = []
    for j in range(len(gens)):
        col = [inv[i][j] for i in range(len(rows))]
        denom = 1
        for x in col:
            denom = denom * x.denominator // gcd(denom, x.denominator)
        out.append(primitive(tuple(int(x * denom) for x in col)))
    return out


def _perturbed_sign(u: Vec, base: Vec, directions: Sequence[Vec]) -> int:
    """Sign of <u, base + eps*d1 + eps^2*d2 + ...> for infinitesimal eps > 0."""
    s = dot(u, base)
    if s:
        return 1 if s > 0 else -1
    for d in directions:
        s = dot(u, d)
        if s:
            return 1 if s > 0 else -1
    raise ValueError("perturbation directions do not span the cone")


def triangulate_half_open(
    c: Cone, region: Literal["relint", "closed"] = "relint"
) -> list[HalfOpenCone]:
    """Partition the lattice points of a region of ``c`` into half-open cones.

    ``region`` selects the relative interior or the closed cone.  Generators
    of every piece are rays of ``c``; the openness flags implement the
    disjointness (walls counted once, boundary excluded for ``relint``).
    The construction is deterministic: pulling triangulation on the
    canonically ordered rays, wall sides resolved against a symbolically
    perturbed interior witness point.
    """
    if region not in ("relint", "closed"):
        raise ValueError("region must be 'relint' or 'closed'")
    if not c.is_strictly_convex():
        raise LinealityError("strictly convex cone required")
    if c.dim == 0:
        return [HalfOpenCone(c.ambient_rank, (), ())]
    # A lattice point belongs to the piece it enters when nudged towards the
    # witness: a facet stays closed exactly when the witness is on its strict
    # inner side.  The sum of the rays is interior (keeps the closed cone);
    # its negation is strictly outside every facet (drops the full boundary).
    base = zero_vec(c.ambient_rank)
    for r in c.rays:
        base = vec_add(base, r)
    if region == "relint":
        base = vec_scale(-1, base)
    directions = list(c.rays) if region == "closed" else [vec_scale(-1, r) for r in c.rays]
    span = saturation_basis(c.rays, c.ambient_rank)
    comp = kernel_basis(tuple(span))  # functionals vanishing on span(c)
    out = []
    for gens in _triangulate(c):
        flags = []
        for normal in _piece_normals(gens, comp):
            side = _perturbed_sign(normal, base, directions)
            flags.append(side < 0)
        out.append(HalfOpenCone(c.ambient_rank, gens, tuple(flags)))
    return out


AffineIneq = tuple[int, Vec]  # (c0, c): the halfspace c0 + <c, x> >= 0


def affine_lattice_points(n: int, ineqs: Sequence[AffineIneq]) -> list[Vec]:
    """All integer points of a bounded polyhedron {x : c0 + <c,x> >= 0}.

    Exact Fourier-Motzkin elimination provides tight per-coordinate bounds,
    so enumeration cost is proportional to the number of points (plus small
    polynomial overhead).  Raises if some direction is unbounded.
    """
    systems: list[list[AffineIneq]] = [list(ineqs)]
    for level in range(n, 1, -1):
        cur = systems[0]
        nxt: list[AffineIneq] = []
        k = level - 1  # eliminate coordinate k
        pos = [iq for iq in cur if iq[1][k] > 0]
        neg = [iq for iq in cur if iq[1][k] < 0]
        zero = [iq for iq in cur if iq[1][k] == 0]
        nxt.extend((c0, c[:k]) for c0, c in zero)
        for (p0, p), (m0, m) in itertools.product(pos, neg):
            a, b = p[k], -m[k]
            c0 = b * p0 + a * m0
            c = tuple(b * p[i] + a * m[i] for i in range(k))
            nxt.append((c0, c))
        seen = set()
        dedup = []
        for c0, c in nxt:
            g = 0
            for x in (c0, *c):
                g = gcd(g, abs(x))
            if g > 1:
                c0, c = c0 // g, tuple(x // g for x in c)
            if (c0, c) not in seen:
                seen.add((c0, c))
                dedup.append((c0, c))
        systems.insert(0, dedup)

    out: list[Vec] = []

    def rec(prefix: tuple[int, ...]) -> None:
        k = len(prefix)
        lo: Optional[Fraction] = None
        hi: Optional[Fraction] = None
        for c0, c in systems[k]:
            coef = c[k]
            rest = c0 + sum(c[i] * prefix[i] for i in range(k))
            if coef > 0:
                val = Fraction(-rest, coef)
                lo = val if lo is None else max(lo, val)
            elif coef < 0:
                val = Fraction(-rest, coef)
                hi = val if hi is None else min(hi, val)
            elif rest < 0:
                return
        if lo is None or hi is None:
            raise ValueError("polyhedron is unbounded")
        start, stop = ceil(lo), floor(hi)
        for v in range(start, stop + 1):
            new = prefix + (v,)
            if k + 1 == n:
                out.append(new)
            else:
                rec(new)

    if n == 0:
        if all(c0 >= 0 for c0, _ in ineqs):
            out.append(())
        return out
    rec(())
    return out


def box_points(h: HalfOpenCone) -> list[Vec]:
    """Lattice points of the half-open fundamental parallelepiped of ``h``.

    The count always equals the index of the generator lattice inside the
    saturated lattice of its span.
    """
    n = h.ambient_rank
    k = len(h.gens)
    if k == 0:
        return [zero_vec(n)]
    span = saturation_basis(h.gens, n)
    bmat = from_columns(span)
    coords = []
    for g in h.gens:
        x = solve_integer(bmat, g)
        assert x is not None
        coords.append(x)
    gmat = from_columns(coords)  # k x k, invertible over Q
    s, u, _ = smith_normal_form(gmat)
    divisors = [s[i][i] for i in range(k)]
    uinv_cols = []
    for i in range(k):
        e = tuple(1 if j == i else 0 for j in range(k))
        col = solve_integer(u, e)
        assert col is not None
        uinv_cols.append(col)
    ginv = inverse_rational(gmat)
    points: list[Vec] = []
    for combo in itertools.product(*[range(d) for d in divisors]):
        z = [0] * k
        for j, c in enumerate(combo):
            if c:
                for i in range(k):
                    z[i] += c * uinv_cols[j][i]
        lam = [sum(ginv[i][j] * z[j] for j in range(k)) for i in range(k)]
        shifted = []
        for lam_j, strict in zip(lam, h.strict):
            if strict:
                frac = lam_j - ceil(lam_j) + 1  # in (0, 1]
            else:
                frac = lam_j - floor(lam_j)  # in [0, 1)
            shifted.append(frac)
        y = []
        for i in range(k):
            val = sum((coords[j][i] * shifted[j] for j in range(k)), Fraction(0))
            assert val.denominator == 1
            y.append(int(val))
        pt = zero_vec(n)
        for i in range(k):
            pt = vec_add(pt, vec_scale(y[i], span[i]))
        points.append(pt)
    expect = 1
    for d in divisors:
        expect *= d
    assert len(points) == expect
    return points
