import random
from fractions import Fraction

import pytest

from logzeta.mring import MClass
from logzeta.newton import (
    NewtonInput,
    face_report,
    newton_poles,
    newton_polyhedron,
    newton_to_fanmodel,
    newton_zeta,
    newton_zeta_local,
    nondegeneracy_probe,
    normal_complex,
)
from logzeta.series import equal
from logzeta.zeta import fan_poincare, fan_poles, validate_model

from genutil import newton_expand_oracle, random_support

CUSP = NewtonInput(2, ((2, 0), (0, 3)))


def test_input_validation():
    with pytest.raises(ValueError):
        NewtonInput(2, ())
    with pytest.raises(ValueError):
        NewtonInput(2, ((0, 0),))
    with pytest.raises(ValueError):
        NewtonInput(2, ((1, 0), (1, 0)))
    with pytest.raises(ValueError):
        NewtonInput(2, ((-1, 2),))


def test_cusp_polyhedron():
    records = newton_polyhedron(CUSP)
    facets = [r for r in records if r.dim_face == 1]
    normals = {r.normal_cone_closure.pointed_rays()[0]: r.m_of(r.normal_cone_closure.pointed_rays()[0]) for r in facets}
    assert normals == {(3, 2): 6, (1, 0): 0, (0, 1): 0}
    vertices = {min(r.argmin_support) for r in records if r.dim_face == 0}
    assert vertices == {(2, 0), (0, 3)}
    assert sum(1 for r in facets if r.is_compact) == 1


def test_single_point_support():
    records = newton_polyhedron(NewtonInput(2, ((1, 1),)))
    by_dim = {}
    for r in records:
        by_dim.setdefault(r.dim_face, []).append(r)
    assert len(by_dim[0]) == 1  # vertex
    vertex = by_dim[0][0]
    assert vertex.normal_cone_closure.dim == 2  # whole dual orthant
    assert vertex.is_compact
    assert len(by_dim[1]) == 2 and not any(r.is_compact for r in by_dim[1])
    assert len(by_dim[2]) == 1


def test_linear_form_faces():
    inp = NewtonInput(3, ((1, 0, 0), (0, 1, 0), (0, 0, 1)))
    records = newton_polyhedron(inp)
    # vertex count = 3, the compact simplex facet is present
    assert sum(1 for r in records if r.dim_face == 0) == 3
    compact_facets = [r for r in records if r.dim_face == 2 and r.is_compact]
    assert len(compact_facets) == 1
    (v,) = compact_facets[0].normal_cone_closure.pointed_rays()
    assert v == (1, 1, 1)


def test_dim_complementarity():
    rng = random.Random(12)
    for _ in range(8):
        inp = random_support(rng, rng.randint(1, 3))
        for r in newton_polyhedron(inp):
            assert r.normal_cone_closure.dim == inp.n - r.dim_face


def test_m_zero_facets_are_coordinate_normals():
    rng = random.Random(13)
    for _ in range(10):
        inp = random_support(rng, rng.randint(2, 3))
        for r in newton_polyhedron(inp):
            if r.dim_face == inp.n - 1:
                (v,) = r.normal_cone_closure.pointed_rays()
                if r.m_of(v) == 0:
                    assert sum(v) == 1 and all(x in (0, 1) for x in v)


def test_omega_minus_witness_in_dual():
    rng = random.Random(14)
    for _ in range(8):
        inp = random_support(rng, 2)
        for r in newton_polyhedron(inp):
            for w in inp.support:
                diff = tuple(a - b for a, b in zip(w, r.m_witness))
                for u in r.normal_cone_closure.rays:
                    assert sum(x * y for x, y in zip(u, diff)) >= 0


def test_normal_complex_is_complete():
    rng = random.Random(15)
    for _ in range(6):
        inp = random_support(rng, 2)
        records = newton_polyhedron(inp)
        k = normal_complex(records, inp.n)
        assert k.validate() == []
        # partition: relint point counts of cells sum to the orthant count
        import itertools

        bound = 7
        pts = [p for p in itertools.product(range(bound + 1), repeat=2)]
        for p in pts:
            owners = [r for r in records if r.normal_cone_closure.relint_contains(p)]
            assert len(owners) == 1


def test_face_report_is_json_ready():
    import json

    report = face_report(CUSP)
    json.dumps(report)  # serializable
    assert len(report) == 6
    facet = next(r for r in report if r["dim"] == 1 and r["compact"])
    assert facet["normal_rays"] == [[3, 2]]
    assert facet["m_values"] == [6] and facet["sigma_values"] == [5]


def test_cusp_poles():
    assert newton_poles(CUSP) == {Fraction(-1), Fraction(-5, 6)}


def test_axis_pair_poles():
    for a in range(2, 6):
        for b in range(2, 6):
            poles = newton_poles(NewtonInput(2, ((a, 0), (0, b))))
            from math import gcd

            g = gcd(a, b)
            expect = {Fraction(-1), Fraction(-(a + b), a * b)}
            assert poles == expect, (a, b)


def test_xy_poles():
    assert newton_poles(NewtonInput(2, ((1, 1),))) == {Fraction(-1)}


def test_zeta_matches_poles():
    z = newton_zeta(CUSP)
    assert z.candidate_poles() == {Fraction(-1), Fraction(-5, 6)}


def test_zeta_expansion_oracle():
    rng = random.Random(16)
    for _ in range(8):
        inp = random_support(rng, rng.randint(1, 3))
        got = [c.truncate_l_below(-20) for c in newton_zeta(inp).expand(10)]
        assert got == newton_expand_oracle(inp, 10, 20), inp.support


def test_local_terms_subset_of_global():
    rng = random.Random(18)
    for _ in range(8):
        inp = random_support(rng, rng.randint(1, 3))
        glob = newton_zeta(inp)
        loc = newton_zeta_local(inp)
        compact_ids = {
            r.face_id for r in newton_polyhedron(inp) if r.is_compact
        }
        for (beta, denoms), c in loc.terms.items():
            assert glob.terms.get((beta, denoms)) is not None
            for sym in c.terms:
                face = sym.split("@")[1]
                assert face in compact_ids
        # global = local + non-compact part, term by term
        noncompact = glob - loc
        for c in noncompact.terms.values():
            for sym in c.terms:
                assert sym.split("@")[1] not in compact_ids


def test_vertex_only_local():
    inp = NewtonInput(2, ((1, 1),))
    loc = newton_zeta_local(inp)
    ids = {sym.split("@")[1] for c in loc.terms.values() for sym in c.terms}
    records = newton_polyhedron(inp)
    vertex_id = next(r.face_id for r in records if r.dim_face == 0)
    assert ids == {vertex_id}


# ---------------------------------------------------------------------------
# Fan model and the cross-pipeline identity.


def test_newton_model_validates():
    model = newton_to_fanmodel(CUSP)
    assert validate_model(model) == []
    # horizontal coordinate rays carry a-value 1
    n = CUSP.n
    for mc in model.complex.maximal_cells():
        e, a = model.e_vecs[mc], model.a_vecs[mc]
        for r in mc.rays:
            if sum(x * y for x, y in zip(e, r)) == 0:
                assert sum(x * y for x, y in zip(a, r)) == 1


def test_cross_pipeline_identity():
    rng = random.Random(19)
    inputs = [CUSP, NewtonInput(2, ((1, 1),)), NewtonInput(1, ((2,),))]
    inputs += [random_support(rng, rng.randint(1, 2), max_points=4, max_coord=4) for _ in range(5)]
    for inp in inputs:
        model = newton_to_fanmodel(inp)
        assert validate_model(model) == []
        lhs = fan_poincare(model, inp.n - 1).subst_T_L(-1).scale(MClass.l_power(inp.n - 1))
        assert equal(lhs, newton_zeta(inp)), inp.support


def test_fan_poles_shifted_match():
    model = newton_to_fanmodel(CUSP)
    shifted = {p - 1 for p in fan_poles(model)}
    assert newton_poles(CUSP) <= shifted
    assert newton_zeta(CUSP).candidate_poles() <= shifted


# ---------------------------------------------------------------------------
# Nondegeneracy probe.


def test_probe_cusp_passes():
    inp = NewtonInput(2, ((2, 0), (0, 3)), {(2, 0): Fraction(1), (0, 3): Fraction(1)})
    assert nondegeneracy_probe(inp, 7) == ("pass", None, None)


def test_probe_square_fails():
    # x^2 + 2xy + y^2 = (x+y)^2: singular along x = -y on the compact facet
    inp = NewtonInput(
        2,
        ((2, 0), (1, 1), (0, 2)),
        {(2, 0): Fraction(1), (1, 1): Fraction(2), (0, 2): Fraction(1)},
    )
    status, face, witness = nondegeneracy_probe(inp, 7)
    assert status == "fail"
    x, y = witness
    assert (x + y) % 7 == 0
    records = newton_polyhedron(inp)
    rec = next(r for r in records if r.face_id == face)
    assert len(rec.argmin_support) == 3  # the compact facet carries all three points


def test_probe_small_prime_inconclusive():
    inp = NewtonInput(2, ((2, 0), (0, 3)), {(2, 0): Fraction(1), (0, 3): Fraction(1)})
    assert nondegeneracy_probe(inp, 2)[0] == "inconclusive"


def test_probe_coefficient_degenerates():
    inp = NewtonInput(2, ((2, 0), (0, 3)), {(2, 0): Fraction(7), (0, 3): Fraction(1)})
    assert nondegeneracy_probe(inp, 7)[0] == "inconclusive"


def test_probe_bad_prime_and_denominator():
    inp = NewtonInput(2, ((2, 0), (0, 3)), {(2, 0): Fraction(1), (0, 3): Fraction(1, 7)})
    with pytest.raises(ValueError):
        nondegeneracy_probe(inp, 7)
    with pytest.raises(ValueError):
        nondegeneracy_probe(inp, 9)
