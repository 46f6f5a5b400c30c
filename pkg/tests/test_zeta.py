import dataclasses
import random

import pytest

from logzeta.cones import cone_from_rays, complex_from_cones, resolve_complex, star_subdivision
from logzeta.mring import MClass
from logzeta.series import ZSeries, equal
from logzeta.zeta import (
    FanModel,
    SncdComponent,
    SncdData,
    dl_zeta,
    fan_poincare,
    fan_poles,
    nearby_fibre,
    sncd_poincare,
    sncd_to_fanmodel,
    transport_subdivide,
    validate_model,
)

from genutil import random_fan_model, random_sncd

SINGLE = SncdData(1, (SncdComponent("E", 1, mu=0, nu=1),), ((frozenset({"E"}), "E"),))
PAIR = SncdData(
    2,
    (SncdComponent("a", 1, mu=0, nu=1), SncdComponent("b", 2, mu=1, nu=3)),
    (
        (frozenset({"a"}), "Ea"),
        (frozenset({"b"}), "Eb"),
        (frozenset({"a", "b"}), "Eab"),
    ),
)


def test_sncd_poincare_single():
    s = sncd_poincare(SINGLE)
    assert str(s) == "[E]*L^-1*T/(1-T)"


def test_dl_zeta_single():
    z = dl_zeta(SINGLE)
    assert str(z) == "[E]*L^-1*T/(1-L^-1*T)"


def test_dl_zeta_poles():
    d = SncdData(1, (SncdComponent("E", 2, mu=1, nu=3),), ((frozenset({"E"}), "E"),))
    assert dl_zeta(d).candidate_poles() == {__import__("fractions").Fraction(-3, 2)}


def test_stratum_with_unknown_component_rejected():
    with pytest.raises(ValueError):
        SncdData(0, (SncdComponent("a", 1, mu=0),), ((frozenset({"zz"}), "E"),))


def test_dl_expansion_brute_force():
    # coefficient of T^d enumerates (k_j >= 1) with sum k_j N_j = d
    z = dl_zeta(PAIR)
    coeffs = z.expand(8)
    import itertools

    for d in range(1, 9):
        expect = MClass.zero()
        for subset, symbol in PAIR.strata:
            ids = sorted(subset)
            comps = [PAIR.component(i) for i in ids]
            for ks in itertools.product(range(1, d + 1), repeat=len(ids)):
                if sum(k * c.N for k, c in zip(ks, comps)) == d:
                    contrib = MClass.symbol(symbol).mul_l1_pow(len(ids) - 1)
                    contrib = contrib.scale_l(-sum(k * c.nu for k, c in zip(ks, comps)))
                    expect = expect + contrib
        assert coeffs[d - 1] == expect, d


def test_nearby_fibre_identity():
    got = nearby_fibre(dl_zeta(PAIR))
    one_minus_l = MClass.one() - MClass.l_power(1)
    expect = MClass.symbol("Ea") + MClass.symbol("Eb") + MClass.symbol("Eab") * one_minus_l
    assert got == expect


def test_nearby_fibre_zero():
    assert nearby_fibre(ZSeries.zero()) == MClass.zero()


def test_motivic_volume_of_poincare_series():
    # -lim of the volume series carries the same stratum combination, scaled
    rng = random.Random(200)
    one_minus_l = MClass.one() - MClass.l_power(1)
    for _ in range(8):
        d = random_sncd(rng, 3, all_strata=False)
        vol = nearby_fibre(sncd_poincare(d))
        expect = MClass.zero()
        for subset, symbol in d.strata:
            term = MClass.symbol(symbol)
            for _ in range(len(subset) - 1):
                term = term * one_minus_l
            expect = expect + term
        assert vol == expect.scale_l(-d.m)


def test_two_formula_consistency():
    rng = random.Random(100)
    for _ in range(10):
        d = random_sncd(rng, 4, all_strata=False, with_nu=True)
        d_mu = SncdData(
            d.m,
            tuple(dataclasses.replace(c, mu=c.nu - c.N) for c in d.components),
            d.strata,
        )
        lhs = dl_zeta(d)
        rhs = sncd_poincare(d_mu).subst_T_L(-1).scale(MClass.l_power(d.m))
        assert equal(lhs, rhs)


# ---------------------------------------------------------------------------
# Fan models.


def test_sncd_to_fanmodel_structure():
    model = sncd_to_fanmodel(PAIR)
    assert validate_model(model) == []
    assert model.complex.ambient_rank == 2
    # multiplicities and orders read back off the coordinate rays
    for i, comp in enumerate(PAIR.components):
        ray = tuple(1 if j == i else 0 for j in range(2))
        cell = model.complex.support_cell(ray)
        owner = model.owning_maximal(cell)
        assert model.e_vecs[owner][i] == comp.N
        assert model.a_vecs[owner][i] == comp.mu


def test_fan_agrees_with_sncd():
    rng = random.Random(7)
    for _ in range(10):
        d = random_sncd(rng, 3, all_strata=True)
        model = sncd_to_fanmodel(d)
        assert validate_model(model) == []
        assert fan_poincare(model, d.m).terms == sncd_poincare(d).terms


def test_single_ray_model():
    ray = cone_from_rays(1, [(1,)])
    k = complex_from_cones(1, [ray])
    model = FanModel(k, {ray: (2,)}, {ray: (3,)}, {ray: MClass.symbol("C")})
    s = fan_poincare(model, 1)
    expect = ZSeries.term(MClass.symbol("C").scale_l(-4), 2, [(-3, 2)])
    assert s.terms == expect.terms
    assert fan_poles(model) == {__import__("fractions").Fraction(-3, 2)}


def test_fan_poles_examples():
    d = SncdData(
        0,
        (SncdComponent("a", 1, mu=1), SncdComponent("b", 6, mu=5)),
        ((frozenset({"a"}), "Ea"), (frozenset({"b"}), "Eb")),
    )
    model = sncd_to_fanmodel(d)
    from fractions import Fraction

    assert fan_poles(model) == {Fraction(-1), Fraction(-5, 6)}


def test_validate_catches_horizontal_rule():
    orthant = cone_from_rays(2, [(1, 0), (0, 1)])
    k = complex_from_cones(2, [orthant])
    model = FanModel(
        k,
        {orthant: (1, 0)},
        {orthant: (0, 2)},  # horizontal ray with a-value 2
        {orthant: MClass.symbol("U").mul_l1_pow(1)},
    )
    problems = validate_model(model)
    assert any("horizontal-divisor" in p for p in problems)


def test_validate_catches_negative_e():
    orthant = cone_from_rays(2, [(1, 0), (0, 1)])
    k = complex_from_cones(2, [orthant])
    model = FanModel(k, {orthant: (1, -1)}, {orthant: (0, 1)}, {})
    assert any("negative" in p for p in validate_model(model))


def test_validate_catches_inconsistent_vectors():
    a = cone_from_rays(2, [(1, 0), (1, 1)])
    b = cone_from_rays(2, [(1, 1), (0, 1)])
    k = complex_from_cones(2, [a, b])
    model = FanModel(
        k,
        {a: (1, 1), b: (2, 1)},  # disagree on the shared ray (1,1)
        {a: (0, 0), b: (0, 0)},
        {},
    )
    assert any("inconsistent e" in p for p in validate_model(model))


def test_piecewise_linear_functionals():
    # continuous but not globally linear e across two cells
    a = cone_from_rays(2, [(1, 0), (1, 1)])
    b = cone_from_rays(2, [(1, 1), (0, 1)])
    k = complex_from_cones(2, [a, b])
    model = FanModel(
        k,
        {a: (2, 3), b: (1, 4)},  # both give 5 on the shared ray (1,1)
        {a: (1, 0), b: (1, 0)},
        {
            a: MClass.symbol("A").mul_l1_pow(1),
            b: MClass.symbol("B").mul_l1_pow(1),
            cone_from_rays(2, [(1, 1)]): MClass.symbol("W"),
        },
    )
    assert validate_model(model) == []
    s = fan_poincare(model, 0)
    # the shared-ray cell sums L^{-k} T^{5k}, k >= 1
    from fractions import Fraction

    assert Fraction(-1, 5) in s.candidate_poles()


def test_transport_identity_subdivision():
    model = sncd_to_fanmodel(PAIR)
    same = transport_subdivide(model, model.complex)
    assert same.weights == model.weights
    assert fan_poincare(same, 0).terms == fan_poincare(model, 0).terms


def test_transport_star_subdivision_invariance():
    model = sncd_to_fanmodel(PAIR)
    base = fan_poincare(model, PAIR.m)
    k2 = star_subdivision(model.complex, (1, 1))
    m2 = transport_subdivide(model, k2)
    assert validate_model(m2) == []
    assert equal(fan_poincare(m2, PAIR.m), base)
    # weights are inherited from the enclosing cell
    new_ray = cone_from_rays(2, [(1, 1)])
    orthant = cone_from_rays(2, [(1, 0), (0, 1)])
    assert m2.weight(new_ray) == model.weight(orthant)


def test_transport_requires_subdivision():
    model = sncd_to_fanmodel(PAIR)
    other = complex_from_cones(2, [cone_from_rays(2, [(1, 0), (1, 1)])])
    with pytest.raises(ValueError):
        transport_subdivide(model, other)


def test_random_model_invariance():
    rng = random.Random(31)
    for i in range(6):
        model = random_fan_model(rng, rng.randint(2, 3), horizontals=(i % 2 == 0))
        assert validate_model(model) == []
        base = fan_poincare(model, 1)
        v = tuple(rng.randint(0, 2) for _ in range(model.complex.ambient_rank))
        if all(x == 0 for x in v):
            v = (1,) * model.complex.ambient_rank
        m2 = transport_subdivide(model, star_subdivision(model.complex, v))
        assert equal(fan_poincare(m2, 1), base)
        m3 = transport_subdivide(model, resolve_complex(model.complex))
        assert validate_model(m3) == []
        assert equal(fan_poincare(m3, 1), base)
        for c in base.expand(6):
            c.assert_no_l1_pole()


def test_poles_never_grow_under_subdivision():
    rng = random.Random(57)
    for _ in range(5):
        model = random_fan_model(rng, 2)
        base = fan_poincare(model, 0)
        m2 = transport_subdivide(model, resolve_complex(model.complex))
        assert equal(fan_poincare(m2, 0), base)
