from fractions import Fraction

import pytest

from freemeixner import catalog
from freemeixner.catalog import (density_check, exponentiated_semicircular, free_multinomial, free_pair_sum_moment,
                                 free_poisson, free_product_family, multinomial, multinomial_pde_residual,
                                 one_dim_density, semicircular, simple_quadratic, simple_quadratic_matrices)
from freemeixner.fock import DataError, fock_cumulant, fock_moment, fock_moment_table
from freemeixner.meixner import tracial_conditions, verify_meixner
from freemeixner.moments import (check_positivity, free_product, is_tracial,
                                 moments_to_cumulants)
from freemeixner.scalars import matmul, words_upto

F = Fraction


def test_semicircular_moments():
    s = semicircular(2)
    assert fock_moment(s, (1, 2, 2, 1)) == 1
    assert fock_moment(s, (1, 2, 1, 2)) == 0
    assert fock_moment(s, (1,) * 6) == 5
    assert tracial_conditions(s).extra["tracial"]


def test_free_poisson():
    fp = free_poisson(1, [[[1]]])
    assert [fock_moment(fp, (1,) * n) for n in range(1, 5)] == [0, 1, 1, 3]
    assert fock_cumulant(fp, (1, 1, 1, 1, 1)) == 1
    d2 = free_poisson(2, [[[1, 2], [2, 0]], [[2, 0], [0, 1]]])
    assert fock_cumulant(d2, (1, 2, 1)) == 2  # a-_1 T_2 a+_1 = (T_2)_{11}
    assert not tracial_conditions(free_poisson(2)).extra["tracial"]


def test_free_product_family():
    b, c = [F(1), F(-3)], [F(1, 2), F(2)]
    data = free_product_family(b, c)
    assert fock_cumulant(data, (1, 1, 1)) == b[0]
    assert fock_cumulant(data, (2, 2, 2, 2)) == b[1] ** 2 + c[1]
    parts = [fock_moment_table(free_product_family([b[i]], [c[i]]), 6) for i in range(2)]
    assert free_product(parts) == fock_moment_table(data, 6)
    assert tracial_conditions(data).extra["tracial"]
    with pytest.raises(ValueError):
        free_product_family([1], [1, 2])


def test_exponentiated_semicircular():
    data = exponentiated_semicircular([1, 1], [1, 2])
    assert fock_cumulant(data, (1, 2, 2, 1)) != 0
    rep = tracial_conditions(data)
    assert not rep.extra["tracial"]
    assert fock_moment(data, (1, 1, 2)) == 0 and fock_moment(data, (1, 2, 1)) == 1
    assert fock_moment_table(exponentiated_semicircular([3], [F(1, 2)]), 6) == \
        fock_moment_table(free_product_family([3], [F(1, 2)]), 6)


def test_simple_quadratic():
    for d in (2, 3, 4):
        for c in (F(1), F(-1, 2), F(5)):
            data = simple_quadratic(c, d=d)
            T = data.T
            for i in range(d):
                for j in range(d):
                    comm = [[a - b for a, b in zip(r, s)] for r, s in zip(matmul(T[i], T[j]), matmul(T[j], T[i]))]
                    want = [[c * ((a, b) == (i, j)) - c * ((a, b) == (j, i)) for b in range(d)] for a in range(d)]
                    assert comm == want
            assert tracial_conditions(data, length=4).extra["tracial"]
    with pytest.raises(DataError):
        simple_quadratic(1, T=simple_quadratic_matrices(2, 2))
    with pytest.raises(DataError):
        simple_quadratic(-2, d=2)


def test_multinomial_model():
    p = [F(1, 6), F(1, 3), F(1, 2)]
    model = multinomial(p)
    assert model.moment((2, 2, 2)) == F(1, 3)
    assert model.moment((1, 2)) == 0 and model.moment((3, 1, 3)) == 0
    assert all(model.kernel_checks().values())
    assert not any(multinomial_pde_residual(model, 4).values())
    m = model.moment_table(5)
    assert is_tracial(m)
    for bad in ([F(1, 2), F(1, 3)], [F(3, 2), F(-1, 2)], []):
        with pytest.raises(DataError):
            multinomial(bad)


def test_free_multinomial():
    p = [F(1, 3), F(2, 3)]
    one = free_multinomial(p, 1, 6)
    assert one == multinomial(p).moment_table(6)
    two = free_multinomial(p, 2, 6)
    r1, r2 = moments_to_cumulants(one), moments_to_cumulants(two)
    assert all(r2[u] == 2 * r1[u] for u in words_upto(2, 6))
    model = multinomial(p)
    for u in words_upto(2, 4):
        if u:
            assert free_pair_sum_moment(model, u) == two[u]
    three_halves = free_multinomial(p, F(3, 2), 6)
    assert is_tracial(three_halves)
    assert check_positivity(three_halves, 3)
    with pytest.raises(DataError):
        free_multinomial(p, F(1, 2))


def test_catalog_registry():
    assert set(catalog.NAMES) >= {"semicircular", "multinomial", "simple-quadratic-d4"}
    assert catalog.get("semicircular", d=3) == semicircular(3)
    assert isinstance(catalog.get("multinomial", d=3), catalog.MultinomialModel)
    with pytest.raises(KeyError):
        catalog.get("nope")
    names = [n for n, _ in catalog.meixner_catalog()]
    assert len(names) == len(set(names)) == 16


def test_catalog_passes_meixner_suite():
    for name, data in catalog.meixner_catalog():
        if data.d <= 3:
            rep = verify_meixner(data, 2, gf_degree=None, vector_degree=4, pde_degree=3)
            assert rep.passed, (name, [c.name for c in rep.failures()])


def test_density_values():
    assert one_dim_density(0, 0, 1, 0) == pytest.approx(1 / 3.141592653589793)
    assert one_dim_density(0, 0, 1, 3) == 0.0
    assert density_check(0, 0, 1)["status"] == "match"
    assert density_check(1, F(1, 2), 1)["status"] == "match"
    assert density_check(1, 0, 1)["status"] == "match"  # pole on the edge of the support
    assert density_check(1, F(1, 2), 2)["status"] == "match"
    assert density_check(0, 0, 3)["status"] == "match"
    assert density_check(3, 0, 1)["status"] in ("atoms present", "singular")
    with pytest.raises(ValueError):
        one_dim_density(0, -2, 1, 0)

