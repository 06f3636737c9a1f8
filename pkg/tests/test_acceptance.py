"""Acceptance gate: one pass/fail line per criterion.

Run with ``pytest tests/test_acceptance.py -s`` or ``python tests/test_acceptance.py``.
"""
import itertools
import random
import sys
import time
from fractions import Fraction

import pytest

from freemeixner import catalog
from freemeixner.fock import (beta, beta_inverse, enumerate_words, fock_cumulant_table, fock_moment,
                              fock_moment_table, growth_constant, nc0_cumulant_sum, random_meixner_data,
                              word_value)
from freemeixner.meixner import boxplus_fock_table, tracial_conditions, verify_meixner
from freemeixner.moments import boxplus_power, check_positivity, cumulants_to_moments
from freemeixner.partitions import PartitionClass, enumerate_partitions
from freemeixner.scalars import word_key, words_upto

F = Fraction
SEED = 20240601


def random_data(count, seed=SEED, max_d=3):
    rng = random.Random(seed)
    return [(f"random[{k}]", random_meixner_data(rng, rng.randint(1, max_d))) for k in range(count)]


def record(log, n, title, failures, detail, started):
    ok = not failures
    line = f"[{'PASS' if ok else 'FAIL'}] {n} {title}: {detail} ({time.perf_counter() - started:.1f}s)"
    if failures:
        line += f"; first failure: {failures[0]}"
    log.append(line)
    print(line)
    assert ok, line


def test_criterion_1_three_oracles(acceptance_log):
    t0 = time.perf_counter()
    bad, n = [], 0
    for name, data in catalog.meixner_catalog() + random_data(20):
        r = fock_cumulant_table(data, 6)
        via_table = cumulants_to_moments(r)
        for u in words_upto(data.d, 6):
            if not u:
                continue
            direct = fock_moment(data, u)
            n += 1
            if not direct == nc0_cumulant_sum(data, u, lambda w: r[w]) == via_table[u]:
                bad.append(f"{name} u={word_key(u)}")
    record(acceptance_log, 1, "moments from cumulants, three oracles", bad, f"{n} multi-indices agree exactly", t0)


def test_criterion_2_word_bijection(acceptance_log):
    t0 = time.perf_counter()
    bad, trips, sums = [], 0, 0
    inputs = {}
    for n in range(1, 9):
        grounds = []
        for pi in enumerate_partitions(range(1, n + 1), PartitionClass.NC0):
            choices = [list(enumerate_partitions(V, PartitionClass.NC0PRIME)) for V in pi.blocks]
            grounds.extend((pi, list(s)) for s in itertools.product(*choices))
        inputs[n] = grounds
    pool = [d for _, d in catalog.meixner_catalog() if d.d == 2] + [d for _, d in random_data(4, SEED + 2, 2)
                                                                   if d.d == 2]
    for u in words_upto(2, 8):
        if not u:
            continue
        words = set()
        for pi, sigmas in inputs[len(u)]:
            W = beta(u, pi, sigmas)
            trips += 1
            words.add(W)
            if beta_inverse(u, W) != (pi, sigmas):
                bad.append(f"round trip u={word_key(u)} pi={pi}")
        if words != set(enumerate_words(u)):
            bad.append(f"image of beta != W_n for u={word_key(u)}")
        for data in pool:
            sums += 1
            if sum((word_value(data, W) for W in words), F(0)) != fock_moment(data, u):
                bad.append(f"word sum u={word_key(u)}")
    record(acceptance_log, 2, "word/partition bijection", bad,
           f"{trips} round trips, {sums} word sums over all u with |u| <= 8", t0)


def test_criterion_3_meixner_equivalence(acceptance_log):
    t0 = time.perf_counter()
    bad, n = [], 0
    pool = catalog.meixner_catalog() + random_data(10, SEED + 3)
    for name, data in pool:
        rep = verify_meixner(data, N=3, gf_degree=4 if data.d <= 2 else None, vector_degree=4, pde_degree=4)
        n += len(rep.checks)
        bad.extend(f"{name}: {c.name}" for c in rep.failures())
    record(acceptance_log, 3, "five-way Meixner equivalence", bad, f"{n} checks on {len(pool)} data", t0)


def test_criterion_4_multinomial(acceptance_log):
    t0 = time.perf_counter()
    p = [F(1, 2), F(1, 3), F(1, 6)]
    model = catalog.multinomial(p)
    bad = []
    for u in words_upto(3, 5):
        if u:
            want = p[u[0] - 1] if len(set(u)) == 1 else 0
            if model.moment(u) != want:
                bad.append(f"phi[Y_{word_key(u)}]")
    bad.extend(k for k, v in model.kernel_checks().items() if not v)
    bad.extend(f"pde residual {k}" for k, v in catalog.multinomial_pde_residual(model, 4).items() if v)
    record(acceptance_log, 4, "multinomial", bad, "moments |u| <= 5, kernel identities, PDE to degree 4", t0)


def test_criterion_5_traciality(acceptance_log):
    t0 = time.perf_counter()
    bad = []
    for d in (2, 3, 4):
        for c in (F(1), F(-1, 2)):
            rep = tracial_conditions(catalog.simple_quadratic(c, d=d), length=6)
            bad.extend(f"d={d} c={c}: {ch.name}" for ch in rep.failures())
    rep = tracial_conditions(catalog.exponentiated_semicircular([1, 1], [1, 2]), length=6)
    cyc = rep.checks[2]
    if cyc.passed or len(cyc.witness["u"].split(",")) > 4:
        bad.append("exponentiated semicircular: no short cyclic witness")
    w = cyc.witness or {}
    record(acceptance_log, 5, "traciality", bad,
           f"simple quadratic d=2,3,4 tracial; witness phi[{w.get('u')}]={w.get('phi_u')} "
           f"vs phi[{w.get('rotated')}]={w.get('phi_rotated')}", t0)


def test_criterion_6_boxplus(acceptance_log):
    t0 = time.perf_counter()
    bad = []
    for name, data in catalog.meixner_catalog() + random_data(5, SEED + 6):
        m = fock_moment_table(data, 5)
        for t in (F(1), F(3, 2), F(2), F(3)):
            if boxplus_fock_table(data, t, 5) != boxplus_power(m, t):
                bad.append(f"{name} t={t}")
    data = catalog.simple_quadratic(F(-1, 2), d=2)
    m6 = fock_moment_table(data, 6)
    verdicts = {t: check_positivity(boxplus_power(m6, t), 3) for t in (F(1, 4), F(49, 100), F(1, 2), F(51, 100), F(1))}
    if verdicts != {t: t >= F(1, 2) for t in verdicts}:
        bad.append(f"positivity verdicts {verdicts}")
    record(acceptance_log, 6, "free convolution semigroup", bad,
           "operator = cumulant scaling for t in {1, 3/2, 2, 3}; positivity flips at t = 1/2", t0)


def test_criterion_7_growth_bound(acceptance_log):
    t0 = time.perf_counter()
    bad, n = [], 0
    for name, data in catalog.meixner_catalog() + random_data(20):
        bound = 16 * growth_constant(data)
        for u, v in fock_moment_table(data, 6).values.items():
            if not u:
                continue
            n += 1
            if abs(v) >= bound ** len(u):
                bad.append(f"{name} u={word_key(u)}")
    record(acceptance_log, 7, "growth bound", bad, f"{n} nonzero moments below (16m)^|u|", t0)


def test_criterion_8_density(acceptance_log):
    t0 = time.perf_counter()
    bad, gated = [], []
    semi = catalog.density_moments(0.0, 0.0, 1.0)
    if abs(semi["mass"] - 1) > 1e-8 or abs(semi["m2"] - 1) > 1e-8:
        bad.append(f"semicircle mass {semi['mass']!r} m2 {semi['m2']!r}")
    for b, c in ((1, 0), (F(1, 2), 0), (1, F(1, 2)), (-1, F(1, 4)), (2, 0), (F(1, 2), F(-1, 2))):
        res = catalog.density_check(b, c, 1)
        if res["status"] in ("match", "mismatch"):
            gated.append(f"b={b},c={c}")
        if res["status"] == "mismatch":
            bad.append(f"b={b} c={c}: {res['operator']} vs quadrature")
    if not gated:
        bad.append("no instance passed the mass gate")
    record(acceptance_log, 8, "density quadrature", bad,
           f"semicircle mass and m2 within 1e-8; m3, m4 within 1e-6 for {', '.join(gated)}", t0)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
