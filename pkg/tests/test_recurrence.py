import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from qboson.fock import psi, recurrence_check_psi
from qboson.hecke import TensorVector, eigenfunction_h
from qboson.recurrence import (chain_terms, color_blocks, recurrence_check, recurrence_check_h,
                               reduced_spectral, sorted_word)
from qboson.scalars import f_factor, g_factor, random_params
from strategies import descending, params


def w(z):
    return z / (1 + z)


def test_sorted_word_and_blocks():
    assert sorted_word((2, 1)) == (2, 1, 1)
    assert color_blocks((2, 1)) == {2: [1], 1: [2, 3]}
    assert color_blocks((1, 0, 2)) == {3: [1, 2], 2: [], 1: [3]}


def test_reduced_spectral():
    z = [F(n) for n in (10, 20, 30, 40)]
    assert reduced_spectral(z, [2]) == [10, 30, 40]
    # l(0) = 3, l(1) = 1: slot 1 receives z_3 and z_3 is dropped
    assert reduced_spectral(z, [3, 1]) == [30, 20, 40]
    assert reduced_spectral(z, [4, 2, 1]) == [20, 40, 30]


def rank_one_rhs(F_, z, x, q):
    k = len(z)
    total = TensorVector.zero(k, 1)
    for l in range(1, k + 1):
        c = w(z[l - 1])
        for i in range(1, k + 1):
            if i != l:
                c *= f_factor(z[i - 1], z[l - 1], q)
        zr = z[:l - 1] + z[l:]
        total = total + c * F_((1,) * (k - 1), zr, x[:-1]).append_color(1)
    return total


def rank_two_rhs(F_, k1, k2, z, x, q):
    k = k1 + k2
    J2 = range(1, k2 + 1)
    J1 = range(k2 + 1, k + 1)
    mu1 = (2,) * k2 + (1,) * (k1 - 1)
    mu2 = (2,) * (k2 - 1) + (1,) * k1
    total = TensorVector.zero(k, 2)

    def drop(l):
        return z[:l - 1] + z[l:]

    for l in J1:
        c = w(z[l - 1])
        for i in range(1, k + 1):
            if i != l:
                c *= f_factor(z[i - 1], z[l - 1], q)
        total = total + c * F_(mu1, drop(l), x[:-1]).append_color(1)
    for l1 in J2:
        for l0 in J1:
            c = w(z[l1 - 1]) * g_factor(z[l1 - 1], z[l0 - 1], q)
            for i in J2:
                if i != l1:
                    c *= f_factor(z[i - 1], z[l1 - 1], q)
            for i in J1:
                if i != l0:
                    c *= f_factor(z[i - 1], z[l0 - 1], q)
            zr = list(drop(l0))
            zr[l1 - 1] = z[l0 - 1]
            total = total + c * F_(mu1, tuple(zr), x[:-1]).append_color(1)
    if k2:
        for l in J2:
            c = q ** k1 * w(z[l - 1])
            for i in J2:
                if i != l:
                    c *= f_factor(z[i - 1], z[l - 1], q)
            total = total + c * F_(mu2, drop(l), x[:-1]).append_color(2)
    return total


def families(q, r):
    return {
        "h": lambda mu, z, x: eigenfunction_h(mu, z, x, q, r),
        "psi": lambda mu, z, x: psi(mu, z, x, q, r),
    }


@pytest.mark.parametrize("k", [1, 2, 3])
@pytest.mark.parametrize("kind", ["h", "psi"])
def test_rank_one_display(k, kind):
    p = random_params(random.Random(k), k)
    x = tuple(range(k, 0, -1))
    F_ = families(p.q, 1)[kind]
    z = tuple(p.z)
    assert F_((1,) * k, z, x) == rank_one_rhs(F_, z, x, p.q)


@pytest.mark.parametrize("k1,k2", [(1, 1), (2, 1), (1, 2)])
@pytest.mark.parametrize("kind", ["h", "psi"])
def test_rank_two_display(k1, k2, kind):
    k = k1 + k2
    p = random_params(random.Random(10 * k1 + k2), k)
    x = (2,) * (k - 1) + (1,)
    F_ = families(p.q, 2)[kind]
    z = tuple(p.z)
    mu = (2,) * k2 + (1,) * k1
    assert F_(mu, z, x) == rank_two_rhs(F_, k1, k2, z, x, p.q)


def test_general_weights_match_the_rank_two_display():
    # the generic chain sum is an independent implementation of the same display
    p = random_params(random.Random(3), 3)
    for fam in (families(p.q, 2)["h"],):
        assert recurrence_check(fam, (2, 1), p.z, (2, 1, 1), p.q)
    terms = list(chain_terms((1, 1), 1, p.z[:2], p.q))
    assert len(terms) == 2


COUNTS = [(1,), (2,), (3,), (1, 1), (2, 1), (1, 2), (1, 1, 1), (2, 2), (1, 3), (0, 2), (2, 0)]


@pytest.mark.parametrize("counts", COUNTS)
def test_recurrence_h_and_psi(counts):
    k = sum(counts)
    p = random_params(random.Random(hash(counts) & 0xffff), k)
    x = tuple(max(1, k - i) for i in range(k))[:-1] + (1,)
    assert recurrence_check_h(counts, p.z, x, p.q)
    assert recurrence_check_psi(counts, p.z, x, p.q)


@settings(max_examples=10)
@given(st.sampled_from([(1, 1), (2, 1), (1, 2)]), st.data())
def test_recurrence_property(counts, data):
    k = sum(counts)
    p = data.draw(params(k))
    x = data.draw(descending(k, low=1, high=3, last_one=True))
    assert recurrence_check_h(counts, p.z, x, p.q)


def test_recurrence_rejects_bad_positions():
    p = random_params(random.Random(1), 2)
    with pytest.raises(ValueError):
        recurrence_check_h((1, 1), p.z, (3, 2), p.q)
