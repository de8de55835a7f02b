import random
from fractions import Fraction as F

import pytest
import sympy

from qboson.fock import SparseKet, basis_probes
from qboson.integrability import (PeriodicSector, all_Hn, apply_Rcheck, check_commutativity,
                                  check_H0, check_H1_vs_rates, check_interpolation,
                                  check_transfer_commute, check_YBE, check_YBE_monodromy,
                                  evaluate_expansion, extract_Hn, identity, rate_matrix,
                                  rcheck_matrix, transfer_apply, transfer_matrix, ybe_probes)
from qboson.scalars import random_params

q = F(1, 2)


def test_Rcheck_diagonal_and_exchange():
    z = F(5, 3)
    for a in range(3):
        assert apply_Rcheck(z, {(a, a): F(1)}, q, 2) == {(a, a): z - q * q}
    assert apply_Rcheck(z, {(0, 2): F(1)}, q, 2) == {(0, 2): (1 - q * q) * z, (2, 0): (z - 1) * q * q}
    assert apply_Rcheck(z, {(2, 1): F(1)}, q, 2) == {(2, 1): 1 - q * q, (1, 2): z - 1}
    # z = 1 removes the exchange terms
    assert apply_Rcheck(1, {(1, 2): F(1)}, q, 2) == {(1, 2): 1 - q * q}


@pytest.mark.parametrize("r", [1, 2, 3])
def test_Rcheck_invertible_at_random_points(r):
    rng = random.Random(r)
    for _ in range(3):
        p = random_params(rng, 1)
        z = p.z[0]
        if z in (1, p.q ** 2, p.q ** -2):
            continue
        mat = sympy.Matrix(rcheck_matrix(z, p.q, r))
        inv = mat.inv()
        assert inv * mat == sympy.eye((r + 1) ** 2)


@pytest.mark.parametrize("r", [1, 2, 3])
def test_YBE_single_site(r):
    rng = random.Random(20 + r)
    for _ in range(3):
        p = random_params(rng, 2)
        check = check_YBE(p.z[0], p.z[1], ybe_probes(r), p.q, r)
        assert check, check.failure


def test_YBE_rank_one_vacuum_and_low_occupations():
    probes = [SparseKet.basis(1, {0: [m]}) for m in range(3)]
    check = check_YBE(F(3), F(-2, 5), probes, q, 1)
    assert check and check.checked >= 16


@pytest.mark.parametrize("r", [1, 2])
def test_YBE_two_sites(r):
    p = random_params(random.Random(30 + r), 2)
    probes = basis_probes([1, 2], r, 2)
    assert check_YBE_monodromy(p.z[0], p.z[1], 1, 2, probes, p.q, r)


@pytest.mark.parametrize("M,r", [(1, 1), (2, 1), (3, 2), (4, 3)])
def test_transfer_on_vacuum(M, r):
    z = F(2, 7)
    sector = PeriodicSector.build(M, (0,) * r)
    assert sector.dim == 1
    assert transfer_apply(z, sector, [1], q) == [(1 + z) ** M + r * z ** M]
    Hs = all_Hn(sector, q)
    # at M = 1 the z coefficient also picks up the r diagonal entries
    assert Hs[1] == [[M + (r if M == 1 else 0)]]
    assert Hs[M] == [[1 + r]]


def test_transfer_single_site_single_particle():
    z = F(3, 4)
    sector = PeriodicSector.build(1, (1,))
    assert transfer_apply(z, sector, [1], q) == [(1 + z * q * q) + z]


def test_sector_dimensions():
    assert PeriodicSector.build(3, (2,)).dim == 6
    assert PeriodicSector.build(3, (1, 1)).dim == 9
    assert PeriodicSector.build(4, (2,)).dim == 10
    assert PeriodicSector.build(3, (2, 1)).dim == 18


def test_H1_two_sites_one_particle():
    sector = PeriodicSector.build(2, (1,))
    H1 = extract_Hn(sector, 1, q)
    Q = rate_matrix(sector, q)
    assert Q == [[-1, 1], [1, -1]]
    assert [[H1[i][j] - 2 * (i == j) for j in range(2)] for i in range(2)] == \
        [[(1 - q * q) * Q[i][j] for j in range(2)] for i in range(2)]


@pytest.mark.parametrize("M,counts", [(3, (2,)), (3, (1, 1)), (4, (2,)), (2, (1, 1)), (3, (1, 0)), (2, (0,))])
def test_charges(M, counts):
    sector = PeriodicSector.build(M, counts)
    Hs = all_Hn(sector, q)
    assert check_H0(sector, q, Hs)
    assert check_H1_vs_rates(sector, q, Hs)
    for m in range(M + 1):
        for n in range(m + 1, M + 1):
            assert check_commutativity(sector, m, n, q, Hs)
    assert check_interpolation(sector, F(-7, 3), q, Hs)
    assert evaluate_expansion(Hs, 0) == identity(sector.dim)


def test_transfer_commutes_at_random_pairs():
    sector = PeriodicSector.build(3, (1, 1))
    rng = random.Random(40)
    for _ in range(3):
        p = random_params(rng, 2)
        assert check_transfer_commute(sector, p.z[0], p.z[1], p.q)


def test_transfer_conserves_colours():
    # SectorLeakError would surface from to_vector
    sector = PeriodicSector.build(3, (2, 1))
    mat = transfer_matrix(F(5, 2), sector, q)
    assert len(mat) == sector.dim


def test_H1_matches_rates_at_other_q():
    sector = PeriodicSector.build(3, (1, 1))
    assert check_H1_vs_rates(sector, F(2, 3))
