import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from qboson.hecke import TensorVector, eigenfunction_h
from qboson.process import (Configuration, ConfigurationError, EmptyClusterError, apply_generator,
                            as_configuration_function, color_counts, extract_component, hop_rate,
                            inversion_number, outgoing_moves, random_configuration,
                            words_with_counts)
from qboson.verify import check_boundary, check_generator, h_configuration_function
from strategies import params

q = F(1, 3)


def test_inversion_number_examples():
    assert inversion_number((1, 1, 1)) == 0
    assert inversion_number((2, 1)) == 1
    assert inversion_number((1, 1, 3, 5, 2, 4)) == 3


def test_hop_rate_examples():
    assert hop_rate((1, 2, 1, 1), 2, q) == (1 + q ** 2) * q ** 4
    assert hop_rate((3, 1, 0, 1), 4, q) == 1
    assert hop_rate((1, 0, 0, 1), 1, q) == q ** 2
    with pytest.raises(EmptyClusterError):
        hop_rate((0, 1), 1, q)


def test_words_with_counts():
    assert words_with_counts((1, 1)) == [(1, 2), (2, 1)]
    assert len(words_with_counts((2, 1, 1))) == 12
    assert color_counts((3, 1, 3), 3) == (1, 0, 2)


def test_configuration_validation():
    Configuration((3, 3, 1), (1, 2, 2))
    with pytest.raises(ConfigurationError):
        Configuration((1, 3), (1, 1))
    with pytest.raises(ConfigurationError):
        Configuration((3, 3), (2, 1))
    c = Configuration.from_particles([(3, 2), (5, 1), (3, 1)])
    assert c == Configuration((5, 3, 3), (1, 1, 2))
    assert Configuration.from_json(c.to_json()) == c
    assert c.to_json() == {"x": [5, 3, 3], "nu": [1, 1, 2]}


def test_single_particle_move():
    c = Configuration((5,), (2,))
    assert outgoing_moves(c, 2, q) == [(Configuration((4,), (2,)), 1)]


def test_two_particle_cluster_move():
    c = Configuration((0, 0), (1, 1))
    assert outgoing_moves(c, 1, q) == [(Configuration((0, -1), (1, 1)), (1 - q ** 4) / (1 - q ** 2))]


def test_figure_state_transition():
    # site 1 carries colours (1, 2, 2, 3, 4) and a lone colour 1 sits at site 0
    c = Configuration.from_particles([(1, 1), (1, 2), (1, 2), (1, 3), (1, 4), (0, 1)])
    moves = dict(outgoing_moves(c, 4, q))
    target = Configuration.from_particles([(1, 1), (1, 2), (1, 3), (1, 4), (0, 1), (0, 2)])
    assert moves[target] == (1 + q ** 2) * q ** 4


@st.composite
def configurations(draw, counts=(2, 1, 1)):
    pairs = []
    for a, ka in enumerate(counts, 1):
        pairs += [(draw(st.integers(-3, 3)), a) for _ in range(ka)]
    return Configuration.from_particles(pairs)


@given(configurations())
def test_canonical_idempotent(c):
    assert c.canonical() == c
    assert c.canonical().canonical() == c.canonical()


@given(configurations(), st.fractions(min_value=F(1, 50), max_value=F(49, 50)))
def test_rates_positive_and_conserving(c, qq):
    moves = outgoing_moves(c, 3, qq)
    assert moves
    targets = [t for t, _ in moves]
    assert len(set(targets)) == len(targets)
    for t, rate in moves:
        assert rate > 0
        assert t.counts(3) == c.counts(3)


def test_generator_on_constant_and_one_particle():
    c = Configuration((2, 0), (1, 2))
    assert apply_generator(lambda _: F(7), c, 2, q) == 0
    z = F(3, 5)
    wave = lambda c: (z / (1 + z)) ** c.x[0]
    c1 = Configuration((4,), (1,))
    assert apply_generator(wave, c1, 1, q) == wave(c1) / z


def test_extract_component():
    assert extract_component(TensorVector.basis((1, 1, 1), 1), (1, 1, 1), q) == 1
    assert extract_component(q * TensorVector.basis((2, 1), 2), (2, 1), q) == 1
    assert extract_component(TensorVector.basis((2, 1), 2), (1, 2), q) == 0


@given(params(2), configurations((1, 1)), st.sampled_from([(1, 2), (2, 1)]))
def test_eigenfunction_two_particles(p, c, mu):
    gamma = h_configuration_function(mu, p.z, p.q, 2)
    lhs = apply_generator(gamma, c, 2, p.q)
    assert lhs == (1 / p.z[0] + 1 / p.z[1]) * gamma(c)


def test_eigenfunction_three_particles_sampled():
    rng = random.Random(5)
    for _ in range(4):
        from qboson.scalars import random_params
        p = random_params(rng, 3)
        c = random_configuration(rng, (1, 2))
        mu = rng.choice(words_with_counts((1, 2)))
        assert all(check_generator(mu, p.z, c, p.q, 2))


@given(params(3), st.sampled_from(words_with_counts((1, 1, 1))), st.integers(1, 3), st.integers(1, 3))
def test_boundary_property(p, mu, top, low):
    x = (max(top, low), max(top, low), min(top, low))
    assert all(check_boundary(mu, p.z, x, p.q, 3))


def test_as_configuration_function_matches_extract():
    z = (F(2), F(-3, 4))
    F_ = lambda x: eigenfunction_h((2, 1), z, x, q, 2)
    g = as_configuration_function(F_, q)
    c = Configuration((3, 1), (1, 2))
    assert g(c) == F_((3, 1))[(1, 2)]
