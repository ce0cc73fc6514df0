import itertools
import json
from fractions import Fraction as F

import pytest
from mpmath import mp, mpf

from sixvertex import lattice
from sixvertex.lattice import (
    Config,
    ConventionError,
    asm_from_config,
    brute_force_partition,
    check_conservation,
    config_weight,
    enumerate_dwbc,
    gibbs_probability,
    ground_state,
    height_function,
    is_asm,
    validate,
    vertex_counts,
)
from sixvertex.precision import DomainError

# exact REF weights: a = sinh(ln2/2), b = sinh(3 ln2/2) are irrational, but a^2,
# b^2 and ab are rational, which is all n = 2 needs.
A2, B2, C = F(1, 8), F(49, 32), F(3, 4)


def ref_abc():
    return mp.sinh(mp.ln2 / 2), mp.sinh(3 * mp.ln2 / 2), mpf(3) / 4


@pytest.mark.parametrize("n,count", [(1, 1), (2, 2), (3, 7), (4, 42), (5, 429)])
def test_enumeration_counts(n, count):
    assert sum(1 for _ in enumerate_dwbc(n)) == count


def test_enumeration_size_limits():
    with pytest.raises(DomainError):
        list(enumerate_dwbc(0))
    with pytest.raises(DomainError):
        list(enumerate_dwbc(7))


def test_single_vertex():
    (c,) = enumerate_dwbc(1)
    assert vertex_counts(c).as_tuple() == (0, 0, 0, 0, 1, 0)
    assert asm_from_config(c) == [[1]]
    assert check_conservation(c).ok


def test_enumeration_is_deterministic_and_distinct():
    first = [c.to_json() for c in enumerate_dwbc(4)]
    assert first == [c.to_json() for c in enumerate_dwbc(4)]
    assert len({json.dumps(c) for c in first}) == 42


def test_ground_state_n2():
    gs = ground_state(2)
    N = vertex_counts(gs)
    assert (N[3], N[4], N[5]) == (1, 1, 2)
    assert N[1] == N[2] == N[6] == 0
    assert asm_from_config(gs) == [[1, 0], [0, 1]]
    assert gs in list(enumerate_dwbc(2))


def test_ground_state_n1_is_unique_config():
    assert ground_state(1) == next(enumerate_dwbc(1))


def test_weights_n2_exact():
    # with a^2, b^2 rational, weights of the two n=2 configs are exact
    gs, other = ground_state(2), next(c for c in enumerate_dwbc(2) if c != ground_state(2))
    N = vertex_counts(other)
    assert (N[1], N[2], N[5]) == (1, 1, 2)
    a, b, c = ref_abc()
    assert abs(config_weight(gs, a, b, c) - mpf(441) / 512) < mpf(10) ** -70
    assert abs(config_weight(other, a, b, c) - mpf(36) / 512) < mpf(10) ** -70
    assert B2 * C**2 == F(441, 512) and A2 * C**2 == F(36, 512)


def test_config_weight_single():
    (c,) = enumerate_dwbc(1)
    assert config_weight(c, *ref_abc()) == mpf(3) / 4


def test_brute_force_examples():
    a, b, c = ref_abc()
    assert brute_force_partition(1, a, b, c) == mpf(3) / 4
    assert abs(brute_force_partition(2, a, b, c) - mpf(477) / 512) < mpf(10) ** -70
    assert brute_force_partition(3, 1, 1, 1) == 7


def test_brute_force_domain():
    with pytest.raises(DomainError):
        brute_force_partition(2, 1, 0, 1)


def test_gibbs():
    a, b, c = ref_abc()
    (one,) = enumerate_dwbc(1)
    assert gibbs_probability(one, a, b, c) == 1
    assert abs(gibbs_probability(ground_state(2), a, b, c) - mpf(441) / 477) < mpf(10) ** -70
    z = brute_force_partition(3, a, b, c)
    total = mp.fsum(gibbs_probability(x, a, b, c, z) for x in enumerate_dwbc(3))
    assert abs(total - 1) < mpf(10) ** -50


def test_scaling_law():
    n = 3
    a, b, c = mpf(2), mpf(5), mpf(3)
    z = brute_force_partition(n, a, b, c)
    zs = brute_force_partition(n, a / c, b / c, mpf(1))
    assert abs(z - c ** (n * n) * zs) < mpf(10) ** -60 * z
    for conf in enumerate_dwbc(n):
        p1 = gibbs_probability(conf, a, b, c, z)
        p2 = gibbs_probability(conf, a / c, b / c, 1, zs)
        assert abs(p1 - p2) < mpf(10) ** -60


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_conservation_all_configs(n):
    for conf in enumerate_dwbc(n):
        rep = check_conservation(conf)
        assert rep.ok, rep.failures
        N = vertex_counts(conf)
        assert N[5] - N[6] == n


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_height_function(n):
    boundaries = set()
    for conf in enumerate_dwbc(n):
        H = height_function(conf)
        for p in range(n + 1):
            for k in range(n):
                assert abs(H[p][k + 1] - H[p][k]) == 1
        for p in range(n):
            for k in range(n + 1):
                assert abs(H[p + 1][k] - H[p][k]) == 1
        border = tuple(H[0]) + tuple(H[n]) + tuple(r[0] for r in H) + tuple(r[n] for r in H)
        boundaries.add(border)
        assert max(border) - min(border) == n
    assert len(boundaries) == 1


def _all_asms(n):
    out = set()
    for rows in itertools.product(itertools.product((-1, 0, 1), repeat=n), repeat=n):
        m = [list(r) for r in rows]
        if is_asm(m):
            out.add(rows)
    return out


def test_asm_bijection_n3():
    images = {tuple(tuple(r) for r in asm_from_config(c)) for c in enumerate_dwbc(3)}
    assert images == _all_asms(3)
    assert len(images) == 7


@pytest.mark.parametrize("n", [4, 5])
def test_asm_images_distinct(n):
    images = [tuple(map(tuple, asm_from_config(c))) for c in enumerate_dwbc(n)]
    assert len(set(images)) == len(images)
    assert all(is_asm([list(r) for r in m]) for m in images)


def test_is_asm_rejects():
    assert not is_asm([[1, 1], [0, 0]])
    assert not is_asm([[0, 1, 0], [1, 1, -1], [0, -1, 2]])
    assert not is_asm([[1, 0, 0], [0, 0, 1], [0, 0, 0]])
    assert is_asm([[0, 1, 0], [1, -1, 1], [0, 1, 0]])


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_ground_state_weight(n):
    a, b, c = ref_abc()
    w = config_weight(ground_state(n), a, b, c)
    assert abs(w - b ** (n * n) * (c / b) ** n) < mpf(10) ** -60 * w


def test_json_round_trip():
    for conf in enumerate_dwbc(3):
        text = json.dumps(conf.to_json())
        assert Config.from_json(text) == conf


def test_validate_rejects_bad_boundary():
    gs = ground_state(2).to_json()
    gs["h_edges"][0][0] = True
    with pytest.raises(ConventionError):
        Config.from_json(gs)


def test_validate_rejects_ice_violation():
    data = ground_state(3).to_json()
    data["v_edges"][1][1] = not data["v_edges"][1][1]
    with pytest.raises(ConventionError):
        Config.from_json(data)


def test_validate_rejects_bad_shape():
    with pytest.raises(ConventionError):
        validate(Config(2, ((False, False),), ((False, False, True),) * 2))


def test_max_size_constant():
    assert lattice.MAX_ENUMERATION_SIZE == 6
