import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from voalog import InvalidParameters, UnregisteredVector, sector, super_ns, triplet
from voalog.lattice import affine
from voalog.rational import Q

ints = st.integers(min_value=-6, max_value=6)


@pytest.mark.parametrize(
    "make, args",
    [(triplet, (1,)), (triplet, (2, 2)), (triplet, (0, 1)), (super_ns, (3, 2)), (super_ns, (2, 1)), (super_ns, (1, 1))],
)
def test_invalid_parameters(make, args):
    with pytest.raises(InvalidParameters):
        make(*args)


@pytest.mark.parametrize(
    "cfg, c",
    [(triplet(2), Q(-2)), (triplet(3), Q(-7)), (triplet(3, 2), Q(0)), (super_ns(3, 1), Q(-5, 2)), (affine(), Q(-6))],
)
def test_central_charges(cfg, c):
    assert cfg.central_charge == c


def test_super_cases_accepted():
    assert super_ns(5, 1).central_charge == Q(3, 2) * (1 - Q(2 * 16, 5))
    assert super_ns(5, 3).central_charge == Q(3, 2) * (1 - Q(2 * 4, 15))


def test_lattice_weights():
    t2 = triplet(2)
    # e^{-alpha/2} sits at the top weight (3p - 2)/4 = 1 for p = 2
    assert t2.lattice_weight((Q(-1, 2),)) == 1
    assert t2.lattice_weight((Q(-1),)) == 3  # F = e^{-alpha} has weight 2p - 1
    assert t2.lattice_weight((Q(1, 2),)) == 0
    a = affine()
    assert a.lattice_weight((Q(-3), Q(1))) == Q(-1, 3)


def test_unregistered_vectors_rejected():
    with pytest.raises(UnregisteredVector):
        triplet(2).cocycle_sign((Q(1, 8),), (Q(0),))
    with pytest.raises(UnregisteredVector):
        affine().cocycle_sign((Q(1, 2), Q(0)), (Q(0), Q(0)))


def test_sector_coset_equality():
    t = triplet(2)
    assert sector(t, Q(1, 2)) == sector(t, Q(-1, 2))
    assert sector(t, Q(1, 4)) != sector(t, Q(-1, 4))
    assert sector(t, Q(1, 2)).contains((Q(5, 2),))


@settings(max_examples=60, deadline=None)
@given(ints, ints, ints, ints, ints, ints)
def test_affine_pairing_bilinear_symmetric(a, b, c, d, e, f):
    cfg = affine()
    x, y, z = (a, b), (c, d), (e, f)
    assert cfg.pairing(x, y) == cfg.pairing(y, x)
    xz = (a + e, b + f)
    assert cfg.pairing(xz, y) == cfg.pairing(x, y) + cfg.pairing(z, y)


def _d(m, n):
    # m b1 + n b2 with b1 = 3gamma + 3delta, b2 = 3gamma - 3delta
    return (Q(3 * (m + n)), Q(3 * (m - n)))


@settings(max_examples=80, deadline=None)
@given(ints, ints, ints, ints, ints, ints)
def test_affine_cocycle_on_base_lattice(m1, n1, m2, n2, m3, n3):
    cfg = affine()
    x, y, z = _d(m1, n1), _d(m2, n2), _d(m3, n3)
    eps = cfg.cocycle_sign
    # commutator of the cocycle: eps(x,y) eps(y,x) = (-1)^{<x,y>}
    assert eps(x, y) * eps(y, x) == (-1) ** int(cfg.pairing(x, y))
    # bimultiplicative in both arguments
    xz = tuple(a + b for a, b in zip(x, z))
    assert eps(xz, y) == eps(x, y) * eps(z, y)
    assert eps(y, xz) == eps(y, x) * eps(y, z)


def test_rank_one_cocycle_trivial():
    cfg = triplet(3)
    assert cfg.cocycle_sign((Q(1, 3),), (Q(-1),)) == 1
