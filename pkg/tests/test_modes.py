import random

import pytest

from voalog import NonIntegralExponent, basis_vector, sector, super_ns, triplet, vacuum
from voalog.fock import FockElement, basis_up_to, weight_of
from voalog.lattice import affine
from voalog.modes import (
    conformal_vector,
    engine,
    exp_mode,
    fermion_mode,
    general_mode,
    heisenberg_mode,
    virasoro_mode,
)
from voalog.rational import Q


def _states(sec, maxw, charge=None):
    return [FockElement.basis(b) for b in basis_up_to(sec, maxw, charge)]


def test_heisenberg_commutator():
    cfg = triplet(2)
    norm = cfg.norm((1,))
    for w in _states(sector(cfg, Q(1, 2)), 3):
        for m in range(-3, 4):
            for n in range(-3, 4):
                lhs = heisenberg_mode(cfg, 0, m, heisenberg_mode(cfg, 0, n, w)) - heisenberg_mode(
                    cfg, 0, n, heisenberg_mode(cfg, 0, m, w)
                )
                assert lhs == (w * (m * norm) if m + n == 0 else FockElement())


def test_fermion_anticommutator():
    cfg = super_ns(3, 1)
    for w in _states(sector(cfg, 0), 2):
        for r in (Q(-3, 2), Q(-1, 2), Q(1, 2), Q(3, 2)):
            for s in (Q(-3, 2), Q(-1, 2), Q(1, 2), Q(3, 2)):
                lhs = fermion_mode(cfg, r, fermion_mode(cfg, s, w)) + fermion_mode(cfg, s, fermion_mode(cfg, r, w))
                assert lhs == (w if r + s == 0 else FockElement())


def test_fermion_mode_needs_half_integer():
    cfg = super_ns(3, 1)
    with pytest.raises(NonIntegralExponent):
        fermion_mode(cfg, 1, vacuum(cfg))


def test_fermion_examples():
    cfg = super_ns(3, 1)
    vac = vacuum(cfg)
    phi = fermion_mode(cfg, Q(-1, 2), vac)
    assert phi == FockElement.basis(basis_vector((0,), fermions=(Q(1, 2),)))
    # phi(-1/2)^2 = 0 and phi(1/2) phi(-1/2) 1 = 1
    assert not fermion_mode(cfg, Q(-1, 2), phi)
    assert fermion_mode(cfg, Q(1, 2), phi) == vac
    # phi(-3/2) phi(-1/2) 1 = -phi(-1/2) phi(-3/2) 1
    a = fermion_mode(cfg, Q(-3, 2), phi)
    b = fermion_mode(cfg, Q(-1, 2), fermion_mode(cfg, Q(-3, 2), vac))
    assert a == -b


def test_exponential_creation():
    cfg = triplet(2)
    vac = vacuum(cfg)
    for mu in ((Q(1, 2),), (Q(-1),), (Q(2),)):
        assert exp_mode(cfg, mu, -1, vac) == FockElement.basis(basis_vector(mu))


@pytest.mark.parametrize("cfg, rep, charge", [(triplet(2), (Q(-1, 2),), None), (triplet(3, 2), (Q(1, 6),), None),
                                             (super_ns(3, 1), (0,), None), (affine(), (-3, 1), 1)])
def test_l0_is_weight(cfg, rep, charge):
    sec = sector(cfg, *rep)
    for b in basis_up_to(sec, 3, charge):
        w = FockElement.basis(b)
        assert virasoro_mode(cfg, 0, w) == w * weight_of(cfg, b)


def test_translation_covariance():
    # (L(-1)u)_n = -n u_{n-1}
    cfg = triplet(2)
    us = [FockElement.basis(basis_vector((Q(-1, 2),))), FockElement.basis(basis_vector((Q(1),), [(0, 1)]))]
    for u in us:
        lu = virasoro_mode(cfg, -1, u)
        for w in _states(sector(cfg, 0), 2):
            for n in range(-2, 3):
                assert general_mode(cfg, lu, n, w) == general_mode(cfg, u, n - 1, w) * (-n)


def test_conformal_vector_weight_two():
    for cfg in (triplet(2), super_ns(3, 1), affine()):
        omega = conformal_vector(cfg)
        assert virasoro_mode(cfg, 0, omega) == omega * 2


def test_normal_ordered_path_matches_peeling():
    random.seed(7)
    cases = [
        (triplet(2), [((Q(0),), None), ((Q(1, 2),), None), ((Q(-1),), None)]),
        (affine(), [((Q(0), Q(0)), 0), ((Q(-3), Q(1)), 1)]),
    ]
    total = 0
    for cfg, secs in cases:
        eng = engine(cfg)
        vecs = [b for rep, ch in secs for b in basis_up_to(sector(cfg, *rep), 3, ch)]
        us = [v for v in vecs if v.bosons]
        for _ in range(60):
            u, w, n = random.choice(us), random.choice(vecs), random.randint(-3, 3)
            try:
                a = eng._peel_boson(u, n, w)
            except NonIntegralExponent:
                continue
            assert {k: v for k, v in a.items() if v} == eng._normal_ordered(u, n, w)
            total += 1
    assert total > 50
