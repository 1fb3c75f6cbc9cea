import pytest

from voalog import NotInKernel, NotNilpotent, basis_vector, triplet
from voalog.deformation import (
    DeformationVector,
    LogSeries,
    delta_log_apply,
    delta_plain_apply,
)
from voalog.fock import FockElement
from voalog.modes import triplet_extended
from voalog.rational import Q


def _dv(p=2):
    cfg = triplet(p)
    v = FockElement.basis(basis_vector((Q(-1, p),)))
    return cfg, DeformationVector(cfg, v, triplet_extended(cfg, 0))


def test_logseries_derivative():
    e = FockElement.basis(basis_vector((0,)))
    s = LogSeries({(2, 1): e})  # x^2 log x
    d = s.derivative()  # 2x log x + x
    assert d.terms == {(Q(1), 1): e * 2, (Q(1), 0): e}


def test_deformation_vector_valid():
    cfg, dv = _dv()
    states = [FockElement.basis(basis_vector((Q(1, 2),))), FockElement.basis(basis_vector((0,)))]
    assert dv.validate(states, ctx=triplet_extended(cfg, 1)) == []


def test_delta_log_nilpotent_degree_one():
    cfg, dv = _dv()
    w = FockElement.basis(basis_vector((Q(1, 2),)))
    s = delta_log_apply(dv, w, 3)
    assert s.max_log_power() == 1
    assert s.terms[(Q(0), 1)] == FockElement.basis(basis_vector((Q(0),)))


def test_delta_plain_matches_log_on_kernel():
    cfg, dv = _dv()
    w = FockElement.basis(basis_vector((Q(-1),)))
    assert delta_plain_apply(dv, w, 4) == delta_log_apply(dv, w, 4)


def test_not_in_kernel():
    cfg, dv = _dv()
    with pytest.raises(NotInKernel):
        delta_plain_apply(dv, FockElement.basis(basis_vector((Q(1, 2),))), 2)


def test_not_nilpotent_bound():
    cfg, dv = _dv()
    with pytest.raises(NotNilpotent):
        delta_log_apply(dv, FockElement.basis(basis_vector((Q(1, 2),))), 2, bound=0)
