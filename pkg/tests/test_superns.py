import pytest

from voalog import sector
from voalog.fock import basis_up_to
from voalog.rational import Q
from voalog.superns import kernel_checks, ns_bracket_failures, ns_realization


@pytest.mark.parametrize("p, pp", [(3, 1), (5, 1), (5, 3)])
def test_ns_relations(p, pp):
    R = ns_realization(p, pp)
    assert R.central_charge == Q(3, 2) * (1 - Q(2 * (p - pp) ** 2, p * pp))
    for b in basis_up_to(sector(R.config, 0), 2):
        assert ns_bracket_failures(R, b) == []


@pytest.mark.parametrize("p, pp", [(3, 1), (5, 1), (5, 3)])
def test_kernel_conditions(p, pp):
    R = ns_realization(p, pp)
    assert all(not v for v in kernel_checks(R).values())
