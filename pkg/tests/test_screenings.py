from voalog import basis_vector, sector, triplet, vacuum
from voalog.fock import FockElement, basis_up_to
from voalog.lattice import affine
from voalog.modes import virasoro_mode
from voalog.rational import Q
from voalog.screenings import (
    common_screening_sectors,
    g_operator_apply,
    screening_apply,
    triplet_generators,
)


def test_screenings_kill_vacuum():
    for cfg in (triplet(2), triplet(3, 2), affine()):
        for lab in ("Q", "Qtilde"):
            assert not screening_apply(cfg, lab, vacuum(cfg))


def test_screenings_commute_with_virasoro():
    cfg = triplet(3)
    for lab in ("Q", "Qtilde"):
        for b in basis_up_to(sector(cfg, 0), 3):
            w = FockElement.basis(b)
            for m in range(-2, 3):
                S = lambda v: screening_apply(cfg, lab, v)
                assert S(virasoro_mode(cfg, m, w)) == virasoro_mode(cfg, m, S(w))


def test_generators_in_kernel():
    cfg = triplet(2)
    g = triplet_generators(cfg)
    for name, a in g.as_dict().items():
        assert not screening_apply(cfg, "Qtilde", a), name
    assert not screening_apply(cfg, "Q", g.E)
    assert g.H and g.E
    assert g.nu == 2


def test_common_sectors_rank_one():
    cfg = triplet(2)
    reps = [s.rep for s in common_screening_sectors(cfg)]
    assert (Q(0),) in reps and (Q(1, 2),) in reps


def test_g_squared_on_top():
    cfg = triplet(2)
    w = FockElement.basis(basis_vector((Q(-1, 2),)))
    assert g_operator_apply(cfg, g_operator_apply(cfg, w)) == FockElement.basis(basis_vector((Q(1),)), -8)
