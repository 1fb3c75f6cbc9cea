from voalog.affine import bracket_failures, build_affine_realization, sector_basis
from voalog.fock import FockElement


def test_undeformed_brackets_low_weight():
    real = build_affine_realization()
    for b in sector_basis(real.algebra.base, 1, [0]):
        w = FockElement.basis(b)
        for m in (-1, 0, 1):
            for n in (-1, 0, 1):
                assert bracket_failures(real, m, n, w) == []
