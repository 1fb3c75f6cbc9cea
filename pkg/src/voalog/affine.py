"""Free-field realization of affine sl2 at level -4/3 and the module R_{-1/3}.

The lattice ``Z gamma + Z delta`` is indefinite, so every weight space is
infinite-dimensional; components are bigraded by (conformal weight,
delta-charge) and "basis up to weight N" always means within a declared
charge window.
"""
from __future__ import annotations

from dataclasses import dataclass

from .deformation import DeformationVector, deformed_mode, deformed_virasoro_mode
from .fock import (
    FockBasisVector,
    FockElement,
    basis_up_to,
    element_weight,
    graded_basis,
)
from .lattice import LatticeConfig, Sector, affine
from .linalg import jordan_blocks
from .modes import ExtendedSector, conformal_vector, general_mode, virasoro_mode
from .rational import Q
from .screenings import screening_apply, screening_vector
from .structure import (
    Letter,
    SubmoduleSpan,
    generate_submodule,
    jordan_structure,
    quotient_matrix,
)

LEVEL = Q(-4, 3)
ZERO2 = (Q(0), Q(0))


def _pt(a, b):
    return (Q(a), Q(b))


@dataclass(frozen=True)
class AffineRealization:
    config: LatticeConfig
    omega: FockElement
    e: FockElement
    h: FockElement
    f: FockElement
    f_alt: FockElement
    algebra: ExtendedSector
    module: ExtendedSector
    dv: DeformationVector
    k: Q = LEVEL

    def current(self, name) -> FockElement:
        return {"e": self.e, "h": self.h, "f": self.f}[name]


def build_affine_realization() -> AffineRealization:
    c = affine()
    e = FockElement.basis(FockBasisVector((), _pt(3, -3)))
    h = FockElement.basis(FockBasisVector(((1, 1),), ZERO2), 4)
    f = FockElement({
        FockBasisVector(((0, 1), (0, 1)), _pt(-3, 3)): Q(-4),
        FockBasisVector(((0, 2),), _pt(-3, 3)): Q(2, 3),
    })
    f_alt = screening_apply(c, "Q", FockElement.basis(FockBasisVector((), _pt(3, 3)))) * Q(-2, 9)
    algebra = ExtendedSector(Sector(c, ZERO2), Sector(c, _pt(2, 0)), Sector(c, _pt(2, 0)), label="V")
    module = ExtendedSector(Sector(c, _pt(-3, 1)), Sector(c, _pt(-1, 1)), Sector(c, _pt(2, 0)), label="M")
    dv = DeformationVector(c, screening_vector(c, "Qtilde"), algebra)
    return AffineRealization(c, conformal_vector(c), e, h, f, f_alt, algebra, module, dv)


def affine_mode_apply(real: AffineRealization, name: str, n, w, deformed=False, ctx=None) -> FockElement:
    """``x(n) = x_n`` for the weight-one currents; ``deformed`` uses ``Delta(e^{2 gamma}, x)``."""
    a = real.current(name)
    if deformed:
        return deformed_mode(real.dv, a, n, w, ctx)
    return general_mode(real.config, a, n, w, ctx)


def deformed_f_display(real: AffineRealization, n, w, ctx=None) -> FockElement:
    """The displayed formula ``Y(f,x) + (4/3)x^{-1}Y(gamma(-1)e^{-gamma+3delta},x) + (1/3)x^{-2}Y(e^{-gamma+3delta},x)``."""
    c = real.config
    g1 = FockElement.basis(FockBasisVector(((0, 1),), _pt(-1, 3)))
    g0 = FockElement.basis(FockBasisVector((), _pt(-1, 3)))
    return (
        general_mode(c, real.f, n, w, ctx)
        + general_mode(c, g1, n - 1, w, ctx) * Q(4, 3)
        + general_mode(c, g0, n - 2, w, ctx) * Q(1, 3)
    )


def bracket_failures(real: AffineRealization, m: int, n: int, w, deformed=False, ctx=None) -> list:
    """Names of the sl2 relations that fail on ``w`` at modes ``(m, n)``."""
    x = lambda name, k, v: affine_mode_apply(real, name, k, v, deformed, ctx)
    k = real.k
    w = w if isinstance(w, FockElement) else FockElement.basis(w)
    fails = []
    central = w * (m * k) if m + n == 0 else FockElement()
    if x("e", m, x("f", n, w)) - x("f", n, x("e", m, w)) != x("h", m + n, w) + central:
        fails.append("[e,f]")
    if x("h", m, x("e", n, w)) - x("e", n, x("h", m, w)) != x("e", m + n, w) * 2:
        fails.append("[h,e]")
    if x("h", m, x("f", n, w)) - x("f", n, x("h", m, w)) != x("f", m + n, w) * -2:
        fails.append("[h,f]")
    hh = w * (2 * k * m) if m + n == 0 else FockElement()
    if x("h", m, x("h", n, w)) - x("h", n, x("h", m, w)) != hh:
        fails.append("[h,h]")
    if x("e", m, x("e", n, w)) - x("e", n, x("e", m, w)):
        fails.append("[e,e]")
    if x("f", m, x("f", n, w)) - x("f", n, x("f", m, w)):
        fails.append("[f,f]")
    return fails


def charge(elem: FockElement):
    bs = {b.point[1] for b in elem.terms}
    if len(bs) != 1:
        raise ValueError("element is not charge-homogeneous")
    return bs.pop()


def bigrading(real: AffineRealization):
    return lambda elem: (element_weight(real.config, elem), charge(elem))


def affine_basis(es: ExtendedSector, max_weight, charges) -> list:
    """Basis vectors of both summands with weight <= max_weight and delta-charge in ``charges``."""
    out = []
    for s in es.summands():
        for b in charges:
            out.extend(basis_up_to(s, max_weight, b))
    return out


def sector_basis(sec: Sector, max_weight, charges) -> list:
    return [b for ch in charges for b in basis_up_to(sec, max_weight, ch)]


def affine_alphabet(real: AffineRealization, deformed=True, ctx=None) -> list:
    return [
        Letter(name, Q(1), (lambda nm: lambda n, w: affine_mode_apply(real, nm, n, w, deformed, ctx))(name))
        for name in ("e", "h", "f")
    ]


def rminusthird_closure(real: AffineRealization, gen: FockElement, cutoff, min_weight, charge_window=3, margin=1):
    """Closure of ``gen`` under the deformed current modes within the (weight, charge) window."""
    acc = lambda key: abs(key[1]) <= charge_window and key[0] >= min_weight
    return generate_submodule(
        [gen], affine_alphabet(real, True, real.module), cutoff, bigrading(real), min_weight, margin, accept=acc
    )


def l0_tilde(real: AffineRealization, ctx=None):
    return lambda v: deformed_virasoro_mode(real.dv, 0, v, ctx)


def quotient_semisimple(real: AffineRealization, R: SubmoduleSpan, E1: SubmoduleSpan) -> dict:
    """For each (weight, charge) component of R: Jordan data of L~(0) on R / (R cap E1)."""
    out = {}
    L0 = l0_tilde(real, real.module)
    for key in R.keys():
        big = R.vectors(key)
        sub = [v for v in E1.vectors(key)]
        m, comp = quotient_matrix(L0, sub, big)
        out[key] = jordan_blocks(m) if comp else None
    return out


__all__ = [
    "AffineRealization",
    "LEVEL",
    "affine_alphabet",
    "affine_basis",
    "affine_mode_apply",
    "bracket_failures",
    "build_affine_realization",
    "deformed_f_display",
    "graded_basis",
    "jordan_structure",
    "l0_tilde",
    "quotient_semisimple",
    "rminusthird_closure",
    "sector_basis",
    "virasoro_mode",
]
