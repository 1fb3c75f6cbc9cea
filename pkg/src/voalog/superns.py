"""The untwisted (Neveu-Schwarz) sector of the N=1 super triplet construction.

The odd generator is kept in the rescaled form
``tau' = sqrt(pp') tau = alpha(-1) phi(-1/2) + (p - p') phi(-3/2)`` so that all
coefficients stay rational; bracket constants are multiplied by ``pp'``
accordingly: ``{G'(r), G'(s)} = pp' (2 L(r+s) + (c/3)(r^2 - 1/4) delta_{r+s,0})``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .deformation import DeformationVector, deformed_virasoro_mode
from .fock import (
    FockBasisVector,
    FockElement,
    basis_up_to,
    component_weights,
    graded_basis,
)
from .lattice import LatticeConfig, Sector, super_ns
from .modes import (
    ExtendedSector,
    conformal_vector,
    general_mode,
    triplet_extended,
    virasoro_mode,
)
from .rational import Q
from .screenings import screening_apply, screening_vector
from .structure import jordan_structure

HALF = Q(1, 2)


@dataclass(frozen=True)
class NSRealization:
    config: LatticeConfig
    tau: FockElement  # the rescaled generator tau'
    omega: FockElement
    scale: Q  # pp' = (tau'/tau)^2

    @property
    def central_charge(self) -> Q:
        return self.config.central_charge


def ns_realization(p: int, pprime: int) -> NSRealization:
    c = super_ns(p, pprime)
    zero = (Q(0),)
    tau = FockElement({
        FockBasisVector(((0, 1),), zero, (HALF,)): Q(1),
        FockBasisVector((), zero, (Q(3, 2),)): Q(p - pprime),
    })
    return NSRealization(c, tau, conformal_vector(c), Q(p * pprime))


def g_mode(real: NSRealization, r, w, ctx: ExtendedSector | None = None) -> FockElement:
    """``G'(r) = tau'_{r + 1/2}``."""
    return general_mode(real.config, real.tau, Q(r) + HALF, w, ctx)


def ns_bracket_failures(real: NSRealization, w, rs=None, ms=None) -> list:
    """Failed NS relations on ``w`` as ``(kind, a, b)`` triples."""
    rs = rs if rs is not None else [Q(-3, 2), Q(-1, 2), HALF, Q(3, 2)]
    ms = ms if ms is not None else [-2, -1, 0, 1, 2]
    cfg = real.config
    c = real.central_charge
    w = w if isinstance(w, FockElement) else FockElement.basis(w)
    G = lambda r, v: g_mode(real, r, v)
    L = lambda m, v: virasoro_mode(cfg, m, v)
    fails = []
    for r in rs:
        for s in rs:
            lhs = G(r, G(s, w)) + G(s, G(r, w))
            rhs = L(r + s, w) * 2 if (r + s).denominator == 1 else FockElement()
            if r + s == 0:
                rhs = rhs + w * (c / 3 * (r * r - Q(1, 4)))
            if lhs != rhs * real.scale:
                fails.append(("{G,G}", str(r), str(s)))
    for m in ms:
        for r in rs:
            lhs = L(m, G(r, w)) - G(r, L(m, w))
            if lhs != G(m + r, w) * (Q(m, 2) - r):
                fails.append(("[L,G]", str(m), str(r)))
    return fails


def kernel_checks(real: NSRealization) -> dict:
    """``Q tau, Qtilde tau, Q omega, Qtilde omega`` (all must vanish)."""
    cfg = real.config
    out = {}
    for lab in ("Q", "Qtilde"):
        for name, vec in (("tau", real.tau), ("omega", real.omega)):
            out[f"{lab} {name}"] = screening_apply(cfg, lab, vec)
    return out


def super_extended(real: NSRealization, i: int = 0) -> ExtendedSector:
    return triplet_extended(real.config, i, label=f"SV_{i}")


def super_deformation_vector(real: NSRealization, es: ExtendedSector) -> DeformationVector:
    """``v = e^{-alpha/p} (x) phi(-1/2)``, the vector behind ``Qtilde``."""
    algebra = ExtendedSector(Sector(real.config, (Q(0),)), es.algebra_shift, es.algebra_shift, label="SV")
    return DeformationVector(real.config, screening_vector(real.config, "Qtilde"), algebra)


def super_jordan_search(real: NSRealization, cutoff, i: int = 0) -> list:
    """Jordan reports of ``L~(0)`` on each weight component of the extended sector up to ``cutoff``."""
    es = super_extended(real, i)
    dv = super_deformation_vector(real, es)
    L0 = lambda v: deformed_virasoro_mode(dv, 0, v, es)
    weights = sorted({w for s in es.summands() for w in component_weights(s, cutoff)})
    out = []
    for wt in weights:
        vecs = [FockElement.basis(b) for s in es.summands() for b in graded_basis(s, wt)]
        if vecs:
            out.append(jordan_structure(L0, vecs, wt))
    return out


__all__ = [
    "NSRealization",
    "basis_up_to",
    "g_mode",
    "kernel_checks",
    "ns_bracket_failures",
    "ns_realization",
    "super_deformation_vector",
    "super_extended",
    "super_jordan_search",
]
