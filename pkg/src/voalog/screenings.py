"""Screening operators, the triplet generators and the operator G."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidParameters, NonIntegralExponent
from .fock import FockBasisVector, FockElement, graded_basis
from .lattice import LatticeConfig, Sector
from .linalg import kernel
from .modes import ExtendedSector, exp_mode, general_mode
from .rational import Q

HALF = Q(1, 2)


def screening_vector(config: LatticeConfig, label: str) -> FockElement:
    """The weight-one vector whose zero mode is the screening ``label``.

    triplet/W(p,p'): Q <- e^{alpha/p'}, Qtilde <- e^{-alpha/p};
    super: the same exponentials tensored with phi(-1/2)1;
    affine: Q <- e^{-6 gamma}, Qtilde <- e^{2 gamma}.
    """
    if label not in ("Q", "Qtilde"):
        raise ValueError(f"unknown screening {label!r}")
    if config.case_tag == "affine":
        pt = (Q(-6), Q(0)) if label == "Q" else (Q(2), Q(0))
        return FockElement.basis(FockBasisVector((), pt))
    t = Q(1, config.pprime) if label == "Q" else Q(-1, config.p)
    fer = (HALF,) if config.case_tag == "super" else ()
    return FockElement.basis(FockBasisVector((), (t,), fer))


def screening_apply(config: LatticeConfig, label: str, w, ctx: ExtendedSector | None = None) -> FockElement:
    """Residue action ``Res_x Y(s, x) w``."""
    return general_mode(config, screening_vector(config, label), 0, w, ctx)


def screening_defined(config: LatticeConfig, label: str, sec: Sector) -> bool:
    """Whether the zero mode of the screening exists on the sector."""
    u = screening_vector(config, label)
    (b,) = u.terms
    return config.pairing(b.point, sec.rep).denominator == 1


def common_screening_sectors(config: LatticeConfig) -> list:
    """Cosets of the base lattice (within the registered group) on which both screenings are defined."""
    if config.case_tag == "affine":
        cands = [Sector(config, (a, b)) for a in range(-3, 3) for b in range(-3, 3)]
    else:
        den = 2 * config.p * config.pprime if config.case_tag == "triplet" else config.p * config.pprime
        cands = [Sector(config, (Q(k, den),)) for k in range(den)]
    out = []
    seen = set()
    for s in cands:
        if s.rep in seen:
            continue
        seen.add(s.rep)
        if screening_defined(config, "Q", s) and screening_defined(config, "Qtilde", s):
            out.append(s)
    return sorted(out, key=lambda s: s.rep)


def kernel_filter(config: LatticeConfig, label: str, sec: Sector, weight, charge=None, ctx=None) -> list:
    """Exact basis (list of FockElements) of ``Ker(s)`` on a weight component."""
    basis = graded_basis(sec, weight, charge)
    if not basis:
        return []
    images = [screening_apply(config, label, FockElement.basis(b), ctx) for b in basis]
    keys = sorted({k for img in images for k in img.terms})
    idx = {k: i for i, k in enumerate(keys)}
    rows = [[Q(0)] * len(basis) for _ in keys]
    for j, img in enumerate(images):
        for k, c in img.items():
            rows[idx[k]][j] = c
    ker = kernel(rows, len(basis))
    return [FockElement({basis[i]: c for i, c in enumerate(vec) if c}) for vec in ker]


@dataclass(frozen=True)
class GeneratorSet:
    omega: FockElement
    F: FockElement
    H: FockElement
    E: FockElement
    nu: Q

    def as_dict(self):
        return {"omega": self.omega, "F": self.F, "H": self.H, "E": self.E}


def triplet_generators(config: LatticeConfig) -> GeneratorSet:
    """``omega, F = e^{-alpha}, H = QF, E = Q^2F`` and ``nu_p = p/(p-1)``."""
    from .modes import conformal_vector

    if config.case_tag != "triplet" or config.pprime != 1:
        raise InvalidParameters("triplet generators need the (p, 1) case")
    F = FockElement.basis(FockBasisVector((), (Q(-1),)))
    H = screening_apply(config, "Q", F)
    E = screening_apply(config, "Q", H)
    return GeneratorSet(conformal_vector(config), F, H, E, Q(config.p, config.p - 1))


def g_operator_apply(config: LatticeConfig, w, ctx: ExtendedSector | None = None) -> FockElement:
    """``G = e^alpha_0 + nu_p e^{alpha - alpha/p}_{-1}`` (second term truncated on shifted states)."""
    p = config.p
    nu = Q(p, p - 1)
    one = Q(1)
    return exp_mode(config, (one,), 0, w, ctx) + exp_mode(config, (one - Q(1, p),), -1, w, ctx) * nu


def apply_screening_descriptor(config, desc, w, ctx=None):
    if desc.kind == "screening":
        return screening_apply(config, desc.get("label"), w, ctx)
    if desc.kind == "g_op":
        return g_operator_apply(config, w, ctx)
    raise ValueError(desc.kind)


__all__ = [
    "GeneratorSet",
    "NonIntegralExponent",
    "common_screening_sectors",
    "g_operator_apply",
    "kernel_filter",
    "screening_apply",
    "screening_defined",
    "screening_vector",
    "triplet_generators",
]
