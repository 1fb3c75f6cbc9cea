"""Independent brute-force graded-dimension oracle.

Lattice points are found by scanning a box of integer coefficients over the
base lattice basis, and Fock dimensions come from expanding the generating
function ``prod_n (1 - q^n)^{-rank} * prod_r (1 + q^r)`` as a truncated power
series.  Nothing here reuses the basis enumeration of :mod:`voalog.fock`.
"""
from __future__ import annotations

from itertools import product

from .lattice import Sector, frac
from .rational import Q


def _series(rank: int, fermions: bool, top: Q) -> dict:
    """Coefficients (keyed by exponent in (1/2)Z) of the Fock character up to ``top``."""
    n2 = int(2 * top)  # work in units of 1/2
    coeffs = [0] * (n2 + 1)
    coeffs[0] = 1
    for _ in range(rank):
        for part in range(2, n2 + 1, 2):  # bosonic modes, weight part/2
            for i in range(part, n2 + 1):
                coeffs[i] += coeffs[i - part]
    if fermions:
        for part in range(1, n2 + 1, 2):  # fermionic modes, weight part/2
            for i in range(n2, part - 1, -1):
                coeffs[i] += coeffs[i - part]
    return {Q(i, 2): c for i, c in enumerate(coeffs) if c}


def oracle_dims(sec: Sector, max_weight, charge=None, box: int = 12) -> dict:
    """``weight -> dim`` for ``sec`` up to ``max_weight`` (fixed delta-charge in the affine case)."""
    cfg = sec.config
    max_weight = frac(max_weight)
    rep = tuple(frac(x) for x in sec.rep)
    basis = cfg.base_basis
    out: dict = {}
    for coeffs in product(range(-box, box + 1), repeat=len(basis)):
        pt = tuple(rep[i] + sum(c * b[i] for c, b in zip(coeffs, basis)) for i in range(cfg.rank))
        if charge is not None and pt[1] != frac(charge):
            continue
        w0 = cfg.lattice_weight(pt)
        if w0 > max_weight:
            continue
        for extra, d in _series(cfg.rank, cfg.fermions, max_weight - w0).items():
            out[w0 + extra] = out.get(w0 + extra, 0) + d
    return dict(sorted(out.items()))


__all__ = ["oracle_dims"]
