"""Demo 2: exact structure constants on e^{-alpha/2}.

The deformed zero mode of H = Q e^{-alpha} acts on e^{-alpha/2} by a scalar,
and the deformed E and the operator G = e^alpha_0 + nu_p e^{alpha-alpha/p}_{-1}
map it to single exponentials.  All numbers are exact rationals.

Run:  python demos/02_triplet_constants.py
"""
from voalog import triplet
from voalog.deformation import DeformationVector, deformed_mode
from voalog.fock import exp_state
from voalog.lattice import fmt_q
from voalog.modes import triplet_extended
from voalog.rational import Q
from voalog.screenings import g_operator_apply, screening_vector, triplet_generators

for p in (2, 3):
    cfg = triplet(p)
    A, M = triplet_extended(cfg, 0), triplet_extended(cfg, 1)
    dv = DeformationVector(cfg, screening_vector(cfg, "Qtilde"), A)
    g = triplet_generators(cfg)
    w = exp_state(cfg, (Q(-1, 2),))
    print(f"--- p = {p}, nu_p = {fmt_q(g.nu)}")
    print("H~(0) e^{-alpha/2}   =", deformed_mode(dv, g.H, 2 * p - 2, w, M))
    print("E~(p-1) e^{-alpha/2} =", deformed_mode(dv, g.E, 3 * p - 3, w, M))
    print("G^2 e^{-alpha/2}     =", g_operator_apply(cfg, g_operator_apply(cfg, w, M), M))
print("The H constants are -binom(3p-2, 2p-1): -4 for p = 2 and -21 for p = 3.")
