"""Demo 1: a logarithmic top for the triplet algebra W(p).

We deform the lattice vertex operators of V_L (L = Z alpha, <alpha,alpha> = 2p)
by the screening vector v = e^{-alpha/p}.  Acting with the deformed generators
omega, F, H, E on e^{alpha/2} inside the extended module, we collect the lowest
weight space and print the matrix of the deformed L(0) there.  It is a single
2x2 Jordan block: L(0) is not diagonalizable, so the module is logarithmic.

Run:  python demos/01_triplet_logarithmic_top.py [p]
"""
import sys

from voalog import triplet
from voalog.deformation import DeformationVector, deformed_mode, deformed_virasoro_mode
from voalog.fock import element_weight, exp_state
from voalog.lattice import fmt_q
from voalog.modes import triplet_extended
from voalog.rational import Q
from voalog.screenings import screening_vector, triplet_generators
from voalog.structure import Letter, generate_submodule, jordan_structure

p = int(sys.argv[1]) if len(sys.argv) > 1 else 2
cfg = triplet(p)
print(f"W({p}): central charge c = {fmt_q(cfg.central_charge)}")

algebra = triplet_extended(cfg, 0)  # V_L + V_{L - alpha/p}
module = triplet_extended(cfg, 1)  # V_{L + alpha/2} + V_{L + alpha/2 - alpha/p}
dv = DeformationVector(cfg, screening_vector(cfg, "Qtilde"), algebra)
gens = triplet_generators(cfg)

# every generator a acts through its deformed modes a~_n
letters = [
    Letter(name, element_weight(cfg, a), (lambda a: lambda n, w: deformed_mode(dv, a, n, w, module))(a))
    for name, a in gens.as_dict().items()
]

top = Q(2 - p, 4)
start = exp_state(cfg, (Q(1, 2),))
print(f"closing e^(alpha/2) under the deformed generators, weight window [{fmt_q(top)}, {fmt_q(top + 1)}]")
span = generate_submodule([start], letters, top, lambda e: element_weight(cfg, e), top, margin=1)
vectors = span.vectors(top)
print(f"lowest weight {fmt_q(top)}: dimension {len(vectors)}")
for v in vectors:
    print("   ", v)

report = jordan_structure(lambda v: deformed_virasoro_mode(dv, 0, v, module), vectors, top)
print("matrix of L~(0) on this space (columns = images):")
for row in report.matrix:
    print("   ", [fmt_q(x) for x in row])
print("Jordan blocks:", report.data.to_json())
assert report.data.blocks == {top: [2]}
print("=> one Jordan block of size 2: the top is logarithmic.")
