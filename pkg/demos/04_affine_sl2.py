"""Demo 4: affine sl2 at level -4/3 on an indefinite lattice.

The lattice Z gamma + Z delta has <gamma,gamma> = 1/6 = -<delta,delta>.  The
currents e, h, f are explicit vectors of V_D; the screening vector e^{2 gamma}
deforms them.  On the module through e^{-3gamma+delta} the deformed L(0) has a
2x2 Jordan block at weight -1/3, and the deformed f(1) sends the top vector to
nu e^{-4gamma+4delta} with nu = -1/3.

Run:  python demos/04_affine_sl2.py
"""
from voalog.affine import affine_mode_apply, build_affine_realization, l0_tilde
from voalog.fock import FockElement, exp_state, graded_basis
from voalog.lattice import fmt_q
from voalog.rational import Q
from voalog.structure import jordan_structure

real = build_affine_realization()
c = real.config
print(f"level k = {fmt_q(real.k)}, Sugawara central charge c = {fmt_q(c.central_charge)}")
print("e =", real.e)
print("h =", real.h)
print("f =", real.f)
print("-(2/9) Q e^{3gamma+3delta} = -f ?", real.f_alt == -real.f)

vac = exp_state(c, (0, 0))
print("[e(1), f(-1)] 1 = h(0) 1 + k 1 :",
      affine_mode_apply(real, "e", 1, affine_mode_apply(real, "f", -1, vac))
      - affine_mode_apply(real, "f", -1, affine_mode_apply(real, "e", 1, vac)))

w = exp_state(c, (-3, 1))
top = Q(-1, 3)
vecs = [FockElement.basis(b) for s in real.module.summands() for b in graded_basis(s, top, 1)]
rep = jordan_structure(l0_tilde(real, real.module), vecs, top)
print(f"L~(0) on weight {fmt_q(top)}, delta-charge 1:", rep.data.to_json())
print("e~(0) e^{-3gamma+delta} =", affine_mode_apply(real, "e", 0, w, True, real.module))
print("f~(1) e^{-3gamma+delta} =", affine_mode_apply(real, "f", 1, w, True, real.module))
