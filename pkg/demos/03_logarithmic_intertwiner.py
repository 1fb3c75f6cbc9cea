"""Demo 3: Delta_log and the logarithmic intertwining operator (p = 2).

Delta_log(v, x) = x^{v_0} exp(sum_n v_n (-x)^{-n} / (-n)) contains log x when
v_0 is not zero.  On e^{alpha/2} the zero mode of v = e^{-alpha/2} is nilpotent
of order two, so a single power of log x appears.  On Ker v_0 the log part is
absent and Delta_log agrees with Delta.  The intertwiner
Y~(u, x) w = Y(Delta_log(v, x) u, x) w satisfies the L(-1)-derivative property,
which we confirm coefficient by coefficient.

Run:  python demos/03_logarithmic_intertwiner.py
"""
from voalog import triplet
from voalog.deformation import (
    DeformationVector,
    delta_log_apply,
    delta_plain_apply,
    log_intertwiner_eval,
)
from voalog.fock import exp_state
from voalog.modes import triplet_extended, virasoro_mode
from voalog.rational import Q
from voalog.screenings import screening_vector, triplet_generators

cfg = triplet(2)
A, M = triplet_extended(cfg, 0), triplet_extended(cfg, 1)
dv = DeformationVector(cfg, screening_vector(cfg, "Qtilde"), A)

u = exp_state(cfg, (Q(1, 2),))
series = delta_log_apply(dv, u, 3, M)
print("Delta_log(v, x) e^{alpha/2} =")
print("   ", series)
print("log-degree:", series.max_log_power())

F = triplet_generators(cfg).F
print("on F = e^{-alpha} (in Ker v_0): Delta_log == Delta ?",
      delta_log_apply(dv, F, 4, A) == delta_plain_apply(dv, F, 4, A))

w = exp_state(cfg, (Q(-1, 2),))
order = 4
Lu = virasoro_mode(cfg, -1, u, M)
y = log_intertwiner_eval(dv, u, w, 10, 50, None, M)
lo = min(e for e, _ in y.terms)
print(f"Y~(e^(alpha/2), x) e^(-alpha/2), lowest terms (x-exponent >= {lo}):")
print("   ", y.restrict(max_exp=lo + 1))
lhs = y.derivative().restrict(max_exp=lo + order)
rhs = log_intertwiner_eval(dv, Lu, w, lo + order, 50, None, M)
print(f"d/dx Y~(u,x)w == Y~(L(-1)u,x)w for exponents <= {lo + order}:", lhs == rhs)
