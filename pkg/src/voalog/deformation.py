"""Delta(v, x)-deformed module structures, Delta_log and logarithmic intertwiners.

``Delta(v, x) a = x^{v_0} exp(sum_{n>=1} v_n/(-n) (-x)^{-n}) a`` is only applied to
``a`` in ``Ker v_0`` (otherwise :class:`NotInKernel`); for the rest,
``Delta_log`` replaces ``x^{v_0}`` by ``exp(log(x) v_0)`` and produces a
:class:`LogSeries`.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import factorial, floor

from .errors import NonIntegralWeight, NotInKernel, NotNilpotent
from .fock import FockElement, element_to_json
from .lattice import LatticeConfig, fmt_q, frac
from .modes import (
    ExtendedSector,
    conformal_vector,
    engine,
    general_mode,
    heisenberg_mode,
    mode_bound,
    virasoro_mode,
)
from .rational import Q

ZERO = Q(0)


class LogSeries:
    """Finite map ``(x_exp, log_pow) -> FockElement``."""

    def __init__(self, terms=None):
        self.terms = {}
        for k, v in (terms or {}).items():
            if v:
                self.terms[(frac(k[0]), int(k[1]))] = v

    def add(self, x_exp, log_pow, elem: FockElement):
        key = (frac(x_exp), log_pow)
        got = self.terms.get(key)
        new = elem if got is None else got + elem
        if new:
            self.terms[key] = new
        else:
            self.terms.pop(key, None)

    def __add__(self, other):
        out = LogSeries(self.terms)
        for (e, k), v in other.terms.items():
            out.add(e, k, v)
        return out

    def __sub__(self, other):
        out = LogSeries(self.terms)
        for (e, k), v in other.terms.items():
            out.add(e, k, -v)
        return out

    def __eq__(self, other):
        return isinstance(other, LogSeries) and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def max_log_power(self):
        return max((k for _, k in self.terms), default=0)

    def has_logs(self):
        return any(k > 0 for _, k in self.terms)

    def restrict(self, min_exp=None, max_exp=None):
        return LogSeries({
            k: v for k, v in self.terms.items()
            if (min_exp is None or k[0] >= min_exp) and (max_exp is None or k[0] <= max_exp)
        })

    def derivative(self):
        """d/dx with ``(log x)' = 1/x``."""
        out = LogSeries()
        for (e, k), v in self.terms.items():
            if e:
                out.add(e - 1, k, v * e)
            if k:
                out.add(e - 1, k - 1, v * k)
        return out

    def to_json(self):
        return [
            {"x_exp": fmt_q(e), "log_pow": k, "coeff": element_to_json(v)}
            for (e, k), v in sorted(self.terms.items())
        ]

    def __repr__(self):
        return " + ".join(f"[x^{e} log^{k}]({v})" for (e, k), v in sorted(self.terms.items())) or "0"


@dataclass(frozen=True)
class DeformationVector:
    """An even vector ``v`` with commuting modes, quasi-primary of weight one.

    ``algebra_ctx`` is the extended algebra in which ``v`` lives (its truncation
    rule is applied when ``v`` acts on algebra elements).
    """

    config: LatticeConfig
    v: FockElement
    algebra_ctx: ExtendedSector | None = None

    def mode(self, n, w, ctx=None):
        return general_mode(self.config, self.v, n, w, ctx)

    def validate(self, states, nrange=range(-3, 4), ctx=None) -> list:
        """Return a list of failures of rel-c-1 / rel-c-2 (empty = valid)."""
        fails = []
        for k in range(0, 4):
            lhs = virasoro_mode(self.config, k, self.v)
            rhs = self.v if k == 0 else FockElement()
            if lhs != rhs:
                fails.append(f"L({k})v != delta_(k,0) v")
        for w in states:
            for n in nrange:
                for m in nrange:
                    if m <= n:
                        continue
                    c = self.mode(n, self.mode(m, w, ctx), ctx) - self.mode(m, self.mode(n, w, ctx), ctx)
                    if c:
                        fails.append(f"[v_{n}, v_{m}] != 0 on {w!r}")
        return fails


def _exp_series(apply_v, a: FockElement, max_order=None, nmax=None):
    """``exp(sum_{n>=1} v_n (-1)^n/(-n) x^{-n}) a`` as ``{j: c_j}`` (coefficient of x^{-j}).

    ``apply_v(n, elem)`` evaluates ``v_n elem`` and ``nmax(elem)`` bounds the
    ``n`` with ``v_n elem != 0``; terminates since every ``v_n`` (n >= 1)
    lowers the weight.
    """
    out = {0: a}
    # T^k a / k! computed iteratively: layer[k] = {j: elem}
    layer = {0: a}
    k = 0
    while layer:
        k += 1
        nxt = {}
        for j, elem in layer.items():
            top = nmax(elem)
            top = -1 if top is None else floor(top)
            if max_order is not None:
                top = min(top, max_order - j)
            for n in range(1, top + 1):
                img = apply_v(n, elem)
                if img:
                    c = Q((-1) ** n, -n) / k
                    nxt[j + n] = nxt.get(j + n, FockElement()) + img * c
        layer = {j: e for j, e in nxt.items() if e}
        for j, e in layer.items():
            out[j] = out.get(j, FockElement()) + e
    return {j: e for j, e in out.items() if e}


def _v_applier(dv: DeformationVector, ctx):
    return lambda n, e: general_mode(dv.config, dv.v, n, e, ctx)


def _v_bound(dv: DeformationVector):
    return lambda e: mode_bound(dv.config, dv.v, e)


def delta_expand(dv: DeformationVector, a, check_kernel=True) -> dict:
    """``Delta(v, x) a = sum_j c_j x^{-j}`` for ``a`` in ``Ker v_0``."""
    a = a if isinstance(a, FockElement) else FockElement.basis(a)
    ctx = dv.algebra_ctx
    if check_kernel and general_mode(dv.config, dv.v, 0, a, ctx):
        raise NotInKernel("v_0 a != 0; Delta(v, x) is ambiguous on a")
    return _exp_series(_v_applier(dv, ctx), a, nmax=_v_bound(dv))


_DELTA_CACHE: dict = {}


def _cached_delta(dv, a):
    key = (dv, a)
    got = _DELTA_CACHE.get(key)
    if got is None:
        got = _DELTA_CACHE[key] = delta_expand(dv, a)
    return got


def deformed_mode(dv: DeformationVector, a, n, w, ctx: ExtendedSector | None = None) -> FockElement:
    """``a~_n = sum_j (c_j)_{n-j}`` where ``Delta(v,x)a = sum_j c_j x^{-j}``."""
    a = a if isinstance(a, FockElement) else FockElement.basis(a)
    n = frac(n)
    out = FockElement()
    for j, c in sorted(_cached_delta(dv, a).items()):
        out = out + general_mode(dv.config, c, n - j, w, ctx)
    return out


def deformed_virasoro_mode(dv: DeformationVector, n, w, ctx=None) -> FockElement:
    return deformed_mode(dv, conformal_vector(dv.config), frac(n) + 1, w, ctx)


# -- simple-current (Heisenberg) shift ----------------------------------------------

def heisenberg_delta(config: LatticeConfig, h: tuple, b: FockElement) -> dict:
    """``Delta(h, x) b = sum_e d_e x^e`` for a Cartan vector ``h`` (coefficients over generators).

    The zero-mode factor ``x^{h_0}`` requires integral eigenvalues.
    """
    out = {}
    for key, coeff in b.items():
        s = config.pairing(h, key.point)
        if s.denominator != 1:
            raise NonIntegralWeight(f"h_0 eigenvalue {s} is not an integer")

        def app(n, e, h=h):
            acc = FockElement()
            for g, hg in enumerate(h):
                if hg:
                    acc = acc + heisenberg_mode(config, g, n, e) * hg
            return acc

        depth = lambda e: max((bb.depth() for bb in e.terms), default=None)
        for j, e in _exp_series(app, FockElement.basis(key, coeff), nmax=depth).items():
            x = int(s) - j
            out[x] = out.get(x, FockElement()) + e
    return {x: e for x, e in out.items() if e}


def heisenberg_shift_mode(dv: DeformationVector, h: tuple, a, n, w, ctx=None) -> FockElement:
    """Mode ``n`` of ``Y'(a, x) = Y(Delta(h, x) Delta(v, x) a, x)``."""
    a = a if isinstance(a, FockElement) else FockElement.basis(a)
    n = frac(n)
    out = FockElement()
    for j, c in sorted(_cached_delta(dv, a).items()):
        for e, d in sorted(heisenberg_delta(dv.config, h, c).items()):
            # x^{-j} x^{e} Y(d, x): coefficient of x^{-n-1} is d_{n - j + e}
            out = out + general_mode(dv.config, d, n - j + e, w, ctx)
    return out


# -- Delta_log and logarithmic intertwiners --------------------------------------------

def delta_log_apply(dv: DeformationVector, w, order, ctx=None, bound: int = 4) -> LogSeries:
    """``Delta_log(v, x) w`` truncated at x-order ``order`` (powers ``x^{-j}``, ``j <= order``)."""
    w = w if isinstance(w, FockElement) else FockElement.basis(w)
    # nilpotent part
    powers = [w]
    while powers[-1]:
        if len(powers) > bound:
            raise NotNilpotent(bound)
        powers.append(general_mode(dv.config, dv.v, 0, powers[-1], ctx))
    powers.pop()
    out = LogSeries()
    apply_v = _v_applier(dv, ctx)
    for k, pk in enumerate(powers):
        for j, e in _exp_series(apply_v, pk, max_order=order, nmax=_v_bound(dv)).items():
            if j <= order:
                out.add(-j, k, e * Q(1, factorial(k)))
    return out


def delta_plain_apply(dv: DeformationVector, w, order, ctx=None) -> LogSeries:
    """``Delta(v, x) w`` for ``w`` in ``Ker v_0`` as a (log-free) series."""
    w = w if isinstance(w, FockElement) else FockElement.basis(w)
    if general_mode(dv.config, dv.v, 0, w, ctx):
        raise NotInKernel("v_0 w != 0")
    out = LogSeries()
    for j, e in _exp_series(_v_applier(dv, ctx), w, max_order=order, nmax=_v_bound(dv)).items():
        if j <= order:
            out.add(-j, 0, e)
    return out


def field_series(config, u: FockElement, w: FockElement, max_exp, ctx=None) -> dict:
    """``Y(u, x) w`` (generalized lattice field, rational exponents) as ``{x_exp: elem}``
    for all exponents ``<= max_exp``."""
    eng = engine(config)
    max_exp = frac(max_exp)
    out = {}
    for ub, uc in u.items():
        for wb, wc in w.items():
            if ctx is not None and ctx.truncates(ub.point, wb.point):
                continue
            target = tuple(a + b for a, b in zip(ub.point, wb.point))
            kmax = eng.weight(ub) + eng.weight(wb) - 1 - config.lattice_weight(target)
            n0 = -1 - config.pairing(ub.point, wb.point)
            # largest aligned n <= kmax
            n = n0 + int((kmax - n0) // 1)
            while -n - 1 <= max_exp:
                img = eng.mode(ub, n, wb)
                if img:
                    e = -n - 1
                    out[e] = out.get(e, FockElement()) + FockElement._raw(dict(img)) * (uc * wc)
                n -= 1
    return {e: v for e, v in out.items() if v}


def log_intertwiner_eval(dv: DeformationVector, u, w, max_exp, order=None, ctx=None, u_ctx=None) -> LogSeries:
    """``Y~(u, x) w = Y(Delta_log(v, x) u, x) w`` for x-exponents ``<= max_exp``."""
    u = u if isinstance(u, FockElement) else FockElement.basis(u)
    w = w if isinstance(w, FockElement) else FockElement.basis(w)
    order = order if order is not None else 8
    dl = delta_log_apply(dv, u, order, u_ctx)
    out = LogSeries()
    for (e1, k), b in dl.terms.items():
        for e2, val in field_series(dv.config, b, w, max_exp - e1, ctx).items():
            out.add(e1 + e2, k, val)
    return out.restrict(max_exp=max_exp)


def apply_deformed_descriptor(config, desc, w, ctx=None):
    v = desc.get("v")
    dv = DeformationVector(config, v, desc.get("algebra_ctx"))
    if desc.kind == "deformed":
        return deformed_mode(dv, desc.get("a"), desc.get("n"), w, ctx)
    if desc.kind == "deformed_virasoro":
        return deformed_virasoro_mode(dv, desc.get("n"), w, ctx)
    if desc.kind == "heisenberg_shift":
        return heisenberg_shift_mode(dv, desc.get("h"), desc.get("a"), desc.get("n"), w, ctx)
    raise ValueError(desc.kind)
