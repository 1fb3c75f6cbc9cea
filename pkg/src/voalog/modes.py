"""Mode evaluation on Fock elements.

Every mode ``u_n`` of a basis vector ``u`` is reduced to exponential modes by
peeling one creator off ``u`` at a time with the iterate formula

    (a_p b)_q = sum_j (-1)^j C(p, j) (a_{p-j} b_{q+j} - (-1)^p (-1)^{|a||b|} b_{p+q-j} a_j)

where ``a`` is ``alpha_i(-1)1`` or ``phi(-1/2)1``.  Both fields are local with
everything in the generalized lattice algebra, so the formula also evaluates
sector-crossing (intertwining) modes with rational indices.  Exponential modes
are read off from ``E^-(-mu,x) E^+(-mu,x) e_mu x^{mu(0)}``.

The truncation rule of the extended algebras (modes of the shifted summand
annihilate the shifted summand of the module) is applied by
:class:`ExtendedSector` at the top level only.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import floor

from .errors import NonIntegralExponent
from .fock import (
    ONE,
    ZERO,
    FockBasisVector,
    FockElement,
    add_into,
    insert_boson,
    remove_boson,
    weight_of,
)
from .lattice import LatticeConfig, Sector, _coeffs, frac
from .rational import Q

HALF = Q(1, 2)


def binom(p, j: int) -> Q:
    """Generalized binomial coefficient ``C(p, j)`` for rational ``p``."""
    out = Q(1)
    for i in range(j):
        out = out * (p - i) / (i + 1)
    return out


class _Engine:
    """Per-configuration caches."""

    def __init__(self, config: LatticeConfig):
        self.config = config
        self.gram = config.gram
        self.rank = config.rank
        self.mode_cache = {}
        self.eplus_cache = {}
        self.eminus_cache = {}
        self.pair_cache = {}
        self.parity_cache = {}
        self.weight_cache = {}
        self.cre_cache = {}

    # -- small helpers ------------------------------------------------------
    def pair_gen(self, mu, g):
        """<mu, alpha_g>"""
        key = (mu, g)
        v = self.pair_cache.get(key)
        if v is None:
            v = sum((mu[i] * self.gram[i][g] for i in range(self.rank)), ZERO)
            self.pair_cache[key] = v
        return v

    def lattice_parity(self, point):
        v = self.parity_cache.get(point)
        if v is None:
            v = self.config.parity(point)
            self.parity_cache[point] = v
        return v

    def parity(self, b: FockBasisVector):
        return (self.lattice_parity(b.point) + len(b.fermions)) % 2

    def weight(self, b: FockBasisVector):
        v = self.weight_cache.get(b)
        if v is None:
            v = weight_of(self.config, b)
            self.weight_cache[b] = v
        return v

    def lattice_weight(self, point):
        return self.config.lattice_weight(point)

    # -- free-field modes on basis vectors ----------------------------------------
    def heis(self, g, n, b: FockBasisVector):
        """alpha_g(n) on a basis vector, as a list of (key, coeff)."""
        if n < 0:
            return [(FockBasisVector(insert_boson(b.bosons, g, -n), b.point, b.fermions), ONE)]
        if n == 0:
            s = self.pair_gen(b.point, g)
            return [(b, s)] if s else []
        out = []
        seen = set()
        for (j, m) in b.bosons:
            if m != n or (j, m) in seen:
                continue
            seen.add((j, m))
            c = self.gram[g][j]
            if c:
                cnt = b.bosons.count((j, m))
                out.append((FockBasisVector(remove_boson(b.bosons, j, m), b.point, b.fermions), cnt * n * c))
        return out

    def ferm(self, s, b: FockBasisVector):
        """phi(s) on a basis vector (Koszul sign from the lattice factor)."""
        sign = -1 if self.lattice_parity(b.point) else 1
        word = b.fermions
        if s < 0:
            r = -s
            if r in word:
                return []
            idx = sum(1 for x in word if x > r)
            new = word[:idx] + (r,) + word[idx:]
        else:
            if s not in word:
                return []
            idx = word.index(s)
            new = word[:idx] + word[idx + 1:]
        if idx % 2:
            sign = -sign
        return [(FockBasisVector(b.bosons, b.point, new), Q(sign))]

    def eplus(self, mu, bosons):
        """Degree components of ``E^+(-mu, x)`` on a boson monomial: list of dicts."""
        key = (mu, bosons)
        got = self.eplus_cache.get(key)
        if got is not None:
            return got
        depth = sum(n for _, n in bosons)
        comps = [{bosons: ONE}]
        for j in range(1, depth + 1):
            acc = {}
            for n in range(1, j + 1):
                for mono, c in comps[j - n].items():
                    for (g, m) in set(mono):
                        if m != n:
                            continue
                        s = self.pair_gen(mu, g)
                        if not s:
                            continue
                        coef = -c * mono.count((g, m)) * n * s / j
                        nm = remove_boson(mono, g, m)
                        v = acc.get(nm, ZERO) + coef
                        if v:
                            acc[nm] = v
                        else:
                            acc.pop(nm, None)
            comps.append(acc)
        self.eplus_cache[key] = comps
        return comps

    def eminus(self, mu, k):
        """Degree-k component of ``E^-(-mu, x)``: dict monomial -> coeff."""
        cache = self.eminus_cache.setdefault(mu, [{(): ONE}])
        while len(cache) <= k:
            j = len(cache)
            acc = {}
            for n in range(1, j + 1):
                for mono, c in cache[j - n].items():
                    for g in range(self.rank):
                        if not mu[g]:
                            continue
                        nm = insert_boson(mono, g, n)
                        v = acc.get(nm, ZERO) + c * mu[g] / j
                        if v:
                            acc[nm] = v
                        else:
                            acc.pop(nm, None)
            cache.append(acc)
        return cache[k]

    def exp_basis(self, mu, r, b: FockBasisVector) -> dict:
        """``e^mu_r`` on a basis vector."""
        lam = b.point
        s = self.config.pairing(mu, lam)
        d = -r - 1 - s
        if d.denominator != 1:
            raise NonIntegralExponent(
                f"e^{tuple(map(str, mu))}_{r} on e^{tuple(map(str, lam))}: exponent offset {d} is not integral"
            )
        d = int(d)
        eps = self.config.cocycle_sign(mu, lam)
        newpt = tuple(a + c for a, c in zip(lam, mu))
        plus = self.eplus(mu, b.bosons)
        out = {}
        for j in range(max(0, -d), len(plus)):
            k = d + j
            minus = self.eminus(mu, k)
            for m1, c1 in plus[j].items():
                for m2, c2 in minus.items():
                    key = FockBasisVector(tuple(sorted(m1 + m2)), newpt, b.fermions)
                    v = out.get(key, ZERO) + eps * c1 * c2
                    if v:
                        out[key] = v
                    else:
                        out.pop(key, None)
        return out

    # -- general modes --------------------------------------------------------
    def mode(self, u: FockBasisVector, n, w: FockBasisVector) -> dict:
        key = (u, n, w)
        got = self.mode_cache.get(key)
        if got is not None:
            return got
        if u.fermions:
            out = self._peel_fermion(u, n, w)
        elif u.bosons:
            out = self._normal_ordered(u, n, w)
        else:
            out = self.exp_basis(u.point, n, w)
        self.mode_cache[key] = out
        return out

    def creation_part(self, mu, cre: tuple, D: int) -> dict:
        """Degree-D part of ``E^-(-mu,x) prod_{(g,m) in cre} A^-_{g,m}(x)`` where
        ``A^-_{g,m}(x) = sum_{r>=m} C(r-1, m-1) alpha_g(-r) x^{r-m}``."""
        key = (mu, cre, D)
        got = self.cre_cache.get(key)
        if got is not None:
            return got
        if not cre:
            out = self.eminus(mu, D)
        else:
            g, m = cre[-1]
            rest = cre[:-1]
            out = {}
            for t in range(D + 1):
                c = binom(t + m - 1, m - 1)
                for mono, v in self.creation_part(mu, rest, D - t).items():
                    nm = insert_boson(mono, g, t + m)
                    s = out.get(nm, ZERO) + c * v
                    if s:
                        out[nm] = s
                    else:
                        out.pop(nm, None)
        self.cre_cache[key] = out
        return out

    def _normal_ordered(self, u, n, w):
        """``u_n w`` for ``u = prod alpha_{g_i}(-m_i) e^mu`` via
        ``Y(u,x) = o prod_i d^{(m_i-1)}alpha_{g_i}(x) Y(e^mu,x) o`` (annihilators,
        including zero modes, act first on ``w``)."""
        mu = u.point
        factors = u.bosons
        lam = w.point
        s = self.config.pairing(mu, lam)
        base = -n - 1 - s  # required total x-degree from the bosonic parts
        if base.denominator != 1:
            raise NonIntegralExponent(
                f"mode {n} of a vector at {tuple(map(str, mu))} on e^{tuple(map(str, lam))} is not aligned"
            )
        base = int(base)
        eps = self.config.cocycle_sign(mu, lam)
        newpt = tuple(a + c for a, c in zip(lam, mu))
        out = {}
        left = {}  # (creation factors, degree) -> annihilated monomial -> coeff
        k = len(factors)
        seen_splits = set()
        for mask in range(1 << k):
            ann = tuple(factors[i] for i in range(k) if mask >> i & 1)
            cre = tuple(factors[i] for i in range(k) if not mask >> i & 1)
            if (ann, cre) in seen_splits:
                continue
            seen_splits.add((ann, cre))
            mult = _split_multiplicity(factors, ann)
            # annihilation part on w: dict (bosons, power) -> coeff, power = x-degree
            states = {(w.bosons, 0): Q(mult)}
            for (g, m) in ann:
                nxt = {}
                for (mono, pw), c in states.items():
                    modes = {0} | {mm for (h, mm) in mono if self.gram[g][h]}
                    for kk in modes:
                        coef = binom(-kk - 1, m - 1)
                        if not coef:
                            continue
                        for key2, v2 in self.heis(g, kk, FockBasisVector(mono, lam, ())):
                            kk2 = (key2.bosons, pw - kk - m)
                            val = nxt.get(kk2, ZERO) + c * coef * v2
                            if val:
                                nxt[kk2] = val
                            else:
                                nxt.pop(kk2, None)
                states = nxt
            for (mono, pw), c in states.items():
                plus = self.eplus(mu, mono)
                for j, comp in enumerate(plus):
                    D = base - pw + j
                    if D < 0:
                        continue
                    acc = left.setdefault((cre, D), {})
                    for m1, c1 in comp.items():
                        val = acc.get(m1, ZERO) + c * c1
                        if val:
                            acc[m1] = val
                        else:
                            acc.pop(m1, None)
        # convolve each grouped annihilation result with its creation part once
        for (cre, D), acc in left.items():
            if not acc:
                continue
            crea = self.creation_part(mu, cre, D)
            for m1, c1 in acc.items():
                cc = eps * c1
                for m2, c2 in crea.items():
                    key = FockBasisVector(tuple(sorted(m1 + m2)), newpt, w.fermions)
                    val = out.get(key, ZERO) + cc * c2
                    if val:
                        out[key] = val
                    else:
                        out.pop(key, None)
        return out

    def _kmax(self, u, w):
        """Largest mode index k with u_k w possibly nonzero."""
        target = tuple(a + c for a, c in zip(u.point, w.point))
        return self.weight(w) + self.weight(u) - 1 - self.lattice_weight(target)

    def _peel_boson(self, u, n, w):
        g, m = u.bosons[0]
        up = FockBasisVector(u.bosons[1:], u.point, u.fermions)
        p = -m
        out = {}
        sign_p = -1 if p % 2 else 1
        jmax = floor(self._kmax(up, w) - n)
        for j in range(0, jmax + 1):
            c = binom(p, j) * (-1 if j % 2 else 1)
            inner = self.mode(up, n + j, w)
            for key, val in inner.items():
                for k2, v2 in self.heis(g, p - j, key):
                    add_into(out, ((k2, v2 * val),), c)
        # annihilator part: a_j w for j >= 0
        for j in self._boson_annihilators(g, w):
            c = binom(p, j) * (-1 if j % 2 else 1) * (-sign_p)
            for k1, v1 in self.heis(g, j, w):
                inner = self.mode(up, p + n - j, k1)
                add_into(out, inner, c * v1)
        return out

    def _boson_annihilators(self, g, w):
        js = {0}
        for (h, m) in w.bosons:
            if self.gram[g][h]:
                js.add(m)
        return sorted(js)

    def _peel_fermion(self, u, n, w):
        r = u.fermions[0]
        up = FockBasisVector(u.bosons, u.point, u.fermions[1:])
        peel_sign = -1 if self.lattice_parity(u.point) else 1
        p = int(-r - HALF)
        sign_p = -1 if p % 2 else 1
        sign_ab = -1 if self.parity(up) else 1
        out = {}
        jmax = floor(self._kmax(up, w) - n)
        for j in range(0, jmax + 1):
            c = binom(p, j) * (-1 if j % 2 else 1) * peel_sign
            inner = self.mode(up, n + j, w)
            for key, val in inner.items():
                for k2, v2 in self.ferm(p - j + HALF, key):
                    add_into(out, ((k2, v2 * val),), c)
        for s in w.fermions:
            j = int(s - HALF)
            c = binom(p, j) * (-1 if j % 2 else 1) * (-sign_p) * sign_ab * peel_sign
            for k1, v1 in self.ferm(s, w):
                inner = self.mode(up, p + n - j, k1)
                add_into(out, inner, c * v1)
        return out


def _split_multiplicity(factors: tuple, ann: tuple) -> int:
    """Number of index subsets of ``factors`` whose sub-multiset equals ``ann``."""
    from collections import Counter
    from math import comb

    total = Counter(factors)
    out = 1
    for f, c in Counter(ann).items():
        out *= comb(total[f], c)
    return out


_ENGINES: dict = {}


def engine(config: LatticeConfig) -> _Engine:
    e = _ENGINES.get(config)
    if e is None:
        e = _ENGINES[config] = _Engine(config)
    return e


def clear_caches():
    _ENGINES.clear()


def mode_bound(config: LatticeConfig, u, w):
    """Largest ``n`` (up to alignment) for which ``u_n w`` can be nonzero; ``None`` if ``u`` or ``w`` is zero."""
    eng = engine(config)
    best = None
    for ub in _as_element(u).terms:
        for wb in _as_element(w).terms:
            k = eng._kmax(ub, wb)
            if best is None or k > best:
                best = k
    return best


# -- extended sectors -------------------------------------------------------------

@dataclass(frozen=True)
class ExtendedSector:
    """A module ``V_base + V_shifted`` of an extended algebra ``V_L + V_{L+shift}``.

    Modes of vectors in the algebra's shifted coset annihilate states in the
    module's shifted summand.
    """

    base: Sector
    shifted: Sector
    algebra_shift: Sector
    label: str = field(default="", compare=False)

    @property
    def config(self):
        return self.base.config

    def contains(self, point) -> bool:
        return self.base.contains(point) or self.shifted.contains(point)

    def is_shifted_state(self, point) -> bool:
        return self.shifted.contains(point)

    def truncates(self, upoint, wpoint) -> bool:
        return self.algebra_shift.contains(upoint) and self.shifted.contains(wpoint)

    def summands(self):
        return (self.base, self.shifted)


def triplet_extended(config: LatticeConfig, i: int = 0, label=None) -> ExtendedSector:
    """``V_{L + (i/2p')alpha} + V_{L + (i/2p')alpha - alpha/p}`` (shift by ``-alpha/p``)."""
    p, pp = config.p, config.pprime
    if config.case_tag == "super":
        rep = Q(i, pp)
    else:
        rep = Q(i, 2 * pp)
    shift = Q(-1, p)
    return ExtendedSector(
        base=Sector(config, (rep,)),
        shifted=Sector(config, (rep + shift,)),
        algebra_shift=Sector(config, (shift,)),
        label=label or f"V_{i}",
    )


def triplet_extended_dual(config: LatticeConfig, j: int = 0) -> ExtendedSector:
    """``V_{L + (j/2p)alpha} + V_{L + (j/2p)alpha + alpha/p'}``."""
    p, pp = config.p, config.pprime
    rep = Q(j, 2 * p)
    shift = Q(1, pp)
    return ExtendedSector(
        base=Sector(config, (rep,)),
        shifted=Sector(config, (rep + shift,)),
        algebra_shift=Sector(config, (shift,)),
        label=f"Vo_{j}",
    )


# -- public mode API -------------------------------------------------------------

def _as_element(w) -> FockElement:
    if isinstance(w, FockBasisVector):
        return FockElement.basis(w)
    return w


def heisenberg_mode(config: LatticeConfig, gen: int, n: int, w) -> FockElement:
    eng = engine(config)
    out = {}
    for b, c in _as_element(w).items():
        for k, v in eng.heis(gen, n, b):
            add_into(out, ((k, v),), c)
    return FockElement._raw(out)


def fermion_mode(config: LatticeConfig, r, w) -> FockElement:
    """``phi(r)`` for half-integral ``r`` with ``{phi(r), phi(s)} = delta_{r+s,0}``."""
    r = frac(r)
    if (r - HALF).denominator != 1:
        raise NonIntegralExponent(f"fermion mode {r} is not a half-integer")
    eng = engine(config)
    out = {}
    for b, c in _as_element(w).items():
        for k, v in eng.ferm(r, b):
            add_into(out, ((k, v),), c)
    return FockElement._raw(out)


def exp_mode(config: LatticeConfig, mu, r, w, ctx: ExtendedSector | None = None) -> FockElement:
    mu = tuple(frac(c) for c in _coeffs(mu))
    r = frac(r)
    eng = engine(config)
    out = {}
    for b, c in _as_element(w).items():
        if ctx is not None and ctx.truncates(mu, b.point):
            continue
        add_into(out, eng.exp_basis(mu, r, b), c)
    return FockElement._raw(out)


def general_mode(config: LatticeConfig, u, n, w, ctx: ExtendedSector | None = None) -> FockElement:
    """``u_n w`` for arbitrary elements ``u``, ``w`` (bilinear extension)."""
    n = frac(n)
    eng = engine(config)
    out = {}
    welem = _as_element(w)
    for ub, uc in _as_element(u).items():
        for wb, wc in welem.items():
            if ctx is not None and ctx.truncates(ub.point, wb.point):
                continue
            add_into(out, eng.mode(ub, n, wb), uc * wc)
    return FockElement._raw(out)


def conformal_vector(config: LatticeConfig) -> FockElement:
    """The conformal vector of each case, written as in the source formulas."""
    zero = (ZERO,) * config.rank
    if config.case_tag == "triplet":
        p, pp = config.p, config.pprime
        return FockElement({
            FockBasisVector(((0, 1), (0, 1)), zero): Q(1, 4 * p * pp),
            FockBasisVector(((0, 2),), zero): Q(p - pp, 2 * p * pp),
        })
    if config.case_tag == "super":
        p, pp = config.p, config.pprime
        return FockElement({
            FockBasisVector(((0, 1), (0, 1)), zero): Q(1, 2 * p * pp),
            FockBasisVector(((0, 2),), zero): Q(p - pp, 2 * p * pp),
            FockBasisVector((), zero, (Q(3, 2), HALF)): HALF,
        })
    # affine: (3 gamma(-1)^2 - 2 gamma(-2) - 3 delta(-1)^2) 1
    return FockElement({
        FockBasisVector(((0, 1), (0, 1)), zero): Q(3),
        FockBasisVector(((0, 2),), zero): Q(-2),
        FockBasisVector(((1, 1), (1, 1)), zero): Q(-3),
    })


def virasoro_mode(config: LatticeConfig, n: int, w, ctx: ExtendedSector | None = None) -> FockElement:
    """``L(n) = omega_{n+1}``."""
    return general_mode(config, conformal_vector(config), frac(n) + 1, w, ctx)


def extended_mode(config: LatticeConfig, inner: "ModeDescriptor", w, es: ExtendedSector) -> FockElement:
    """Evaluate ``inner`` inside the extended sector ``es`` (truncation rule applied)."""
    return apply_mode(config, inner, w, es)


# -- descriptors ------------------------------------------------------------------

@dataclass(frozen=True)
class ModeDescriptor:
    """Symbolic recipe for an operator.

    ``kind`` is one of ``heisenberg``, ``fermion``, ``exponential``, ``general``,
    ``virasoro``, ``deformed``, ``deformed_virasoro``, ``screening``, ``g_op``,
    ``extended``, ``compose``, ``sum``.
    ``args`` is a tuple of (name, value) pairs.
    """

    kind: str
    args: tuple = ()

    def get(self, name, default=None):
        for k, v in self.args:
            if k == name:
                return v
        return default

    def __matmul__(self, other):
        return ModeDescriptor("compose", (("ops", (self, other)),))


def op(kind, **kwargs) -> ModeDescriptor:
    return ModeDescriptor(kind, tuple(sorted(kwargs.items())))


def apply_mode(config: LatticeConfig, desc: ModeDescriptor, w, ctx: ExtendedSector | None = None) -> FockElement:
    """Apply a :class:`ModeDescriptor` to an element."""
    k = desc.kind
    w = _as_element(w)
    if k == "heisenberg":
        return heisenberg_mode(config, desc.get("gen"), desc.get("n"), w)
    if k == "fermion":
        return fermion_mode(config, desc.get("r"), w)
    if k == "exponential":
        return exp_mode(config, desc.get("mu"), desc.get("r"), w, ctx)
    if k == "general":
        return general_mode(config, desc.get("u"), desc.get("n"), w, ctx)
    if k == "virasoro":
        return virasoro_mode(config, desc.get("n"), w, ctx)
    if k == "extended":
        return apply_mode(config, desc.get("inner"), w, desc.get("es"))
    if k == "compose":
        out = w
        for d in reversed(desc.get("ops")):
            out = apply_mode(config, d, out, ctx)
        return out
    if k == "sum":
        out = FockElement()
        for c, d in desc.get("terms"):
            out = out + apply_mode(config, d, w, ctx) * c
        return out
    if k == "scalar":
        return w * desc.get("c")
    if k in ("deformed", "deformed_virasoro", "heisenberg_shift"):
        from . import deformation

        return deformation.apply_deformed_descriptor(config, desc, w, ctx)
    if k in ("screening", "g_op"):
        from . import screenings

        return screenings.apply_screening_descriptor(config, desc, w, ctx)
    raise ValueError(f"unknown mode kind {k!r}")
