"""Graded Fock bases and exact-rational elements.

A basis vector is ``alpha_{i1}(-n1) ... alpha_{ik}(-nk) e^point`` tensored with
``phi(-r1) ... phi(-rm) 1`` (fermions only in the super case).  Elements are
finite maps basis vector -> nonzero exact rationals.
"""
from __future__ import annotations

from bisect import insort
from collections import Counter
from functools import lru_cache
from math import ceil, isqrt
from typing import NamedTuple

from .lattice import LatticeConfig, Sector, _coeffs, fmt_q, frac
from .rational import Q

ZERO = Q(0)
ONE = Q(1)
HALF = Q(1, 2)


class FockBasisVector(NamedTuple):
    bosons: tuple  # sorted ((gen, n), ...) with n >= 1, repetitions allowed
    point: tuple  # rational coefficients of the lattice label
    fermions: tuple = ()  # strictly decreasing positive half-integers

    def depth(self):
        return sum(n for _, n in self.bosons) + sum(self.fermions)


def basis_vector(point, bosons=(), fermions=()) -> FockBasisVector:
    return FockBasisVector(
        tuple(sorted((int(g), int(n)) for g, n in bosons)),
        tuple(frac(c) for c in _coeffs(point)),
        tuple(sorted((frac(r) for r in fermions), reverse=True)),
    )


def sort_key(b: FockBasisVector):
    """Boson degree, then boson monomial, then lattice point, then fermion word."""
    return (sum(n for _, n in b.bosons), b.bosons, b.point, len(b.fermions), b.fermions)


class FockElement:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        if terms is None:
            self.terms = {}
        elif isinstance(terms, dict):
            self.terms = {k: v for k, v in terms.items() if v}
        else:
            acc = {}
            for k, v in terms:
                acc[k] = acc.get(k, ZERO) + v
            self.terms = {k: v for k, v in acc.items() if v}

    @classmethod
    def basis(cls, b: FockBasisVector, coeff=ONE):
        return cls({b: frac(coeff)})

    @classmethod
    def _raw(cls, terms):
        e = cls.__new__(cls)
        e.terms = terms
        return e

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def items(self):
        return self.terms.items()

    def coeff(self, b) -> Q:
        return self.terms.get(b, ZERO)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        return isinstance(other, FockElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = out.get(k, ZERO) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return FockElement._raw(out)

    def __neg__(self):
        return FockElement._raw({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        c = frac(c)
        if not c:
            return FockElement()
        return FockElement._raw({k: c * v for k, v in self.terms.items()})

    __rmul__ = __mul__

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: sort_key(kv[0]))

    def points(self):
        return {b.point for b in self.terms}

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({v})*{format_basis(b)}" for b, v in self.sorted_terms())


def format_basis(b: FockBasisVector, names=None) -> str:
    parts = []
    for g, n in b.bosons:
        nm = names[g] if names else f"a{g}"
        parts.append(f"{nm}(-{n})")
    parts.append("e^(" + ",".join(str(c) for c in b.point) + ")")
    for r in b.fermions:
        parts.append(f"phi(-{r})")
    return "".join(parts)


def add_into(acc: dict, elem, scale=ONE):
    """``acc += scale * elem`` on raw dicts; returns ``acc``."""
    items = elem.items() if isinstance(elem, (dict, FockElement)) else elem
    for k, v in items:
        s = acc.get(k, ZERO) + scale * v
        if s:
            acc[k] = s
        else:
            acc.pop(k, None)
    return acc


# -- weights -------------------------------------------------------------------

def weight_of(config: LatticeConfig, b: FockBasisVector) -> Q:
    """L(0)-eigenvalue of a basis vector (bosons + fermions + exponential)."""
    return config.lattice_weight(b.point) + b.depth()


def element_weight(config, elem: FockElement):
    """Common weight of a homogeneous element, ``None`` for zero, ``ValueError`` otherwise."""
    ws = {weight_of(config, b) for b in elem.terms}
    if not ws:
        return None
    if len(ws) > 1:
        raise ValueError("element is not homogeneous")
    return ws.pop()


def parity_of(config: LatticeConfig, b: FockBasisVector) -> int:
    return (config.parity(b.point) + len(b.fermions)) % 2


# -- serialization -------------------------------------------------------------

def basis_to_json(b: FockBasisVector) -> dict:
    return {
        "bosons": [[g, n] for g, n in b.bosons],
        "point": [fmt_q(c) for c in b.point],
        "fermions": [fmt_q(r) for r in b.fermions],
    }


def basis_from_json(d) -> FockBasisVector:
    return basis_vector(d["point"], d.get("bosons", ()), d.get("fermions", ()))


def element_to_json(e: FockElement) -> list:
    return [{"coeff": fmt_q(v), **basis_to_json(b)} for b, v in e.sorted_terms()]


def element_from_json(data) -> FockElement:
    return FockElement((basis_from_json(t), frac(t.get("coeff", "1"))) for t in data)


# -- graded bases ----------------------------------------------------------------

@lru_cache(maxsize=None)
def colored_partitions(n: int, colors: int) -> tuple:
    """All boson monomials of total mode ``n`` over ``colors`` generators."""
    if n == 0:
        return ((),)
    parts = [(g, m) for m in range(1, n + 1) for g in range(colors)]
    out = []

    def rec(rem, start, acc):
        if rem == 0:
            out.append(tuple(sorted(acc)))
            return
        for idx in range(start, len(parts)):
            g, m = parts[idx]
            if m > rem:
                continue
            acc.append((g, m))
            rec(rem - m, idx, acc)
            acc.pop()

    rec(n, 0, [])
    return tuple(sorted(set(out), key=lambda b: b))


@lru_cache(maxsize=None)
def fermion_words(total: Q) -> tuple:
    """Strictly decreasing positive half-integer words summing to ``total``."""
    out = []

    def rec(rem, maxr, acc):
        if rem == 0:
            out.append(tuple(acc))
            return
        r = min(maxr, rem)
        # r must be a half-odd-integer
        if (r - HALF).denominator != 1:
            r -= HALF
        while r >= HALF:
            acc.append(r)
            rec(rem - r, r - 1, acc)
            acc.pop()
            r -= 1

    rec(frac(total), frac(total), [])
    return tuple(out)


def sector_points(config: LatticeConfig, sec: Sector, max_weight, charge=None, min_weight=None):
    """Lattice points of ``sec`` with ``lattice_weight <= max_weight``.

    The affine form is indefinite, so a fixed ``charge`` (the delta-coefficient)
    is required there to make the set finite.
    """
    max_weight = frac(max_weight)
    pts = []
    if config.rank == 1:
        n = config.gram[0][0]
        b = config.beta[0] * n  # <beta, alpha>
        t0 = sec.rep[0]
        # weight(t) = n t^2/2 - b t  <= W
        disc = b * b + 2 * n * max_weight
        if disc < 0:
            return []
        root = _sqrt_upper(disc)
        lo = (b - root) / n
        hi = (b + root) / n
        k = ceil(lo - t0) - 1
        while t0 + k <= hi + 1:
            pt = (t0 + k,)
            if config.lattice_weight(pt) <= max_weight:
                pts.append(pt)
            k += 1
    else:
        if charge is None:
            raise ValueError("affine graded components need a fixed delta-charge")
        charge = frac(charge)
        k = (charge - sec.rep[1]) / 3
        if k.denominator != 1:
            return []
        a0 = sec.rep[0] + 3 * k  # a runs over a0 + 6Z at this charge
        # weight = ((a+2)^2 - 4 - d^2)/12
        bound = 12 * max_weight + 4 + charge * charge
        if bound < 0:
            return []
        root = _sqrt_upper(bound)
        j = ceil((-2 - root - a0) / 6)
        while a0 + 6 * j <= -2 + root:
            pt = (a0 + 6 * j, charge)
            if config.lattice_weight(pt) <= max_weight:
                pts.append(pt)
            j += 1
    if min_weight is not None:
        pts = [pt for pt in pts if config.lattice_weight(pt) >= min_weight]
    return sorted(set(pts))


def _sqrt_upper(q: Q) -> Q:
    """A rational upper bound for sqrt(q), q >= 0."""
    num, den = q.numerator, q.denominator
    return Q(isqrt(num * den) + 1, den)


def graded_basis(sec: Sector, weight, charge=None) -> list:
    """Complete, canonically ordered basis of the weight component of ``sec``."""
    config = sec.config
    weight = frac(weight)
    out = []
    for pt in sector_points(config, sec, weight, charge):
        rest = weight - config.lattice_weight(pt)
        if rest < 0:
            continue
        if config.fermions:
            if (2 * rest).denominator != 1:
                continue
            nb = 0
            while nb <= rest:
                nf = rest - nb
                for mono in colored_partitions(nb, config.rank):
                    for fw in fermion_words(nf):
                        out.append(FockBasisVector(mono, pt, fw))
                nb += 1
        else:
            if rest.denominator != 1:
                continue
            for mono in colored_partitions(int(rest), config.rank):
                out.append(FockBasisVector(mono, pt, ()))
    out.sort(key=sort_key)
    return out


def component_weights(sec: Sector, max_weight, charge=None) -> list:
    """All weights ``<= max_weight`` at which ``sec`` has a nonzero component."""
    config = sec.config
    step = HALF if config.fermions else ONE
    ws = set()
    for pt in sector_points(config, sec, max_weight, charge):
        w = config.lattice_weight(pt)
        while w <= max_weight:
            ws.add(w)
            w += step
    return sorted(ws)


def basis_up_to(sec: Sector, max_weight, charge=None) -> list:
    out = []
    for w in component_weights(sec, max_weight, charge):
        out.extend(graded_basis(sec, w, charge))
    return out


# -- elementary constructors -------------------------------------------------------

def vacuum(config: LatticeConfig) -> FockElement:
    return FockElement.basis(FockBasisVector((), (ZERO,) * config.rank, ()))


def exp_state(config: LatticeConfig, point, bosons=(), fermions=(), coeff=ONE) -> FockElement:
    return FockElement.basis(basis_vector(point, bosons, fermions), coeff)


def insert_boson(bosons: tuple, g: int, n: int) -> tuple:
    lst = list(bosons)
    insort(lst, (g, n))
    return tuple(lst)


def remove_boson(bosons: tuple, g: int, n: int) -> tuple:
    lst = list(bosons)
    lst.remove((g, n))
    return tuple(lst)


def boson_counts(bosons: tuple) -> Counter:
    return Counter(bosons)
