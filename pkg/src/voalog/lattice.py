"""Lattice data: generators, rational Gram form, cosets and the cocycle sign.

Three configurations are supported:

* ``triplet(p, p')`` -- rank one, ``<alpha, alpha> = 2pp'`` (covers W(p) and W(p,p')),
* ``super_ns(p, p')`` -- rank one, ``<alpha, alpha> = pp'``, tensored with a free fermion,
* ``affine()`` -- rank two on ``gamma, delta`` with ``<gamma,gamma> = -<delta,delta> = 1/6``.

Vectors are stored as tuples of exact rational coefficients over
the named generators.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import floor, gcd
from typing import Sequence

from .errors import InvalidParameters, UnregisteredVector
from .rational import QTYPE, Q


def frac(x) -> Q:
    if isinstance(x, QTYPE):
        return x
    if isinstance(x, str):
        return Q(x.strip())
    return Q(x)


def fmt_q(x) -> str:
    """Canonical ``num/den`` form used by every serializer."""
    x = frac(x)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class LatticeVector:
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(frac(c) for c in self.coeffs))

    def __add__(self, other):
        return LatticeVector(tuple(a + b for a, b in zip(self.coeffs, _coeffs(other))))

    def __sub__(self, other):
        return LatticeVector(tuple(a - b for a, b in zip(self.coeffs, _coeffs(other))))

    def __neg__(self):
        return LatticeVector(tuple(-a for a in self.coeffs))

    def __mul__(self, k):
        k = frac(k)
        return LatticeVector(tuple(k * a for a in self.coeffs))

    __rmul__ = __mul__

    def __truediv__(self, k):
        return self * (1 / frac(k))

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def is_zero(self):
        return not any(self.coeffs)


def _coeffs(v):
    return v.coeffs if isinstance(v, LatticeVector) else tuple(v)


def _inverse2(m):
    """Inverse of a 1x1 or 2x2 rational matrix given as rows."""
    if len(m) == 1:
        return ((1 / m[0][0],),)
    (a, b), (c, d) = m
    det = a * d - b * c
    return ((d / det, -b / det), (-c / det, a / det))


@dataclass(frozen=True)
class LatticeConfig:
    """One paper case: Gram form, base lattice, conformal data and cocycle rule.

    ``beta`` is the vector with ``omega = 1/2 sum a_i(-1)a^i(-1) + beta(-2)``,
    so that ``wt(e^lam) = <lam,lam>/2 - <beta,lam>``.
    """

    case_tag: str
    p: int | None
    pprime: int | None
    names: tuple
    gram: tuple
    base_basis: tuple
    beta: tuple
    fermions: bool = False
    _base_inv: tuple = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        gram = tuple(tuple(frac(x) for x in row) for row in self.gram)
        object.__setattr__(self, "gram", gram)
        for i in range(len(gram)):
            for j in range(len(gram)):
                if gram[i][j] != gram[j][i]:
                    raise InvalidParameters("Gram matrix must be symmetric")
        basis = tuple(tuple(frac(x) for x in b) for b in self.base_basis)
        object.__setattr__(self, "base_basis", basis)
        object.__setattr__(self, "beta", tuple(frac(x) for x in self.beta))
        # columns of the base basis matrix are the basis vectors
        cols = tuple(tuple(basis[j][i] for j in range(len(basis))) for i in range(len(basis)))
        object.__setattr__(self, "_base_inv", _inverse2(cols))

    @property
    def rank(self):
        return len(self.names)

    @property
    def label(self):
        if self.case_tag == "affine":
            return "affine"
        return f"{self.case_tag}({self.p},{self.pprime})"

    def vector(self, *coeffs) -> LatticeVector:
        if len(coeffs) != self.rank:
            raise ValueError(f"expected {self.rank} coefficients")
        return LatticeVector(coeffs)

    def generator(self, i) -> LatticeVector:
        return LatticeVector(tuple(1 if j == i else 0 for j in range(self.rank)))

    # -- bilinear form -------------------------------------------------
    def pairing(self, v1, v2) -> Q:
        a, b = _coeffs(v1), _coeffs(v2)
        g = self.gram
        if self.rank == 1:
            return a[0] * b[0] * g[0][0]
        return sum(
            (a[i] * g[i][j] * b[j] for i in range(self.rank) for j in range(self.rank) if a[i] and b[j]),
            Q(0),
        )

    def norm(self, v) -> Q:
        return self.pairing(v, v)

    # -- conformal data ------------------------------------------------
    def lattice_weight(self, point) -> Q:
        """Conformal weight of the pure exponential ``e^point``."""
        return self.pairing(point, point) / 2 - self.pairing(self.beta, point)

    @property
    def central_charge(self) -> Q:
        c = self.rank - 12 * self.norm(self.beta)
        if self.fermions:
            c += Q(1, 2)
        return c

    def parity(self, point) -> int:
        """Parity of ``e^point``; only the super case has odd exponentials."""
        if not self.fermions:
            return 0
        w2 = 2 * self.lattice_weight(point)
        if w2.denominator != 1:
            raise UnregisteredVector(f"no parity for e^{tuple(map(str, _coeffs(point)))}")
        return int(w2) % 2

    # -- cosets ----------------------------------------------------------
    def base_coords(self, v) -> tuple:
        c = _coeffs(v)
        inv = self._base_inv
        return tuple(sum((inv[i][j] * c[j] for j in range(self.rank)), Q(0)) for i in range(self.rank))

    def in_base_lattice(self, v) -> bool:
        return all(x.denominator == 1 for x in self.base_coords(v))

    def coset_rep(self, v) -> tuple:
        """Canonical representative of ``v`` modulo the base lattice."""
        coords = [x - floor(x) for x in self.base_coords(v)]
        basis = self.base_basis
        return tuple(
            sum((coords[j] * basis[j][i] for j in range(self.rank)), Q(0)) for i in range(self.rank)
        )

    # -- registered group and cocycle -------------------------------------
    def check_registered(self, v):
        c = _coeffs(v)
        if self.case_tag == "affine":
            ok = all(x.denominator == 1 for x in c)
        elif self.case_tag == "triplet":
            ok = (c[0] * 2 * self.p * self.pprime).denominator == 1
        else:
            ok = (c[0] * self.p * self.pprime).denominator == 1
        if not ok:
            raise UnregisteredVector(f"{tuple(map(str, c))} is outside the registered group of {self.label}")

    def cocycle_sign(self, lam, mu) -> int:
        """Sign ``eps(lam, mu)`` multiplying ``e^lam_r e^mu``.

        Rank one: identically ``+1``.  Affine: ``(-1)^{(x+y)(lam) * x(mu)}``
        where ``(x, y)`` are coordinates in the basis ``(2gamma, 3gamma-3delta)``
        of the acting group ``D + Z 2gamma`` after subtracting a fixed coset
        section (see ``AFFINE_SECTION``).  On ``D`` this is the standard rule:
        ``eps(b1,b2) = +1``, ``eps(b2,b1) = (-1)^{<b2,b1>} = -1`` for the ordered
        basis ``b1 = 3gamma+3delta``, ``b2 = 3gamma-3delta``.
        """
        self.check_registered(lam)
        self.check_registered(mu)
        if self.case_tag != "affine":
            return 1
        return _affine_sign(tuple(_coeffs(lam)), tuple(_coeffs(mu)))


# Coset representatives of Z gamma + Z delta modulo A = D + Z 2gamma,
# keyed by (b mod 3, (a+b) mod 2) for the vector a gamma + b delta.
AFFINE_SECTION = {
    (0, 0): (0, 0),
    (0, 1): (1, 0),
    (1, 0): (-3, 1),
    (1, 1): (-2, 1),
    (2, 0): (3, -1),
    (2, 1): (2, -1),
}


def _acting_part(v):
    a, b = int(v[0]), int(v[1])
    ra, rb = AFFINE_SECTION[(b % 3, (a + b) % 2)]
    a, b = a - ra, b - rb
    # coordinates over (2gamma, 3gamma - 3delta)
    y = -b // 3
    x = (a + b) // 2
    return x, y


def _affine_sign(lam, mu):
    xl, yl = _acting_part(lam)
    xm, _ = _acting_part(mu)
    return -1 if ((xl + yl) * xm) % 2 else 1


def triplet(p: int, pprime: int = 1) -> LatticeConfig:
    """``L = Z alpha`` with ``<alpha, alpha> = 2pp'``."""
    if not (isinstance(p, int) and isinstance(pprime, int)) or p < 2 or pprime < 1 or p == pprime:
        raise InvalidParameters(f"need integers p >= 2, p' >= 1, p != p'; got ({p}, {pprime})")
    return LatticeConfig(
        case_tag="triplet",
        p=p,
        pprime=pprime,
        names=("alpha",),
        gram=((2 * p * pprime,),),
        base_basis=((1,),),
        beta=(Q(p - pprime, 2 * p * pprime),),
    )


def super_ns(p: int, pprime: int) -> LatticeConfig:
    """``L = Z alpha`` with ``<alpha, alpha> = pp'``, tensored with a free fermion."""
    if (
        not (isinstance(p, int) and isinstance(pprime, int))
        or p < 2
        or pprime < 1
        or p <= pprime
        or (p - pprime) % 2
        or gcd(p, (p - pprime) // 2) != 1
    ):
        raise InvalidParameters(f"need p > p' >= 1, p - p' even, gcd(p, (p-p')/2) = 1; got ({p}, {pprime})")
    return LatticeConfig(
        case_tag="super",
        p=p,
        pprime=pprime,
        names=("alpha",),
        gram=((p * pprime,),),
        base_basis=((1,),),
        beta=(Q(p - pprime, 2 * p * pprime),),
        fermions=True,
    )


def affine() -> LatticeConfig:
    """``Z gamma + Z delta`` with ``<gamma,gamma> = 1/6 = -<delta,delta>``; base lattice ``D``."""
    return LatticeConfig(
        case_tag="affine",
        p=None,
        pprime=None,
        names=("gamma", "delta"),
        gram=((Q(1, 6), 0), (0, Q(-1, 6))),
        base_basis=((3, 3), (3, -3)),
        beta=(-2, 0),
    )


@dataclass(frozen=True)
class Sector:
    """A coset ``rep + base lattice``; equality is coset equality."""

    config: LatticeConfig
    rep: tuple

    def __post_init__(self):
        object.__setattr__(self, "rep", self.config.coset_rep(self.rep))

    def contains(self, point) -> bool:
        return self.config.in_base_lattice(tuple(a - b for a, b in zip(_coeffs(point), self.rep)))

    def shifted(self, v) -> "Sector":
        return Sector(self.config, tuple(a + b for a, b in zip(self.rep, _coeffs(v))))


def sector(config: LatticeConfig, *coeffs: Sequence) -> Sector:
    return Sector(config, tuple(frac(c) for c in coeffs))
