"""Exact linear algebra over Q: sparse echelon spans, rank, kernel, Jordan data."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import IrrationalEigenvalue
from .rational import Q

ZERO = Q(0)


class SpanBasis:
    """Incrementally maintained reduced echelon basis of sparse vectors.

    Vectors are dicts ``key -> Q``; pivots are chosen by a fixed total
    order on keys (``order``), so results are deterministic.
    """

    def __init__(self, order=None):
        self.order = order or (lambda k: k)
        self.rows = {}  # pivot key -> row (pivot coefficient 1)

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec) -> dict:
        v = {k: c for k, c in dict(vec).items() if c}
        changed = True
        while changed:
            changed = False
            for k in [k for k in v if k in self.rows]:
                c = v.get(k)
                if not c:
                    continue
                for k2, c2 in self.rows[k].items():
                    s = v.get(k2, ZERO) - c * c2
                    if s:
                        v[k2] = s
                    else:
                        v.pop(k2, None)
                changed = True
        return v

    def add(self, vec) -> dict | None:
        """Insert ``vec``; return its nonzero reduction, or ``None`` if dependent."""
        v = self.reduce(vec)
        if not v:
            return None
        piv = min(v, key=self.order)
        inv = 1 / v[piv]
        v = {k: c * inv for k, c in v.items()}
        # keep other rows reduced with respect to the new pivot
        for k, row in self.rows.items():
            c = row.get(piv)
            if c:
                for k2, c2 in v.items():
                    s = row.get(k2, ZERO) - c * c2
                    if s:
                        row[k2] = s
                    else:
                        row.pop(k2, None)
        self.rows[piv] = v
        return v

    def contains(self, vec) -> bool:
        return not self.reduce(vec)

    def vectors(self):
        return [self.rows[k] for k in sorted(self.rows, key=self.order)]


def _row_echelon(rows):
    """Row-reduce a dense matrix (list of lists); return (reduced rows, pivot columns)."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for col in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][col]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = 1 / m[r][col]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows) -> int:
    return len(_row_echelon(rows)[1])


def kernel(rows, ncols=None) -> list:
    """Basis of ``{x : M x = 0}`` for a dense matrix given by rows."""
    if not rows:
        n = ncols or 0
        return [[Q(int(i == j)) for i in range(n)] for j in range(n)]
    red, piv = _row_echelon(rows)
    n = len(rows[0])
    free = [c for c in range(n) if c not in piv]
    out = []
    for f in free:
        x = [ZERO] * n
        x[f] = Q(1)
        for r, pc in enumerate(piv):
            x[pc] = -red[r][f]
        out.append(x)
    return out


def matmul(a, b):
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    bt = list(zip(*b)) if b else []
    return [[sum((a[i][t] * bt[j][t] for t in range(k) if a[i][t]), ZERO) for j in range(m)] for i in range(n)]


def identity(n):
    return [[Q(int(i == j)) for j in range(n)] for i in range(n)]


def shift(m, lam):
    return [[x - (lam if i == j else 0) for j, x in enumerate(row)] for i, row in enumerate(m)]


@dataclass
class JordanData:
    """Eigenvalue -> sorted (descending) Jordan block sizes."""

    blocks: dict

    def max_block(self):
        return max((max(v) for v in self.blocks.values() if v), default=0)

    def logarithmic(self):
        return self.max_block() > 1

    def to_json(self):
        from .lattice import fmt_q

        return {fmt_q(k): list(v) for k, v in sorted(self.blocks.items())}


def eigenvalues(m) -> dict:
    """Rational eigenvalues with algebraic multiplicity (sympy charpoly)."""
    import sympy

    n = len(m)
    if n == 0:
        return {}
    M = sympy.Matrix(n, n, [sympy.Rational(int(x.numerator), int(x.denominator)) for row in m for x in row])
    lam = sympy.Symbol("lam")
    poly = M.charpoly(lam)
    _, factors = sympy.factor_list(poly.as_expr(), lam)
    out = {}
    for fac, mult in factors:
        p = sympy.Poly(fac, lam)
        if p.degree() != 1:
            raise IrrationalEigenvalue(str(fac))
        a, b = p.all_coeffs()
        root = -sympy.Rational(b) / sympy.Rational(a)
        out[Q(int(root.p), int(root.q))] = out.get(Q(int(root.p), int(root.q)), 0) + mult
    return out


def jordan_blocks(m, eigs=None) -> JordanData:
    """Jordan block sizes of a square rational matrix from ranks of ``(M - lam)^k``."""
    n = len(m)
    if eigs is None:
        eigs = eigenvalues(m)
    blocks = {}
    for lam, mult in sorted(eigs.items()):
        a = shift(m, lam)
        ranks = [n]
        power = identity(n)
        while True:
            power = matmul(power, a)
            ranks.append(rank(power))
            if n - ranks[-1] == mult or ranks[-1] == ranks[-2]:
                break
        # number of blocks of size >= k is ranks[k-1] - ranks[k]
        ge = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))] + [0]
        sizes = []
        for k in range(1, len(ge)):
            cnt = ge[k - 1] - ge[k]
            sizes.extend([k] * cnt)
        blocks[lam] = sorted(sizes, reverse=True)
    return JordanData(blocks)


def operator_matrix(func, basis_in, basis_out=None):
    """Dense matrix (rows indexed by ``basis_out``) of a linear map on basis vectors.

    ``func(b)`` returns a FockElement or dict.  Raises ``ValueError`` if the image
    leaves ``span(basis_out)``.
    """
    basis_out = basis_in if basis_out is None else basis_out
    idx = {b: i for i, b in enumerate(basis_out)}
    m = [[ZERO] * len(basis_in) for _ in basis_out]
    for j, b in enumerate(basis_in):
        img = func(b)
        for k, c in img.items():
            i = idx.get(k)
            if i is None:
                raise ValueError(f"image of basis vector {j} leaves the target span")
            m[i][j] = c
    return m
