"""Submodule closures, Jordan reports and intersection/quotient tables."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from math import ceil

from .errors import CutoffTooSmall
from .fock import FockElement, sort_key
from .lattice import fmt_q, frac
from .linalg import JordanData, SpanBasis, _row_echelon, jordan_blocks, rank
from .rational import Q

ZERO = Q(0)


@dataclass(frozen=True)
class Letter:
    """One alphabet entry: a homogeneous field of weight ``weight`` whose modes are
    given by ``mode(n, w)``; ``n`` runs over ``n0 + Z``."""

    name: str
    weight: Q
    mode: object = field(compare=False)
    n0: Q = Q(0)


@dataclass
class SubmoduleSpan:
    gens: list
    cutoff: Q
    window: tuple  # (min weight, max weight) used internally
    spans: dict  # weight -> SpanBasis
    grading: object = field(repr=False, default=None)

    def dim(self, key) -> int:
        s = self.spans.get(_norm_key(key))
        return len(s) if s else 0

    def dims(self) -> dict:
        return {k: len(s) for k, s in sorted(self.spans.items()) if _wt(k) <= self.cutoff and len(s)}

    def keys(self) -> list:
        return [k for k in sorted(self.spans) if _wt(k) <= self.cutoff and len(self.spans[k])]

    def vectors(self, key) -> list:
        s = self.spans.get(_norm_key(key))
        return [FockElement(v) for v in s.vectors()] if s else []

    def contains(self, elem: FockElement) -> bool:
        if not elem:
            return True
        w = self.grading(elem)
        s = self.spans.get(w)
        return bool(s) and s.contains(elem.terms)


def _wt(key):
    return key[0] if isinstance(key, tuple) else key


def _norm_key(key):
    return tuple(frac(x) for x in key) if isinstance(key, tuple) else frac(key)


def generate_submodule(
    gens, alphabet, cutoff, grading, min_weight, margin=2, max_weight=None, accept=None
) -> SubmoduleSpan:
    """Breadth-first fixed point of ``span(gens)`` under the alphabet modes.

    ``grading(elem)`` returns the grading key of a homogeneous element: a weight,
    or a tuple whose first entry is the weight (further entries are extra
    charges).  The closure is computed inside the window
    ``[min_weight, cutoff + margin]`` (and ``accept(key)`` when given) and
    results are reported up to ``cutoff``.
    """
    cutoff = frac(cutoff)
    top = frac(max_weight) if max_weight is not None else cutoff + margin
    spans: dict = {}
    queue = deque()
    for g in gens:
        if not g:
            continue
        kg = grading(g)
        if _wt(kg) > cutoff:
            raise CutoffTooSmall(f"generator weight {_wt(kg)} exceeds cutoff {cutoff}")
        _push(spans, queue, kg, g.terms)
    while queue:
        key, vec = queue.popleft()
        w = _wt(key)
        elem = FockElement(vec)
        for letter in alphabet:
            # a_n shifts weight by wt(a) - n - 1
            lo = letter.weight - 1 - (top - w)
            hi = letter.weight - 1 + (w - min_weight)
            n = letter.n0 + ceil(lo - letter.n0)
            while n <= hi:
                img = letter.mode(n, elem)
                if img:
                    k2 = grading(img)
                    if accept is None or accept(k2):
                        _push(spans, queue, k2, img.terms)
                n += 1
    return SubmoduleSpan(list(gens), cutoff, (frac(min_weight), top), spans, grading)


def _push(spans, queue, w, vec):
    s = spans.get(w)
    if s is None:
        s = spans[w] = SpanBasis(order=sort_key)
    red = s.add(vec)
    if red is not None:
        queue.append((w, dict(red)))


def coordinates(vectors: list, elem: FockElement):
    """Coordinates of ``elem`` in the linearly independent list ``vectors`` (or ``None``)."""
    keys = sorted({k for v in vectors for k in v.terms} | set(elem.terms), key=sort_key)
    n = len(vectors)
    rows = [[v.coeff(k) for v in vectors] + [elem.coeff(k)] for k in keys]
    red, piv = _row_echelon(rows)
    if n in piv:
        return None
    x = [ZERO] * n
    for r, pc in enumerate(piv):
        x[pc] = red[r][n]
    return x


def restricted_matrix(func, vectors: list):
    """Matrix of ``func`` on ``span(vectors)`` (must be invariant)."""
    cols = []
    for v in vectors:
        c = coordinates(vectors, func(v))
        if c is None:
            raise ValueError("span is not invariant under the operator")
        cols.append(c)
    n = len(vectors)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def complement(sub: list, big: list) -> list:
    """Vectors of ``big`` extending a basis of ``span(sub)`` to ``span(sub + big)`` (greedy, in order)."""
    sb = SpanBasis(order=sort_key)
    for v in sub:
        sb.add(v.terms)
    out = []
    for v in big:
        if sb.add(v.terms) is not None:
            out.append(v)
    return out


def quotient_matrix(func, sub: list, big: list):
    """Matrix of ``func`` on ``span(big)/span(sub)`` in the basis ``complement(sub, big)``.

    ``sub`` must be linearly independent and both spans invariant.
    """
    comp = complement(sub, big)
    basis = list(sub) + comp
    k = len(sub)
    cols = []
    for v in comp:
        c = coordinates(basis, func(v))
        if c is None:
            raise ValueError("span is not invariant under the operator")
        cols.append(c[k:])
    n = len(comp)
    return [[cols[j][i] for j in range(n)] for i in range(n)], comp


@dataclass
class JordanReport:
    weight: Q
    dim: int
    data: JordanData
    matrix: list

    def to_json(self):
        return {
            "weight": fmt_q(self.weight),
            "dim": self.dim,
            "blocks": self.data.to_json(),
            "matrix": [[fmt_q(x) for x in row] for row in self.matrix],
        }

    @property
    def block_sum(self):
        return sum(sum(v) for v in self.data.blocks.values())


def jordan_structure(func, vectors: list, weight) -> JordanReport:
    m = restricted_matrix(func, vectors)
    data = jordan_blocks(m)
    return JordanReport(frac(weight), len(vectors), data, m)


def span_dims_of(vectors: list) -> int:
    if not vectors:
        return 0
    keys = sorted({k for v in vectors for k in v.terms}, key=sort_key)
    return rank([[v.coeff(k) for k in keys] for v in vectors])


def filtration_probe(spans: dict, weights) -> dict:
    """Per-weight dimensions of each span, pairwise intersections and sums.

    ``spans`` maps a label to ``weight -> list of FockElements``.
    """
    labels = list(spans)
    table = {}
    for w in weights:
        row = {}
        dims = {lab: span_dims_of(spans[lab](w)) for lab in labels}
        row.update({f"dim {lab}": d for lab, d in dims.items()})
        for i, a in enumerate(labels):
            for b in labels[i + 1:]:
                s = span_dims_of(spans[a](w) + spans[b](w))
                row[f"dim {a}+{b}"] = s
                row[f"dim {a}&{b}"] = dims[a] + dims[b] - s
        table[frac(w)] = row
    return table
