"""Sparse exact Gaussian elimination over the session cyclotomic field.

Vectors and matrix rows are dicts mapping a column key (any sortable
hashable) to a nonzero Scalar.
"""
from __future__ import annotations

from .scalars import Scalar, get_field


def add_scaled(target: dict, src: dict, c) -> None:
    """target += c * src, dropping zeros."""
    for k, v in src.items():
        w = target.get(k)
        nv = v * c if w is None else w + v * c
        if nv:
            target[k] = nv
        elif w is not None:
            del target[k]


def scale(vec: dict, c) -> dict:
    if not c:
        return {}
    return {k: v * c for k, v in vec.items()}


def clean(vec: dict) -> dict:
    return {k: v for k, v in vec.items() if v}


class Echelon:
    """Incrementally maintained reduced row-echelon basis of a row space."""

    def __init__(self):
        self.pivots: dict = {}  # pivot column -> row with coefficient 1 at that column

    def reduce(self, row: dict) -> dict:
        row = dict(row)
        pivots = self.pivots
        while True:
            hit = [k for k in row if k in pivots]
            if not hit:
                return row
            for k in sorted(hit):
                c = row.get(k)
                if c:
                    add_scaled(row, pivots[k], -c)

    def add(self, row: dict) -> bool:
        """Insert a row; return True when it enlarged the span."""
        r = self.reduce(row)
        if not r:
            return False
        p = min(r)
        inv = r[p].inv()
        r = {k: v * inv for k, v in r.items()}
        for q, prow in self.pivots.items():
            c = prow.get(p)
            if c:
                add_scaled(prow, r, -c)
        self.pivots[p] = r
        return True

    def contains(self, row: dict) -> bool:
        return not self.reduce(row)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def basis(self) -> list:
        return [self.pivots[p] for p in sorted(self.pivots)]


def rank(rows) -> int:
    ech = Echelon()
    for r in rows:
        ech.add(r)
    return ech.rank


def span_basis(vectors) -> list:
    ech = Echelon()
    for v in vectors:
        ech.add(v)
    return ech.basis()


def nullspace(rows, columns) -> list:
    """Basis of {v : row . v = 0 for every row}, over the given column keys."""
    ech = Echelon()
    for r in rows:
        ech.add(r)
    piv = ech.pivots
    basis = []
    for f in columns:
        if f in piv:
            continue
        v = {f: 1}
        for p, prow in piv.items():
            c = prow.get(f)
            if c:
                v[p] = -c
        basis.append(_normalize_ints(v))
    return basis


def _normalize_ints(v: dict) -> dict:
    F = get_field()
    return {k: (x if isinstance(x, Scalar) else F.from_rational(x)) for k, x in v.items()}


class _Last:
    """Column key that sorts after every other key."""

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __repr__(self):
        return "<rhs>"


_LAST = _Last()


def solve(rows, rhs) -> dict | None:
    """One solution x of rows[i] . x = rhs[i], or None when inconsistent."""
    ech = Echelon()
    aug = _LAST
    for r, b in zip(rows, rhs):
        row = dict(r)
        if b:
            row[aug] = b
        ech.add(row)
    if aug in ech.pivots:
        return None
    x = {}
    for p, prow in ech.pivots.items():
        b = prow.get(aug)
        if b:
            x[p] = b
    return _normalize_ints(x)


def matrix_rank_dense(mat: list) -> int:
    return rank({j: v for j, v in enumerate(row) if v} for row in mat)
