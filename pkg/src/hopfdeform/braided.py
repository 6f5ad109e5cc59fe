"""Diagonal braided vector spaces and the braid group action on tensor powers.

Words are tuples of 0-based generator indices; a TensorElement is a dict
word -> Scalar.  Generator indices in the public braid API (sigma_i) are
1-based to match the usual braid notation.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import combinations, permutations, product
from math import gcd, lcm

from .errors import BudgetError, InputError
from .groups import FiniteAbelianGroup
from .linalg import add_scaled, nullspace, rank
from .scalars import Scalar, get_field, set_cyclotomic_order

DEFAULT_BUDGET = 20000
_budget_override: int | None = None


def size_budget() -> int:
    if _budget_override is not None:
        return _budget_override
    env = os.environ.get("HOPF_DEFORM_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError:
            raise InputError(f"HOPF_DEFORM_BUDGET must be an integer, got {env!r}")
    return DEFAULT_BUDGET


def set_size_budget(n: int | None) -> None:
    global _budget_override
    _budget_override = n


def check_budget(count: int, what: str = "basis words") -> None:
    limit = size_budget()
    if count > limit:
        raise BudgetError(f"{count} {what} exceeds the size budget {limit}")


@dataclass(frozen=True)
class DiagonalDatum:
    """Group, marked elements g_i and characters chi_i of a diagonal braiding.

    q_ij = chi_j(g_i).  With ``require_qls`` the quantum linear space
    condition chi_i(g_j) chi_j(g_i) = 1 (i != j) is enforced.
    """

    group: FiniteAbelianGroup
    g: tuple
    chi: tuple
    require_qls: bool = True
    field_order: int = 1  # extra roots of unity the session field must contain
    qexp: tuple = field(init=False, repr=False)
    N: tuple = field(init=False)

    def __post_init__(self):
        G = self.group
        g = tuple(G.element(x) for x in self.g)
        chi = tuple(G.character(x) for x in self.chi)
        if len(g) != len(chi) or not g:
            raise InputError("need the same positive number of group elements and characters")
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "chi", chi)
        e0 = G.exponent
        qexp = tuple(tuple(G.pairing_exponent(chi[j], g[i], e0) for j in range(len(g)))
                     for i in range(len(g)))
        object.__setattr__(self, "qexp", qexp)
        N = tuple(e0 // gcd(e0, qexp[i][i]) for i in range(len(g)))
        for i, n in enumerate(N):
            if n <= 1:
                raise InputError(f"q_{i + 1}{i + 1} = chi_{i + 1}(g_{i + 1}) = 1; truncation order must exceed 1")
        object.__setattr__(self, "N", N)
        if self.require_qls:
            for i, j in combinations(range(len(g)), 2):
                if (qexp[i][j] + qexp[j][i]) % e0:
                    raise InputError(
                        f"chi_{i + 1}(g_{j + 1}) chi_{j + 1}(g_{i + 1}) != 1: pair ({i + 1},{j + 1}) "
                        "violates the quantum linear space condition")

    # basic invariants -------------------------------------------------
    @property
    def theta(self) -> int:
        return len(self.g)

    @property
    def base_order(self) -> int:
        """Exponent of the group; q-exponents are stored modulo it."""
        return self.group.exponent

    @property
    def cyclotomic_order(self) -> int:
        return lcm(self.group.exponent, self.field_order, *self.N)

    def activate(self):
        return set_cyclotomic_order(self.cyclotomic_order)

    @property
    def linkable(self) -> tuple:
        e0 = self.base_order
        return tuple(tuple(i != j and (self.qexp[i][j] + self.qexp[j][i]) % e0 == 0
                           for j in range(self.theta)) for i in range(self.theta))

    def root(self, k: int) -> Scalar:
        """zeta_{e0}^k in the session field, e0 the group exponent."""
        F = get_field()
        self.group.check_order(F.E)
        return F.root(k * (F.E // self.base_order))

    def q(self, i: int, j: int) -> Scalar:
        return self.root(self.qexp[i][j])

    def char_exp(self, chi, g) -> int:
        return self.group.pairing_exponent(chi, g, self.base_order)

    def weight_exp(self, exps, g) -> int:
        """k with prod_i chi_i^{exps_i}(g) = zeta_{e0}^k."""
        return sum(a * self.char_exp(c, g) for a, c in zip(exps, self.chi)) % self.base_order

    def weight_character(self, exps) -> tuple:
        G = self.group
        out = G.identity
        for a, c in zip(exps, self.chi):
            out = G.mul(out, G.pow(c, a))
        return out

    def degree_element(self, exps) -> tuple:
        G = self.group
        out = G.identity
        for a, gi in zip(exps, self.g):
            out = G.mul(out, G.pow(gi, a))
        return out

    def pbw_exponents(self) -> list:
        vecs = list(product(*(range(n) for n in self.N)))
        return sorted(vecs, key=lambda a: (sum(a), a))

    def pbw_count(self, n: int) -> int:
        return sum(1 for a in product(*(range(m) for m in self.N)) if sum(a) == n)

    def relabel(self, perm) -> DiagonalDatum:
        """Datum with generator k of the result equal to generator perm[k] of self."""
        return DiagonalDatum(self.group, tuple(self.g[p] for p in perm),
                             tuple(self.chi[p] for p in perm), self.require_qls, self.field_order)

    def describe(self) -> dict:
        return {"group": list(self.group.orders),
                "generators": [{"g": list(g), "chi": list(c)} for g, c in zip(self.g, self.chi)],
                "N": list(self.N), "cyclotomic_order": self.cyclotomic_order}


def braiding_matrix(d: DiagonalDatum) -> list:
    return [[d.q(i, j) for j in range(d.theta)] for i in range(d.theta)]


# ---------------------------------------------------------------- braid action


def _check_word(d: DiagonalDatum, word) -> None:
    if any(not 0 <= x < d.theta for x in word):
        raise InputError(f"word {word} uses a letter outside 0..{d.theta - 1}")


def braid_generator_action(d: DiagonalDatum, i: int, t: dict) -> dict:
    """Apply 1^{i-1} (x) c (x) 1^{n-i-1} to a homogeneous tensor element."""
    out: dict = {}
    for w, c in t.items():
        n = len(w)
        if not 1 <= i <= n - 1:
            raise InputError(f"braid generator sigma_{i} undefined in degree {n}")
        a, b = w[i - 1], w[i]
        nw = w[:i - 1] + (b, a) + w[i + 1:]
        add_scaled(out, {nw: c}, d.q(a, b))
    return out


def reduced_word(perm, convention: str = "bubble") -> list:
    """1-based generator sequence (applied left to right) realising perm.

    perm[a] is the final position of the letter starting at position a.
    """
    labels = list(perm)
    seq = []
    n = len(labels)
    if convention == "bubble":
        changed = True
        while changed:
            changed = False
            for p in range(n - 1):
                if labels[p] > labels[p + 1]:
                    labels[p], labels[p + 1] = labels[p + 1], labels[p]
                    seq.append(p + 1)
                    changed = True
    elif convention == "selection":
        for t in range(n):
            c = labels.index(t)
            for p in range(c - 1, t - 1, -1):
                labels[p], labels[p + 1] = labels[p + 1], labels[p]
                seq.append(p + 1)
    else:
        raise InputError(f"unknown reduced-word convention {convention!r}")
    return seq


def _apply_sequence(d: DiagonalDatum, seq, word) -> tuple:
    w = list(word)
    e = 0
    for s in seq:
        a, b = w[s - 1], w[s]
        e += d.qexp[a][b]
        w[s - 1], w[s] = b, a
    return tuple(w), e % d.base_order


def matsumoto_operator(d: DiagonalDatum, perms, n: int, convention: str = "bubble") -> dict:
    """Sum over perms of the lifted braid operators, as word -> TensorElement."""
    check_budget(d.theta ** n)
    seqs = [reduced_word(p, convention) for p in perms]
    op = {}
    for word in product(range(d.theta), repeat=n):
        acc: dict = {}
        for seq in seqs:
            nw, e = _apply_sequence(d, seq, word)
            acc.setdefault(nw, []).append(e)
        img = {}
        for nw, es in acc.items():
            total = sum((d.root(e) for e in es[1:]), d.root(es[0]))
            if total:
                img[nw] = total
        op[word] = img
    return op


def quantum_symmetrizer(d: DiagonalDatum, n: int, convention: str = "bubble") -> dict:
    """S_n = sum over all permutations of the Matsumoto lift, as word -> TensorElement."""
    return matsumoto_operator(d, list(permutations(range(n))), n, convention)


def shuffles(i: int, j: int) -> list:
    """Position maps increasing on the first i and on the last j positions."""
    n = i + j
    out = []
    for left in combinations(range(n), i):
        right = [p for p in range(n) if p not in left]
        out.append(tuple(left) + tuple(right))
    return out


def inverse_perm(p) -> tuple:
    inv = [0] * len(p)
    for a, b in enumerate(p):
        inv[b] = a
    return tuple(inv)


def shuffle_piece(d: DiagonalDatum, i: int, j: int, convention: str = "bubble") -> dict:
    """S_{i,j}: sum of lifted (i,j)-shuffles; S_{i,j} (S_i (x) S_j) = S_{i+j}."""
    return matsumoto_operator(d, shuffles(i, j), i + j, convention)


def apply_operator(op: dict, t: dict) -> dict:
    out: dict = {}
    for w, c in t.items():
        add_scaled(out, op[w], c)
    return out


def compose(op1: dict, op2: dict) -> dict:
    """op1 after op2."""
    return {w: apply_operator(op1, img) for w, img in op2.items()}


def tensor_operator(op1: dict, op2: dict, i: int) -> dict:
    """op1 (x) op2 on words split after position i."""
    out = {}
    for w1, img1 in op1.items():
        for w2, img2 in op2.items():
            acc: dict = {}
            for u, a in img1.items():
                for v, b in img2.items():
                    add_scaled(acc, {u + v: a}, b)
            out[w1 + w2] = acc
    return out


def identity_operator(d: DiagonalDatum, n: int) -> dict:
    F = get_field()
    return {w: {w: F.one} for w in product(range(d.theta), repeat=n)}


# ---------------------------------------------------------------- Nichols data


def _content(word) -> tuple:
    return tuple(sorted(word))


def symmetrizer_blocks(d: DiagonalDatum, n: int) -> dict:
    """Split S_n by letter content (S_n permutes letters, so it is block diagonal)."""
    op = quantum_symmetrizer(d, n)
    blocks: dict = {}
    for w, img in op.items():
        blocks.setdefault(_content(w), {})[w] = img
    return blocks


def _kernel_of(op: dict) -> list:
    cols = sorted(op)
    rows: dict = {}
    for w, img in op.items():
        for w2, c in img.items():
            rows.setdefault(w2, {})[w] = c
    return nullspace(list(rows.values()), cols)


def nichols_relations(d: DiagonalDatum, n: int) -> list:
    """Basis of ker S_n on V^{(x)n}, computed block by block."""
    out = []
    for _, op in sorted(symmetrizer_blocks(d, n).items()):
        out.extend(_kernel_of(op))
    return out


def symmetrizer_image_dim(d: DiagonalDatum, n: int) -> int:
    total = 0
    for _, op in symmetrizer_blocks(d, n).items():
        rows: dict = {}
        for w, img in op.items():
            for w2, c in img.items():
                rows.setdefault(w2, {})[w] = c
        total += rank(rows.values())
    return total


# ---------------------------------------------------------------- brackets and coproduct


def word_braiding_exp(d: DiagonalDatum, u, v) -> int:
    """c(u (x) v) = zeta^e v (x) u for words u, v; returns e."""
    return sum(d.qexp[a][b] for a in u for b in v) % d.base_order


def braided_commutator(d: DiagonalDatum, a: dict, b: dict) -> dict:
    """[a, b]_c = ab - m c(a (x) b) in the tensor algebra."""
    out: dict = {}
    for u, x in a.items():
        for v, y in b.items():
            add_scaled(out, {u + v: x}, y)
            add_scaled(out, {v + u: x}, -(y * d.root(word_braiding_exp(d, u, v))))
    return out


def letter(d: DiagonalDatum, i: int) -> dict:
    return {(i,): get_field().one}


def ad_c(d: DiagonalDatum, i: int, y: dict, times: int = 1) -> dict:
    for _ in range(times):
        y = braided_commutator(d, letter(d, i), y)
    return y


def shuffle_coproduct(d: DiagonalDatum, t: dict) -> dict:
    """Coproduct of the free braided Hopf algebra T(V): {(u, v): coeff}.

    The (i, j) component is the sum of the lifted inverse (i, j)-shuffles.
    """
    out: dict = {}
    cache: dict = {}
    for w, c in t.items():
        n = len(w)
        check_budget(d.theta ** n)
        for i in range(n + 1):
            key = (n, i)
            if key not in cache:
                cache[key] = [reduced_word(inverse_perm(s)) for s in shuffles(i, n - i)]
            for seq in cache[key]:
                nw, e = _apply_sequence(d, seq, w)
                add_scaled(out, {(nw[:i], nw[i:]): c}, d.root(e))
    return out


def tensor_coproduct_apply(d: DiagonalDatum, T: dict, side: str) -> dict:
    """(Delta (x) 1) or (1 (x) Delta) on {(u, v): c}; returns {(u, v, w): c}."""
    out: dict = {}
    for (u, v), c in T.items():
        part = shuffle_coproduct(d, {u if side == "left" else v: c})
        for (a, b), e in part.items():
            key = (a, b, v) if side == "left" else (u, a, b)
            add_scaled(out, {key: e}, 1)
    return out
