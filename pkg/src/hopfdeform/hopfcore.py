"""Finite-dimensional algebras and Hopf algebras as explicit linear-algebra objects.

Basis elements are addressed by integer index (the unit is index 0); elements
are sparse dicts index -> Scalar and elements of H (x) H are dicts
(i, j) -> Scalar.  Structure constants are computed lazily and cached.
"""
from __future__ import annotations

import multiprocessing
import random
from dataclasses import dataclass, field
from itertools import product

from .errors import InputError, PropertyFailure
from .groups import FiniteAbelianGroup
from .linalg import Echelon, add_scaled, nullspace, solve
from .scalars import Scalar, get_field, parse_scalar

FULL_VERIFY_MAX_DIM = 128
DEFAULT_SAMPLES = 10000


def _one():
    return get_field().one


class FiniteAlgebra:
    """Unital associative algebra with basis labels and a product on basis indices."""

    def __init__(self, labels, mul_fn, render=None, name="A"):
        self.labels = list(labels)
        self.index = {lab: i for i, lab in enumerate(self.labels)}
        if len(self.index) != len(self.labels):
            raise InputError("basis labels must be distinct")
        self.dim = len(self.labels)
        self.unit = 0
        self.name = name
        self._mul_fn = mul_fn
        self._render = render or str
        self._mt: dict = {}

    def mul(self, i: int, j: int) -> dict:
        key = (i, j)
        r = self._mt.get(key)
        if r is None:
            r = self._mul_fn(i, j)
            self._mt[key] = r
        return r

    def mul_table(self) -> list:
        return [[self.mul(i, j) for j in range(self.dim)] for i in range(self.dim)]

    def mul_vec(self, a: dict, b: dict) -> dict:
        out: dict = {}
        for i, x in a.items():
            for j, y in b.items():
                add_scaled(out, self.mul(i, j), x * y)
        return out

    def basis_vec(self, i: int) -> dict:
        return {i: _one()}

    def element(self, label) -> dict:
        return self.basis_vec(self.index[label])

    def render_label(self, i: int) -> str:
        return self._render(self.labels[i])

    def render(self, v: dict) -> str:
        if not v:
            return "0"
        parts = []
        for i in sorted(v):
            c = v[i]
            mono = self.render_label(i)
            if c == 1:
                parts.append(mono)
            else:
                parts.append(f"[{c}] {mono}")
        return " + ".join(parts)


class HopfAlgebra(FiniteAlgebra):
    """Finite-dimensional Hopf algebra with explicit structure maps.

    ``degree`` gives the x-degree of each basis element (group elements have
    degree 0); ``group`` and ``group_of`` describe the grouplike layer for
    pointed algebras built on PBW labels (exps, g).
    """

    def __init__(self, labels, mul_fn, comul_fn, counit, antipode=None, render=None,
                 name="H", degree=None, group: FiniteAbelianGroup | None = None, pbw_gens=None):
        super().__init__(labels, mul_fn, render, name)
        self._comul_fn = comul_fn
        self._cm: dict = {}
        self.counit = list(counit)
        self.antipode = antipode
        self.degree = list(degree) if degree is not None else [0] * self.dim
        self.group = group
        self.pbw_gens = pbw_gens  # list of (index of x_i, g_i)
        self._dual: dict | None = None

    def comul(self, i: int) -> dict:
        r = self._cm.get(i)
        if r is None:
            r = self._comul_fn(i)
            self._cm[i] = r
        return r

    def comul_vec(self, a: dict) -> dict:
        out: dict = {}
        for i, x in a.items():
            add_scaled(out, self.comul(i), x)
        return out

    def counit_vec(self, a: dict):
        total = get_field().zero
        for i, x in a.items():
            e = self.counit[i]
            if e:
                total = total + x * e
        return total

    def antipode_vec(self, a: dict) -> dict:
        if self.antipode is None:
            raise PropertyFailure("antipode not constructed")
        out: dict = {}
        for i, x in a.items():
            add_scaled(out, self.antipode[i], x)
        return out

    def tensor_mul(self, s: dict, t: dict) -> dict:
        out: dict = {}
        for (a, b), x in s.items():
            for (c, d), y in t.items():
                xy = x * y
                left = self.mul(a, c)
                right = self.mul(b, d)
                for k, u in left.items():
                    for l, v in right.items():
                        add_scaled(out, {(k, l): u * v}, xy)
        return out

    def dual_table(self) -> dict:
        """(u, v) -> [(a, coeff of u (x) v in Delta(a))]: the product of H*."""
        if self._dual is None:
            dt: dict = {}
            for a in range(self.dim):
                for uv, c in self.comul(a).items():
                    dt.setdefault(uv, []).append((a, c))
            self._dual = dt
        return self._dual

    def grouplike_indices(self) -> list:
        return [i for i in range(self.dim) if self.degree[i] == 0]

    def with_structure(self, mul_fn=None, comul_fn=None, antipode=None, name=None) -> HopfAlgebra:
        """Copy sharing labels/counit, optionally replacing product, coproduct or antipode."""
        return HopfAlgebra(self.labels, mul_fn or self.mul, comul_fn or self.comul, self.counit,
                           antipode, self._render, name or self.name, self.degree, self.group,
                           self.pbw_gens)


# ---------------------------------------------------------------- fixtures


def group_algebra(G: FiniteAbelianGroup) -> HopfAlgebra:
    els = G.elements()
    labels = [((), g) for g in els]
    idx = {g: i for i, g in enumerate(els)}
    one = _one

    def mul(i, j):
        return {idx[G.mul(els[i], els[j])]: one()}

    def comul(i):
        return {(i, i): one()}

    H = HopfAlgebra(labels, mul, comul, [one()] * len(els), render=render_pbw_label,
                    name=f"k{G!r}", group=G)
    H.antipode = [{idx[G.inv(g)]: one()} for g in els]
    return H


def matrix_algebra(n: int = 2) -> FiniteAlgebra:
    """M_n(k) on matrix units, identity-first basis (unit = sum E_ii written as index 0)."""
    # basis: identity, then E_ij except E_nn (E_nn = I - sum of other E_ii)
    units = [(i, j) for i in range(n) for j in range(n) if (i, j) != (n - 1, n - 1)]
    labels = ["I"] + [f"E{i + 1}{j + 1}" for i, j in units]
    pos = {u: k + 1 for k, u in enumerate(units)}

    def as_vec(i, j):
        if (i, j) != (n - 1, n - 1):
            return {pos[(i, j)]: _one()}
        v = {0: _one()}
        for k in range(n - 1):
            v[pos[(k, k)]] = -_one()
        return v

    def full(idx):
        if idx == 0:
            return {(k, k): _one() for k in range(n)}
        return {units[idx - 1]: _one()}

    def mul(a, b):
        out: dict = {}
        for (i, j), x in full(a).items():
            for (k, l), y in full(b).items():
                if j == k:
                    add_scaled(out, as_vec(i, l), x * y)
        return out

    return FiniteAlgebra(labels, mul, name=f"M_{n}")


# ---------------------------------------------------------------- rendering


def render_pbw_label(label) -> str:
    exps, g = label
    parts = []
    for i, a in enumerate(exps):
        if a == 1:
            parts.append(f"x{i + 1}")
        elif a:
            parts.append(f"x{i + 1}^{a}")
    if len(g) == 1:
        if g[0] == 1:
            parts.append("g")
        elif g[0]:
            parts.append(f"g^{g[0]}")
    else:
        for i, e in enumerate(g):
            if e == 1:
                parts.append(f"g{i + 1}")
            elif e:
                parts.append(f"g{i + 1}^{e}")
    return " ".join(parts) if parts else "1"


def parse_pbw_label(text: str, theta: int, rank: int) -> tuple:
    exps = [0] * theta
    g = [0] * rank
    text = text.strip()
    if text == "1":
        return tuple(exps), tuple(g)
    for tok in text.split():
        name, _, power = tok.partition("^")
        k = int(power) if power else 1
        if name.startswith("x"):
            i = int(name[1:]) - 1
            if not 0 <= i < theta:
                raise InputError(f"unknown generator {name!r}")
            exps[i] += k
        elif name == "g" and rank == 1:
            g[0] += k
        elif name.startswith("g") and name[1:].isdigit():
            g[int(name[1:]) - 1] += k
        else:
            raise InputError(f"cannot parse monomial token {tok!r}")
    return tuple(exps), tuple(g)


def _split_terms(text: str) -> list:
    """Split 'a + [b + c] m + d' on top-level ' + ' (brackets protect coefficients)."""
    parts, depth, start = [], 0, 0
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        elif depth == 0 and text.startswith(" + ", i):
            parts.append(text[start:i])
            start = i + 3
            i += 3
            continue
        i += 1
    parts.append(text[start:])
    return parts


def parse_pbw_element(text: str, H: HopfAlgebra) -> dict:
    """Inverse of H.render on PBW algebras: '[c] x1^2 g + g^3' -> {index: Scalar}."""
    theta = len(H.labels[0][0])
    rank = len(H.labels[0][1])
    out: dict = {}
    text = text.strip()
    if text == "0":
        return out
    for term in _split_terms(text):
        term = term.strip()
        coeff = _one()
        if term.startswith("["):
            close = term.index("]")
            coeff = parse_scalar(term[1:close])
            term = term[close + 1:].strip()
        exps, g = parse_pbw_label(term, theta, rank)
        if H.group is not None:
            g = H.group.element(g)
        key = H.index.get((exps, g))
        if key is None:
            raise InputError(f"{term!r} is not a basis monomial of {H.name}")
        add_scaled(out, {key: coeff}, 1)
    return out


# ---------------------------------------------------------------- verification


@dataclass
class CheckResult:
    name: str
    checked: int = 0
    failures: int = 0
    witness: dict | None = None

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def record(self, bad: bool, witness_fn):
        self.checked += 1
        if bad:
            self.failures += 1
            if self.witness is None:
                self.witness = witness_fn()

    def merge(self, other: CheckResult):
        self.checked += other.checked
        self.failures += other.failures
        if self.witness is None:
            self.witness = other.witness

    def as_dict(self) -> dict:
        return {"checked": self.checked, "failures": self.failures, "ok": self.ok,
                "witness": self.witness}


_WORKER_H: HopfAlgebra | None = None


def _assoc_chunk(args) -> CheckResult:
    H = _WORKER_H
    triples = args
    res = CheckResult("associativity")
    for i, j, k in triples:
        left = H.mul_vec(H.mul(i, j), H.basis_vec(k))
        right = H.mul_vec(H.basis_vec(i), H.mul(j, k))
        res.record(left != right, lambda: {"args": [H.render_label(i), H.render_label(j), H.render_label(k)],
                                           "lhs": H.render(left), "rhs": H.render(right)})
    return res


def _mult_chunk(args) -> CheckResult:
    H = _WORKER_H
    res = CheckResult("comultiplication_multiplicative")
    for i, j in args:
        left = H.comul_vec(H.mul(i, j))
        right = H.tensor_mul(H.comul(i), H.comul(j))
        res.record(left != right, lambda: {"args": [H.render_label(i), H.render_label(j)],
                                           "lhs": render_tensor(H, left), "rhs": render_tensor(H, right)})
    return res


def render_tensor(H: HopfAlgebra, t: dict) -> str:
    if not t:
        return "0"
    parts = []
    for (a, b) in sorted(t):
        c = t[(a, b)]
        mono = f"{H.render_label(a)} (x) {H.render_label(b)}"
        parts.append(mono if c == 1 else f"[{c}] {mono}")
    return " + ".join(parts)


def _run_chunks(fn, items: list, jobs: int, H: HopfAlgebra) -> CheckResult:
    global _WORKER_H
    _WORKER_H = H
    if jobs <= 1 or len(items) < 2000:
        return fn(items)
    n = jobs * 4
    chunks = [items[k::n] for k in range(n)]
    ctx = multiprocessing.get_context("fork")
    with ctx.Pool(jobs) as pool:
        parts = pool.map(fn, chunks)
    out = parts[0]
    for p in parts[1:]:
        out.merge(p)
    # deterministic witness regardless of worker count: recompute on the serial order
    if out.failures:
        out.witness = None
        for it in items:
            r = fn([it])
            if r.failures:
                out.witness = r.witness
                break
    return out


def generating_indices(H: HopfAlgebra) -> list | None:
    """Basis indices of algebra generators (x_i and cyclic group generators), if known."""
    if H.group is None or H.pbw_gens is None:
        return None
    G = H.group
    theta = len(H.pbw_gens)
    ident = tuple([0] * theta)
    out = [xi for xi, _ in H.pbw_gens]
    for r in range(G.rank):
        g = tuple(1 if k == r else 0 for k in range(G.rank))
        out.append(H.index[(ident, G.element(g))])
    return out if generates(H, out) else None


def generates(A: FiniteAlgebra, gens: list) -> bool:
    """Whether the basis elements ``gens`` generate A as an algebra."""
    ech = Echelon()
    ech.add({0: _one()})
    frontier = [{0: _one()}]
    while frontier and ech.rank < A.dim:
        nxt = []
        for v in frontier:
            for s in gens:
                w = A.mul_vec(v, {s: _one()})
                if ech.add(w):
                    nxt.append(w)
        frontier = nxt
    return ech.rank == A.dim


def verify_hopf_axioms(H: HopfAlgebra, mode: str = "auto", seed: int = 0,
                       count: int = DEFAULT_SAMPLES, jobs: int = 1, bialgebra_only: bool = False,
                       reduction: str = "auto") -> dict:
    """Check the Hopf algebra axioms on the basis; violations are reported, not raised.

    With ``reduction="generators"`` (the default when generators are known) the
    last argument of associativity and multiplicativity checks runs over an
    algebra generating set only: {c : (ab)c = a(bc) for all a, b} is closed under
    products, so this is equivalent to checking every basis triple.
    """
    if mode == "auto":
        mode = "full" if H.dim <= FULL_VERIFY_MAX_DIM else "sampled"
    if mode not in ("full", "sampled"):
        raise InputError(f"verify mode must be full or sampled, got {mode!r}")
    n = H.dim
    F = get_field()
    rng = random.Random(seed)
    checks: dict = {}
    gens = generating_indices(H) if reduction in ("auto", "generators") else None
    if reduction == "generators" and gens is None:
        raise InputError("generator reduction needs a pointed algebra with known generators")
    last = gens if gens is not None else list(range(n))

    if mode == "full":
        triples = [(i, j, k) for i in range(n) for j in range(n) for k in last]
        pairs = [(i, j) for i in range(n) for j in last]
    else:
        triples = [(rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(count)]
        pairs = [(rng.randrange(n), rng.randrange(n)) for _ in range(count)]

    unit = CheckResult("unit")
    for i in range(n):
        e = H.basis_vec(i)
        unit.record(H.mul(0, i) != e or H.mul(i, 0) != e,
                    lambda: {"args": [H.render_label(i)]})
    checks["unit"] = unit
    checks["associativity"] = _run_chunks(_assoc_chunk, triples, jobs, H)

    coassoc = CheckResult("coassociativity")
    counit = CheckResult("counit")
    for i in range(n):
        d = H.comul(i)
        left: dict = {}
        right: dict = {}
        for (a, b), c in d.items():
            for (u, v), e in H.comul(a).items():
                add_scaled(left, {(u, v, b): e}, c)
            for (u, v), e in H.comul(b).items():
                add_scaled(right, {(a, u, v): e}, c)
        coassoc.record(left != right, lambda: {"args": [H.render_label(i)]})
        l1: dict = {}
        r1: dict = {}
        for (a, b), c in d.items():
            if H.counit[a]:
                add_scaled(l1, {b: c}, H.counit[a])
            if H.counit[b]:
                add_scaled(r1, {a: c}, H.counit[b])
        e = H.basis_vec(i)
        counit.record(l1 != e or r1 != e, lambda: {"args": [H.render_label(i)],
                                                  "lhs": H.render(l1), "rhs": H.render(r1)})
    checks["coassociativity"] = coassoc
    checks["counit"] = counit

    checks["comultiplication_multiplicative"] = _run_chunks(_mult_chunk, pairs, jobs, H)
    cm = CheckResult("counit_multiplicative")
    for i, j in pairs:
        lhs = H.counit_vec(H.mul(i, j))
        cm.record(lhs != H.counit[i] * H.counit[j], lambda: {"args": [H.render_label(i), H.render_label(j)]})
    cm.record(H.comul(0) != {(0, 0): F.one} or H.counit[0] != 1, lambda: {"args": ["1"]})
    checks["counit_multiplicative"] = cm

    if not bialgebra_only:
        anti = CheckResult("antipode")
        if H.antipode is None:
            anti.record(True, lambda: {"reason": "antipode missing"})
        else:
            for i in range(n):
                left, right = _antipode_sides(H, i)
                target = {0: H.counit[i]} if H.counit[i] else {}
                anti.record(left != target or right != target,
                            lambda: {"args": [H.render_label(i)], "lhs": H.render(left), "rhs": H.render(right)})
        checks["antipode"] = anti

    return {"mode": mode, "reduction": "generators" if (gens is not None and mode == "full") else "none",
            "seed": seed if mode == "sampled" else None,
            "samples": count if mode == "sampled" else None, "dim": n,
            "ok": all(c.ok for c in checks.values()),
            "checks": {k: v.as_dict() for k, v in checks.items()}}


def _antipode_sides(H: HopfAlgebra, i: int) -> tuple:
    left: dict = {}
    right: dict = {}
    for (a, b), c in H.comul(i).items():
        add_scaled(left, H.mul_vec(H.antipode[a], H.basis_vec(b)), c)
        add_scaled(right, H.mul_vec(H.basis_vec(a), H.antipode[b]), c)
    return left, right


def antipode_law_holds(H: HopfAlgebra) -> bool:
    for i in range(H.dim):
        target = {0: H.counit[i]} if H.counit[i] else {}
        left, right = _antipode_sides(H, i)
        if left != target or right != target:
            return False
    return True


def build_antipode(H: HopfAlgebra) -> HopfAlgebra:
    """Fill H.antipode from generator formulas, falling back to a linear solve.

    For PBW labels (a, g): s(x^a g) = s(g) s(x_theta)^{a_theta} ... s(x_1)^{a_1}
    with s(g) = g^{-1}, s(x_i) = -g_i^{-1} x_i.
    """
    if H.group is not None and H.pbw_gens is not None:
        H.antipode = _antipode_from_generators(H)
        if antipode_law_holds(H):
            H.antipode_method = "generators"
            return H
    H.antipode = _antipode_by_solving(H)
    H.antipode_method = "linear-solve"
    if not antipode_law_holds(H):
        raise PropertyFailure("no antipode: solved map fails the right antipode law")
    return H


def _antipode_from_generators(H: HopfAlgebra) -> list:
    G = H.group
    theta = len(H.pbw_gens)
    ident = tuple([0] * theta)
    sx = []
    for xi, gi in H.pbw_gens:
        ginv = H.index[(ident, G.inv(gi))]
        sx.append({k: -v for k, v in H.mul(ginv, xi).items()})
    out = []
    for exps, g in H.labels:
        v = {H.index[(ident, G.inv(g))]: _one()}
        for i in reversed(range(theta)):
            for _ in range(exps[i]):
                v = H.mul_vec(v, sx[i])
        out.append(v)
    return out


def _antipode_by_solving(H: HopfAlgebra) -> list:
    n = H.dim
    rows: list = []
    rhs: list = []
    for i in range(n):
        eq: dict = {}
        for (a, b), c in H.comul(i).items():
            for l in range(n):
                for m, v in H.mul(l, b).items():
                    add_scaled(eq.setdefault(m, {}), {(a, l): v}, c)
        for m in range(n):
            rows.append(eq.get(m, {}))
            rhs.append(H.counit[i] if m == 0 else 0)
    sol = solve(rows, rhs)
    if sol is None:
        raise PropertyFailure("no antipode: the antipode law has no solution")
    out = [dict() for _ in range(n)]
    for (a, l), v in sol.items():
        out[a][l] = v
    return out


# ---------------------------------------------------------------- functionals


@dataclass
class Functional:
    """Multilinear functional H^{(x) arity} -> k given on basis tuples."""

    arity: int
    values: dict = field(default_factory=dict)

    def __post_init__(self):
        self.values = {tuple(k): v for k, v in self.values.items() if v}
        for k in self.values:
            if len(k) != self.arity:
                raise InputError(f"functional of arity {self.arity} given a value on {k}")

    def __call__(self, *idx):
        v = self.values.get(tuple(idx))
        return v if v is not None else get_field().zero

    def __eq__(self, other):
        return isinstance(other, Functional) and other.arity == self.arity and other.values == self.values

    def __add__(self, other: Functional) -> Functional:
        self._same(other)
        out = dict(self.values)
        add_scaled(out, other.values, 1)
        return Functional(self.arity, out)

    def __sub__(self, other: Functional) -> Functional:
        self._same(other)
        out = dict(self.values)
        add_scaled(out, other.values, -1)
        return Functional(self.arity, out)

    def __neg__(self):
        return Functional(self.arity, {k: -v for k, v in self.values.items()})

    def scale(self, c) -> Functional:
        return Functional(self.arity, {k: v * c for k, v in self.values.items()})

    def _same(self, other):
        if other.arity != self.arity:
            raise InputError(f"arity mismatch: {self.arity} vs {other.arity}")

    def is_zero(self) -> bool:
        return not self.values

    def is_normalized(self, unit: int = 0) -> bool:
        return all(unit not in k for k in self.values)

    def evaluate(self, *vecs) -> Scalar:
        """Multilinear evaluation on elements given as dicts."""
        total = get_field().zero
        for k, v in self.values.items():
            c = v
            for p, vec in zip(k, vecs):
                x = vec.get(p)
                if x is None:
                    c = None
                    break
                c = c * x
            if c is not None:
                total = total + c
        return total

    def graded_part(self, H: HopfAlgebra, s: int) -> Functional:
        """Component of total degree -s (sum of argument x-degrees equal to s)."""
        return Functional(self.arity, {k: v for k, v in self.values.items()
                                       if sum(H.degree[i] for i in k) == s})

    def degrees(self, H: HopfAlgebra) -> list:
        return sorted({sum(H.degree[i] for i in k) for k in self.values})


def counit_functional(H: HopfAlgebra, arity: int) -> Functional:
    supp = [i for i in range(H.dim) if H.counit[i]]
    vals = {}
    for k in product(supp, repeat=arity):
        c = get_field().one
        for i in k:
            c = c * H.counit[i]
        vals[k] = c
    return Functional(arity, vals)


def convolution(f: Functional, g: Functional, H: HopfAlgebra) -> Functional:
    """(f * g)(a_1..a_n) = sum f(a_1(1)..a_n(1)) g(a_1(2)..a_n(2))."""
    if f.arity != g.arity:
        raise InputError(f"arity mismatch in convolution: {f.arity} vs {g.arity}")
    dt = H.dual_table()
    out: dict = {}
    for ku, fu in f.values.items():
        for kv, gv in g.values.items():
            lists = []
            for p in range(f.arity):
                lst = dt.get((ku[p], kv[p]))
                if lst is None:
                    break
                lists.append(lst)
            else:
                base = fu * gv
                for combo in product(*lists):
                    c = base
                    for _, x in combo:
                        c = c * x
                    key = tuple(a for a, _ in combo)
                    prev = out.get(key)
                    nv = c if prev is None else prev + c
                    if nv:
                        out[key] = nv
                    else:
                        out.pop(key, None)
    return Functional(f.arity, out)


def convolution_power(f: Functional, k: int, H: HopfAlgebra) -> Functional:
    result = counit_functional(H, f.arity)
    for _ in range(k):
        result = convolution(result, f, H)
    return result


def convolution_inverse(f: Functional, H: HopfAlgebra, max_terms: int | None = None) -> Functional:
    """Geometric series sum (unit - f)^{*k}, valid for filtered-unipotent f."""
    unit = counit_functional(H, f.arity)
    gl = set(H.grouplike_indices())
    for k, v in unit.values.items():
        if f(*k) != v:
            raise PropertyFailure("not filtered-unipotent: unit part differs from the counit power",
                                  witness=[H.render_label(i) for i in k])
    for k, v in f.values.items():
        if all(i in gl for i in k) and unit(*k) != v:
            raise PropertyFailure("not filtered-unipotent: value on grouplikes differs from the counit",
                                  witness=[H.render_label(i) for i in k])
    nil = unit - f
    limit = max_terms or (f.arity * max(H.degree) + 2)
    total = unit
    term = unit
    for _ in range(limit):
        term = convolution(term, nil, H)
        if term.is_zero():
            break
        total = total + term
    else:
        raise PropertyFailure("not filtered-unipotent: geometric series did not terminate")
    if convolution(f, total, H) != unit or convolution(total, f, H) != unit:
        raise PropertyFailure("convolution inverse failed the multiply-back check")
    return total


def compose_with_antipode(f: Functional, H: HopfAlgebra) -> Functional:
    """f o s for an arity-1 functional."""
    out: dict = {}
    for i in range(H.dim):
        v = f.evaluate(H.antipode[i])
        if v:
            out[(i,)] = v
    return Functional(1, out)


def convolve_maps(F: list, Gm: list, H: HopfAlgebra) -> list:
    """Convolution of linear maps H -> H given as lists of image vectors."""
    out = []
    for i in range(H.dim):
        v: dict = {}
        for (a, b), c in H.comul(i).items():
            add_scaled(v, H.mul_vec(F[a], Gm[b]), c)
        out.append(v)
    return out


# ---------------------------------------------------------------- radical and coradical


def _trace_form_radical(dim: int, mul) -> list:
    t = []
    for k in range(dim):
        tr = get_field().zero
        for i in range(dim):
            c = mul(k, i).get(i)
            if c:
                tr = tr + c
        t.append(tr)
    rows = []
    for b in range(dim):
        row = {}
        for a in range(dim):
            s = get_field().zero
            for k, c in mul(a, b).items():
                if t[k]:
                    s = s + c * t[k]
            if s:
                row[a] = s
        rows.append(row)
    return nullspace(rows, list(range(dim)))


def radical(A: FiniteAlgebra) -> list:
    """Basis of the Jacobson radical via the trace form (x in Rad iff tr L_{xy} = 0 for all y)."""
    return _trace_form_radical(A.dim, A.mul)


def dual_mul_fn(H: HopfAlgebra):
    """Product of H* on the dual basis: e^u e^v = sum_a [coeff of u (x) v in Delta a] e^a."""
    dt = H.dual_table()

    def mul(u, v):
        return {a: c for a, c in dt.get((u, v), [])}
    return mul


def dual_radical(H: HopfAlgebra) -> list:
    return _trace_form_radical(H.dim, dual_mul_fn(H))


def coradical_filtration(H: HopfAlgebra) -> dict:
    """Layers H_0 ⊂ H_1 ⊂ ... with H_n = Delta^{-1}(H_0 (x) H + H (x) H_{n-1})."""
    n = H.dim
    cols = list(range(n))
    rad_dual = dual_radical(H)
    H0 = nullspace(rad_dual, cols)
    layers = [H0]
    # T_phi(x) = (phi (x) 1) Delta x
    hit = []
    for phi in rad_dual:
        images = []
        for k in range(n):
            v: dict = {}
            for (a, b), c in H.comul(k).items():
                p = phi.get(a)
                if p:
                    add_scaled(v, {b: c}, p)
            images.append(v)
        hit.append(images)
    while len(layers[-1]) < n:
        prev = layers[-1]
        ann = nullspace(prev, cols)  # functionals killing H_{n-1}
        rows = []
        for images in hit:
            for psi in ann:
                row = {}
                for k in range(n):
                    s = get_field().zero
                    for b, c in images[k].items():
                        p = psi.get(b)
                        if p:
                            s = s + c * p
                    if s:
                        row[k] = s
                if row:
                    rows.append(row)
        nxt = nullspace(rows, cols)
        if len(nxt) <= len(prev):
            raise PropertyFailure("coradical filtration stalled before exhausting H")
        layers.append(nxt)
        if len(layers) > n + 1:
            break
    dims = [len(L) for L in layers]
    graded = [dims[0]] + [dims[k] - dims[k - 1] for k in range(1, len(dims))]
    return {"dims": dims, "graded_dims": graded, "bases": layers}


def contains_group_combination(H: HopfAlgebra, space: list) -> bool:
    """Whether a nonzero combination of grouplike basis elements lies in span(space)."""
    ech = Echelon()
    for v in space:
        ech.add(v)
    gl = H.grouplike_indices()
    # intersect span(space) with span(grouplikes): compare ranks
    base = ech.rank
    for i in gl:
        ech.add({i: _one()})
    return ech.rank < base + len(gl)


def grouplikes_of_dual(H: HopfAlgebra) -> list:
    """Characters of the group of H that extend (by zero on positive degree) to algebra maps H -> k.

    Every algebra map kills the x_i: g x_i = chi_i(g) x_i g forces phi(x_i) = 0
    since chi_i(g_i) != 1.  Each candidate is checked on all basis products.
    """
    if H.group is None:
        raise InputError("grouplikes_of_dual needs a pointed algebra with PBW labels")
    G = H.group
    out = []
    gl = H.grouplike_indices()
    for chi in G.characters():
        val = [get_field().zero] * H.dim
        for i in gl:
            val[i] = G.char_eval(chi, H.labels[i][1])
        ok = True
        for i in range(H.dim):
            for j in range(H.dim):
                lhs = get_field().zero
                for k, c in H.mul(i, j).items():
                    if val[k]:
                        lhs = lhs + c * val[k]
                if lhs != val[i] * val[j]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(chi)
    return out
