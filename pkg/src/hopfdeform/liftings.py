"""Liftings of quantum linear spaces: H(a), K(D), Theta(f), u_a(f) and U(D, f).

A quantum linear space is a diagonal datum with chi_i(g_j) chi_j(g_i) = 1 for
i != j.  Its liftings H(a) have the PBW basis x_1^{a_1}...x_theta^{a_theta} g
and are multiplied by a rewriting system on letter words.  The subalgebra
K(D) is handled in a free smash algebra on z-letters (z_i = x_i^{N_i} and
z_ij = [x_i, x_j]_c), where Theta(f) = f * id * fs and the u_a(f) are computed.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .braided import DiagonalDatum, braided_commutator, letter
from .errors import BudgetError, ConfigError, InputError, PropertyFailure
from .groups import FiniteAbelianGroup, annihilator, generated_subgroup
from .hopfcore import (HopfAlgebra, build_antipode, contains_group_combination, grouplikes_of_dual,
                       radical, render_pbw_label, verify_hopf_axioms)
from .linalg import add_scaled, rank
from .scalars import Scalar, get_field

# ---------------------------------------------------------------- parameters


@dataclass
class LiftingParams:
    """a_ii (root vector parameters) and a_ij, i < j (linking parameters)."""

    diag: list
    link: dict = field(default_factory=dict)

    @classmethod
    def zero(cls, d: DiagonalDatum) -> LiftingParams:
        F = get_field()
        return cls([F.zero] * d.theta, {})

    def a(self, i: int, j: int) -> Scalar:
        F = get_field()
        if i == j:
            return F.coerce(self.diag[i])
        key = (min(i, j), max(i, j))
        return F.coerce(self.link.get(key, 0))

    def matrix(self, theta: int) -> list:
        return [[self.a(i, j) if i <= j else get_field().zero for j in range(theta)] for i in range(theta)]

    def is_zero(self) -> bool:
        return not any(get_field().coerce(x) for x in self.diag) and not any(
            get_field().coerce(v) for v in self.link.values())

    def relabel(self, perm, d: DiagonalDatum) -> LiftingParams:
        """Parameters for d.relabel(perm).  A pair whose order flips picks up
        -q_ji, since x_j x_i - q_ji x_i x_j = -q_ji (x_i x_j - q_ij x_j x_i)."""
        inv = {p: k for k, p in enumerate(perm)}
        link = {}
        for (i, j), v in self.link.items():
            a, b = inv[i], inv[j]
            if a < b:
                link[(a, b)] = v
            else:
                link[(b, a)] = -(d.q(j, i) * v)
        return LiftingParams([self.diag[p] for p in perm], link)


def diag_constraint(d: DiagonalDatum, i: int) -> str | None:
    G = d.group
    if G.pow(d.g[i], d.N[i]) == G.identity:
        return "g^n = 1"
    if not G.is_trivial_character(G.pow(d.chi[i], d.N[i])):
        return "chi^n != eps"
    return None


def link_constraint(d: DiagonalDatum, i: int, j: int) -> str | None:
    G = d.group
    if G.mul(d.g[i], d.g[j]) == G.identity:
        return "g_i g_j = 1"
    if not G.is_trivial_character(G.mul(d.chi[i], d.chi[j])):
        return "chi_i chi_j != eps"
    return None


def validate_params(d: DiagonalDatum, p: LiftingParams) -> tuple:
    """Zero the entries forced to vanish; return (params, list of forced-zero records)."""
    F = get_field()
    if len(p.diag) != d.theta:
        raise InputError(f"expected {d.theta} root vector parameters, got {len(p.diag)}", "/params/diag")
    forced = []
    diag = []
    for i in range(d.theta):
        v = F.coerce(p.diag[i])
        reason = diag_constraint(d, i)
        if reason is not None:
            forced.append({"param": f"a{i + 1}{i + 1}", "reason": reason,
                           "requested": str(v), "requested_nonzero": bool(v)})
            v = F.zero
        diag.append(v)
    link = {}
    for (i, j), v in sorted(p.link.items()):
        if not (0 <= i < d.theta and 0 <= j < d.theta) or i == j:
            raise InputError(f"linking index ({i + 1},{j + 1}) out of range", "/params/link")
        key = (min(i, j), max(i, j))
        v = F.coerce(v)
        reason = link_constraint(d, *key)
        if reason is not None:
            forced.append({"param": f"a{key[0] + 1}{key[1] + 1}", "reason": reason,
                           "requested": str(v), "requested_nonzero": bool(v)})
            v = F.zero
        if v:
            link[key] = v
    return LiftingParams(diag, link), forced


# ---------------------------------------------------------------- rewriting


class Rewriter:
    """Normal forms of letter words x_{w_1}...x_{w_k} on the PBW basis.

    swap[(j, i)] (i < j) = (c, corr) encodes x_j x_i -> c x_i x_j + corr with corr
    a dict group element -> scalar; power[i] (truncating mode) encodes
    x_i^{N_i} -> power[i].  Without truncation words are capped by degree.
    """

    def __init__(self, d: DiagonalDatum, swap: dict, power: dict | None, degree_cap: int | None = None):
        self.d = d
        self.swap = swap
        self.power = power
        self.degree_cap = degree_cap
        self._memo: dict = {}

    def nf(self, w: tuple) -> dict:
        r = self._memo.get(w)
        if r is None:
            r = self._normal_form(w)
            self._memo[w] = r
        return r

    def _insert(self, out: dict, prefix: tuple, k, suffix: tuple, v) -> None:
        d = self.d
        G = d.group
        e = sum(d.char_exp(d.chi[r], k) for r in suffix)
        factor = v * d.root(e)
        for (exps, h), c in self.nf(prefix + suffix).items():
            add_scaled(out, {(exps, G.mul(h, k)): c}, factor)

    def _normal_form(self, w: tuple) -> dict:
        d = self.d
        for p in range(len(w) - 1):
            if w[p] > w[p + 1]:
                j, i = w[p], w[p + 1]
                c, corr = self.swap[(j, i)]
                out: dict = {}
                add_scaled(out, self.nf(w[:p] + (i, j) + w[p + 2:]), c)
                for k, v in corr.items():
                    self._insert(out, w[:p], k, w[p + 2:], v)
                return out
        counts = [0] * d.theta
        for x in w:
            counts[x] += 1
        if self.power is not None:
            start = 0
            for i in range(d.theta):
                if counts[i] >= d.N[i]:
                    prefix, suffix = w[:start], w[start + d.N[i]:]
                    out = {}
                    for k, v in self.power[i].items():
                        self._insert(out, prefix, k, suffix, v)
                    return out
                start += counts[i]
        elif self.degree_cap is not None and len(w) > self.degree_cap:
            raise BudgetError(f"word of degree {len(w)} exceeds the degree cap {self.degree_cap}")
        return {(tuple(counts), d.group.identity): get_field().one}


def _group_combo(pairs) -> dict:
    out: dict = {}
    for k, v in pairs:
        add_scaled(out, {k: v}, 1)
    return out


def lifting_rules(d: DiagonalDatum, p: LiftingParams) -> tuple:
    """Rewriting rules of H(a): x_j x_i -> chi_i(g_j) x_i x_j - chi_i(g_j) a_ij (g_i g_j - 1),
    x_i^{N_i} -> a_ii (g_i^{N_i} - 1)."""
    G = d.group
    e = G.identity
    swap = {}
    for i in range(d.theta):
        for j in range(i + 1, d.theta):
            c = d.root(d.char_exp(d.chi[i], d.g[j]))
            a = p.a(i, j)
            swap[(j, i)] = (c, _group_combo([(G.mul(d.g[i], d.g[j]), -(c * a)), (e, c * a)]))
    power = {}
    for i in range(d.theta):
        a = p.a(i, i)
        power[i] = _group_combo([(G.pow(d.g[i], d.N[i]), a), (e, -a)])
    return swap, power


def pbw_hopf_algebra(d: DiagonalDatum, rw: Rewriter, name: str) -> HopfAlgebra:
    """Hopf algebra on the PBW basis x^a g with product from the rewriter and
    Delta(g) = g (x) g, Delta(x_i) = x_i (x) 1 + g_i (x) x_i."""
    G = d.group
    exps_list = d.pbw_exponents()
    labels = [(a, g) for a in exps_list for g in G.elements()]
    index = {lab: k for k, lab in enumerate(labels)}
    F = get_field()
    ident = G.identity
    zero_exps = tuple([0] * d.theta)

    def word(a):
        return tuple(i for i in range(d.theta) for _ in range(a[i]))

    def mul(i, j):
        (a, g), (b, h) = labels[i], labels[j]
        sc = d.root(d.weight_exp(b, g))
        gh = G.mul(g, h)
        out = {}
        for (e, k), c in rw.nf(word(a) + word(b)).items():
            out[index[(e, G.mul(k, gh))]] = c * sc
        return out

    H = HopfAlgebra(labels, mul, None, [F.one if sum(a) == 0 else F.zero for a, _ in labels],
                    render=render_pbw_label, name=name, degree=[sum(a) for a, _ in labels], group=G)
    xidx = []
    for i in range(d.theta):
        ei = tuple(1 if k == i else 0 for k in range(d.theta))
        xidx.append(index[(ei, ident)])
    H.pbw_gens = [(xidx[i], d.g[i]) for i in range(d.theta)]
    delta_x: dict = {zero_exps: {(0, 0): F.one}}
    for i in range(d.theta):
        delta_x.setdefault(tuple(1 if k == i else 0 for k in range(d.theta)),
                           {(xidx[i], 0): F.one, (index[(zero_exps, d.g[i])], xidx[i]): F.one})

    def dx(a):
        r = delta_x.get(a)
        if r is None:
            k = max(i for i in range(d.theta) if a[i])
            rest = tuple(v - (1 if i == k else 0) for i, v in enumerate(a))
            ek = tuple(1 if i == k else 0 for i in range(d.theta))
            r = H.tensor_mul(dx(rest), dx(ek))
            delta_x[a] = r
        return r

    def comul(i):
        a, g = labels[i]
        gi = index[(zero_exps, g)]
        return H.tensor_mul(dx(a), {(gi, gi): F.one})

    H._comul_fn = comul
    H.datum = d
    H.index_of = index
    return H


def build_lifting(d: DiagonalDatum, p: LiftingParams | None = None, verify: bool = True,
                  mode: str = "auto", seed: int = 0, jobs: int = 1) -> HopfAlgebra:
    """H(a): PBW rewriting algebra, antipode from generator formulas, axioms verified."""
    if p is None:
        p = LiftingParams.zero(d)
    p, forced = validate_params(d, p)
    swap, power = lifting_rules(d, p)
    H = pbw_hopf_algebra(d, Rewriter(d, swap, power), name="H(a)")
    H.params = p
    H.forced_zeros = forced
    build_antipode(H)
    H.verification = None
    if verify:
        rep = verify_hopf_axioms(H, mode=mode, seed=seed, jobs=jobs)
        H.verification = rep
        if not rep["ok"]:
            bad = {k: v for k, v in rep["checks"].items() if not v["ok"]}
            raise PropertyFailure("lifting fails the Hopf axioms", witness=bad)
    return H


# ---------------------------------------------------------------- words and normal forms


def parse_word(d: DiagonalDatum, text: str) -> list:
    """'x2 x1 g^2 x1' -> [('x', 1), ('x', 0), ('g', (2,)), ('x', 0)]."""
    G = d.group
    out = []
    for tok in text.split():
        name, _, power = tok.partition("^")
        k = int(power) if power else 1
        if name.startswith("x"):
            i = int(name[1:]) - 1
            if not 0 <= i < d.theta or k < 0:
                raise InputError(f"bad generator token {tok!r}")
            out.extend([("x", i)] * k)
        elif name == "g" and G.rank == 1:
            out.append(("g", G.element((k,))))
        elif name.startswith("g") and name[1:].isdigit():
            r = int(name[1:]) - 1
            out.append(("g", G.element(tuple(k if t == r else 0 for t in range(G.rank)))))
        elif name == "1":
            continue
        else:
            raise InputError(f"cannot parse word token {tok!r}")
    return out


def normalize(H: HopfAlgebra, word) -> dict:
    """Canonical PBW form of a word in generators and group elements (as an element of H)."""
    d = H.datum
    if isinstance(word, str):
        word = parse_word(d, word)
    zero_exps = tuple([0] * d.theta)
    v = {0: get_field().one}
    for kind, val in word:
        if kind == "x":
            idx = H.pbw_gens[val][0]
        else:
            idx = H.index_of[(zero_exps, val)]
        v = H.mul_vec(v, {idx: get_field().one})
    return v


def element_from_groups(H: HopfAlgebra, combo: dict, exps=None) -> dict:
    """x^exps * (sum_g c_g g) as an element of H."""
    d = H.datum
    exps = tuple([0] * d.theta) if exps is None else tuple(exps)
    out = {}
    for g, c in combo.items():
        add_scaled(out, {H.index_of[(exps, g)]: c}, 1)
    return out


def nichols_algebra(d: DiagonalDatum) -> HopfAlgebra:
    """B(V)#kG, the lifting with all parameters zero."""
    return build_lifting(d, LiftingParams.zero(d), verify=False)


# ---------------------------------------------------------------- free smash algebras


class FreeSmash:
    """T(W)#kG for W spanned by letters w_k of G-weight chi_k, G-degree h_k.

    Elements are dicts (word, g) -> Scalar; g w = chi_w(g) w g; letters are
    skew-primitive: Delta(w) = w (x) 1 + h_w (x) w.  Words whose x-degree
    exceeds the cap raise a BudgetError instead of being truncated.
    """

    def __init__(self, d: DiagonalDatum, letters: list, degree_cap: int):
        self.d = d
        self.G = d.group
        self.letters = letters  # list of (chi, h, degree)
        self.degree_cap = degree_cap
        self._dmemo: dict = {}

    def one(self) -> dict:
        return {((), self.G.identity): get_field().one}

    def letter(self, k: int) -> dict:
        return {((k,), self.G.identity): get_field().one}

    def group_element(self, g) -> dict:
        return {((), self.G.element(g)): get_field().one}

    def degree(self, word) -> int:
        return sum(self.letters[k][2] for k in word)

    def _check(self, word):
        if self.degree(word) > self.degree_cap:
            raise BudgetError(f"element of degree {self.degree(word)} exceeds the degree cap {self.degree_cap}")

    def mul(self, a: dict, b: dict) -> dict:
        out: dict = {}
        d = self.d
        for (w1, g), x in a.items():
            for (w2, h), y in b.items():
                w = w1 + w2
                self._check(w)
                e = sum(d.char_exp(self.letters[k][0], g) for k in w2)
                add_scaled(out, {(w, self.G.mul(g, h)): x * y}, d.root(e))
        return out

    def add(self, a: dict, b: dict, c=1) -> dict:
        out = dict(a)
        add_scaled(out, b, c)
        return out

    def tensor_mul(self, s: dict, t: dict) -> dict:
        out: dict = {}
        for (a, b), x in s.items():
            for (c, dd), y in t.items():
                left = self.mul({a: get_field().one}, {c: get_field().one})
                right = self.mul({b: get_field().one}, {dd: get_field().one})
                for k, u in left.items():
                    for l, v in right.items():
                        add_scaled(out, {(k, l): u * v}, x * y)
        return out

    def _delta_word(self, w: tuple) -> dict:
        r = self._dmemo.get(w)
        if r is not None:
            return r
        F = get_field()
        e = self.G.identity
        if not w:
            r = {(((), e), ((), e)): F.one}
        else:
            k = w[-1]
            chi, h, _ = self.letters[k]
            dk = {(((k,), e), ((), e)): F.one, (((), h), ((k,), e)): F.one}
            r = self.tensor_mul(self._delta_word(w[:-1]), dk)
        self._dmemo[w] = r
        return r

    def comul(self, a: dict) -> dict:
        out: dict = {}
        F = get_field()
        for (w, g), x in a.items():
            gg = {(((), g), ((), g)): F.one}
            add_scaled(out, self.tensor_mul(self._delta_word(w), gg), x)
        return out

    def comul2(self, a: dict) -> dict:
        """(Delta (x) 1) Delta as a dict (b1, b2, b3) -> Scalar."""
        out: dict = {}
        for (u, v), x in self.comul(a).items():
            for (p, q), y in self.comul({u: get_field().one}).items():
                add_scaled(out, {(p, q, v): y}, x)
        return out

    def counit(self, a: dict) -> Scalar:
        total = get_field().zero
        for (w, g), x in a.items():
            if not w:
                total = total + x
        return total

    def antipode(self, a: dict) -> dict:
        """s(g) = g^{-1}, s(w) = -h_w^{-1} w, anti-multiplicative."""
        out: dict = {}
        G = self.G
        for (w, g), x in a.items():
            v = {((), G.inv(g)): get_field().one}
            for k in reversed(w):
                h = self.letters[k][1]
                sk = self.mul({((), G.inv(h)): get_field().one}, {((k,), G.identity): -get_field().one})
                v = self.mul(v, sk)
            add_scaled(out, v, x)
        return out

    def render(self, a: dict, names: list) -> str:
        if not a:
            return "0"
        parts = []
        for (w, g) in sorted(a):
            c = a[(w, g)]
            mono = " ".join([names[k] for k in w] + ([render_pbw_label(((), g))] if any(g) else []))
            mono = mono or "1"
            parts.append(mono if c == 1 else f"[{c}] {mono}")
        return " + ".join(parts)


def x_smash(d: DiagonalDatum, degree_cap: int) -> FreeSmash:
    """T(V)#kG on the x-letters."""
    return FreeSmash(d, [(d.chi[i], d.g[i], 1) for i in range(d.theta)], degree_cap)


def default_degree_cap(d: DiagonalDatum) -> int:
    return 2 * max(d.N) * d.theta + 2


# ---------------------------------------------------------------- K(D) and Alg_G(K, k)


@dataclass
class ZGenerator:
    name: str
    kind: str  # "power" or "link"
    indices: tuple
    weight: tuple  # eta, a character of G
    grade: tuple  # h, a group element
    degree: int
    expansion: dict  # letter words -> Scalar in T(V)


@dataclass
class KData:
    datum: DiagonalDatum
    generators: list
    f: list  # value of f on each generator
    smash: FreeSmash
    certificates: dict

    def index(self, name: str) -> int:
        for k, z in enumerate(self.generators):
            if z.name == name:
                return k
        raise InputError(f"unknown K generator {name!r}")

    def z(self, name: str) -> dict:
        return self.smash.letter(self.index(name))

    def names(self) -> list:
        return [z.name for z in self.generators]

    def with_f(self, values: list) -> KData:
        return KData(self.datum, self.generators, list(values), self.smash, self.certificates)


def k_generators(d: DiagonalDatum) -> list:
    G = d.group
    F = get_field()
    gens = []
    for i in range(d.theta):
        gens.append(ZGenerator(f"z{i + 1}", "power", (i,), G.pow(d.chi[i], d.N[i]),
                               G.pow(d.g[i], d.N[i]), d.N[i], {(i,) * d.N[i]: F.one}))
    for i in range(d.theta):
        for j in range(i + 1, d.theta):
            zij = braided_commutator(d, letter(d, i), letter(d, j))
            gens.append(ZGenerator(f"z{i + 1}{j + 1}", "link", (i, j), G.mul(d.chi[i], d.chi[j]),
                                   G.mul(d.g[i], d.g[j]), 2, zij))
    return gens


def build_K_and_f(d: DiagonalDatum, p: LiftingParams, degree_cap: int | None = None) -> KData:
    """z-generators of K(D) with f(z_i) = a_ii, f(z_ij) = a_ij, certified skew-primitive."""
    cap = degree_cap or default_degree_cap(d)
    gens = k_generators(d)
    if max(z.degree for z in gens) > cap:
        raise BudgetError(f"degree cap {cap} cannot hold the K generators")
    G = d.group
    X = x_smash(d, cap)
    F = get_field()
    certs = {}
    for z in gens:
        el = {(w, G.identity): c for w, c in z.expansion.items()}
        lhs = X.comul(el)
        rhs: dict = {}
        for (w, g), c in el.items():
            add_scaled(rhs, {((w, g), ((), G.identity)): c}, 1)
            add_scaled(rhs, {(((), z.grade), (w, g)): c}, 1)
        certs[f"skew_primitive[{z.name}]"] = lhs == rhs
    values = []
    for z in gens:
        v = p.a(*z.indices) if z.kind == "link" else p.a(z.indices[0], z.indices[0])
        if v and not G.is_trivial_character(z.weight):
            raise InputError(f"f({z.name}) must vanish: its weight is a nontrivial character")
        values.append(F.coerce(v))
    certs["G_invariant"] = all(not v or G.is_trivial_character(z.weight) for z, v in zip(gens, values))
    if not all(certs.values()):
        bad = [k for k, ok in certs.items() if not ok]
        raise PropertyFailure("K generators failed certification", witness=bad)
    smash = FreeSmash(d, [(z.weight, z.grade, z.degree) for z in gens], cap)
    return KData(d, gens, values, smash, certs)


def f_tilde(K: KData, values: list, a: dict) -> Scalar:
    """Algebra map on T(L)#kG with g -> 1 and z -> f(z)."""
    total = get_field().zero
    for (w, g), x in a.items():
        c = x
        for k in w:
            c = c * values[k]
            if not c:
                break
        total = total + c
    return total


def f_tilde_s(K: KData, values: list, a: dict) -> Scalar:
    return f_tilde(K, values, K.smash.antipode(a))


def theta(K: KData, element: dict, values: list | None = None) -> dict:
    """Theta(f)(y) = sum f(y_1) y_2 fs(y_3) on T(L)#kG."""
    values = K.f if values is None else values
    S = K.smash
    F = get_field()
    out: dict = {}
    fcache: dict = {}
    fscache: dict = {}
    for (b1, b2, b3), c in S.comul2(element).items():
        v1 = fcache.get(b1)
        if v1 is None:
            v1 = fcache[b1] = f_tilde(K, values, {b1: F.one})
        if not v1:
            continue
        v3 = fscache.get(b3)
        if v3 is None:
            v3 = fscache[b3] = f_tilde_s(K, values, {b3: F.one})
        if v3:
            add_scaled(out, {b2: c}, v1 * v3)
    return out


def convolve_f(K: KData, f1: list, f2: list) -> list:
    """(f1 * f2) on the generators: f1(z) f2(1) + f1(h) f2(z) = f1(z) + f2(z)."""
    out = []
    F = get_field()
    for k in range(len(K.generators)):
        z = K.smash.letter(k)
        total = F.zero
        for (u, v), c in K.smash.comul(z).items():
            total = total + c * f_tilde(K, f1, {u: F.one}) * f_tilde(K, f2, {v: F.one})
        out.append(total)
    return out


def f_antipode(K: KData, values: list) -> list:
    F = get_field()
    return [f_tilde_s(K, values, K.smash.letter(k)) for k in range(len(K.generators))]


def z_monomial(K: KData, exps) -> dict:
    """z_1^{a_1} ... z_p^{a_p} over the power generators."""
    out = K.smash.one()
    for k, a in enumerate(exps):
        for _ in range(a):
            out = K.smash.mul(out, K.smash.letter(k))
    return out


def coproduct_coefficients(K: KData, exps) -> dict:
    """t^a_{bc}: Delta(z^a) = z^a (x) 1 + h^a (x) z^a + sum t^a_{bc} z^b h^c (x) z^c."""
    G = K.datum.group
    gens = K.generators
    p = len(exps)
    out = {}
    for ((w1, g1), (w2, g2)), c in K.smash.comul(z_monomial(K, exps)).items():
        b = tuple(w1.count(k) for k in range(p))
        cc = tuple(w2.count(k) for k in range(p))
        if any(k >= p for k in w1 + w2) or g2 != G.identity:
            raise PropertyFailure("unexpected term in the coproduct of z^a")
        hc = G.identity
        for k in range(p):
            hc = G.mul(hc, G.pow(gens[k].grade, cc[k]))
        if g1 != hc or tuple(sorted(w1)) != w1 or tuple(sorted(w2)) != w2:
            raise PropertyFailure("coproduct term of z^a is not of the form z^b h^c (x) z^c")
        if any(b) and any(cc):
            out[(b, cc)] = c
    return out


def u_coefficients(K: KData, exps, values: list | None = None, _memo=None) -> dict:
    """u_a(f) = f(z^a)(1 - h^a) + sum t^a_{bc} f(z^b) u_c(f), an element of kG (dict g -> Scalar)."""
    values = K.f if values is None else values
    exps = tuple(exps)
    memo = {} if _memo is None else _memo
    if exps in memo:
        return memo[exps]
    G = K.datum.group
    F = get_field()
    gens = K.generators
    ha = G.identity
    fza = F.one
    for k, a in enumerate(exps):
        ha = G.mul(ha, G.pow(gens[k].grade, a))
        fza = fza * values[k] ** a
    out: dict = {}
    add_scaled(out, {G.identity: fza}, 1)
    add_scaled(out, {ha: -fza}, 1)
    if sum(exps) > 1:
        for (b, c), t in sorted(coproduct_coefficients(K, exps).items()):
            fzb = F.one
            for k, e in enumerate(b):
                fzb = fzb * values[k] ** e
            if fzb:
                add_scaled(out, u_coefficients(K, c, values, memo), t * fzb)
    memo[exps] = out
    return out


# ---------------------------------------------------------------- U(D, f)


def lifting_from_f(d: DiagonalDatum, values: dict | list, degree_cap: int | None = None) -> tuple:
    """U(D, f) = R#kG / (Theta(f)(z) for the z-generators), compared with H(a), a = f.

    ``values`` gives f on the z-generators (list in generator order, or dict name -> value).
    Returns (U, certificate).
    """
    F = get_field()
    G = d.group
    gens = k_generators(d)
    if isinstance(values, dict):
        vals = [F.coerce(values.get(z.name, 0)) for z in gens]
    else:
        vals = [F.coerce(v) for v in values]
    p = params_from_f(d, vals)
    K = build_K_and_f(d, p, degree_cap)
    images = {}
    swap = {}
    power = {}
    for k, z in enumerate(gens):
        img = theta(K, K.smash.letter(k), vals)
        rest = dict(img)
        add_scaled(rest, K.smash.letter(k), -1)
        if any(w for (w, _) in rest):
            raise PropertyFailure(f"Theta(f)({z.name}) has terms of positive degree besides {z.name}")
        corr = {g: c for (_, g), c in rest.items()}
        images[z.name] = corr
        if z.kind == "power":
            power[z.indices[0]] = {g: -c for g, c in corr.items()}
        else:
            i, j = z.indices
            qinv = d.q(i, j).inv()
            swap[(j, i)] = (qinv, {g: c * qinv for g, c in corr.items()})
    U = pbw_hopf_algebra(d, Rewriter(d, swap, power), name="U(D,f)")
    build_antipode(U)
    U.params = p
    Ha = build_lifting(d, p, verify=False)
    mismatch = None
    for i in range(U.dim):
        for j in range(U.dim):
            if U.mul(i, j) != Ha.mul(i, j):
                mismatch = {"args": [U.render_label(i), U.render_label(j)],
                            "U": U.render(U.mul(i, j)), "H": Ha.render(Ha.mul(i, j))}
                break
        if mismatch:
            break
    comul_equal = all(U.comul(i) == Ha.comul(i) for i in range(U.dim))
    cert = {
        "dictionary": "a_ii = f(z_i), a_ij = f(z_ij)",
        "theta_images": {name: {render_pbw_label(((), g)): str(c) for g, c in sorted(corr.items())}
                         for name, corr in images.items()},
        "u_agrees_with_theta": all(
            u_coefficients(K, tuple(1 if t == z.indices[0] else 0 for t in range(d.theta)), vals)
            == images[z.name] for z in gens if z.kind == "power"),
        "pairs_compared": U.dim * U.dim,
        "structure_constants_equal": mismatch is None,
        "comultiplication_equal": comul_equal,
        "first_mismatch": mismatch,
    }
    cert["ok"] = cert["structure_constants_equal"] and cert["comultiplication_equal"] and cert["u_agrees_with_theta"]
    return U, cert


def params_from_f(d: DiagonalDatum, vals: list) -> LiftingParams:
    gens = k_generators(d)
    diag = [get_field().zero] * d.theta
    link = {}
    for z, v in zip(gens, vals):
        if z.kind == "power":
            diag[z.indices[0]] = v
        elif v:
            link[z.indices] = v
    return LiftingParams(diag, link)


# ---------------------------------------------------------------- dual side


def commutator_subgroup_gens(d: DiagonalDatum, p: LiftingParams) -> list:
    """h_i = g_i^{N_i} for a_ii != 0 and g_i g_j for a_ij != 0."""
    G = d.group
    gens = []
    for i in range(d.theta):
        if p.a(i, i):
            gens.append(G.pow(d.g[i], d.N[i]))
        for j in range(i + 1, d.theta):
            if p.a(i, j):
                gens.append(G.mul(d.g[i], d.g[j]))
    return gens


def dual_invariants(H: HopfAlgebra) -> dict:
    d = H.datum
    G = d.group
    Gp = generated_subgroup(G, commutator_subgroup_gens(d, H.params))
    ann = annihilator(G, Gp)
    gl = grouplikes_of_dual(H)
    rad = radical(H)
    cor = H.dim - len(rad)
    return {
        "dim": H.dim,
        "G_prime_order": len(Gp),
        "annihilator_order": len(ann),
        "grouplikes_of_dual": len(gl),
        "grouplikes_match_annihilator": sorted(gl) == sorted(ann),
        "dim_radical": len(rad),
        "dim_coradical_of_dual": cor,
        "kG_meets_radical": contains_group_combination(H, rad),
        "dual_pointed": cor == len(gl),
    }


def build_irrep(p: int, r: int, psi_sign: int = 1) -> dict:
    """r-dimensional irreducible representation of the p^3-dimensional lifting
    g^p = 1, gx = xi x g, gy = xi^{-1} y g, x^p = 0 = y^p, xy - xi^{-1} yx = g^2 - 1.

    Session field must contain the p-th roots of unity; psi = +-xi^{(1-r)(p+1)/2}.
    """
    F = get_field()
    if F.E % p:
        raise ConfigError(f"session field Q(zeta_{F.E}) does not contain the {p}-th roots of unity")
    if not 1 <= r <= p:
        raise InputError(f"representation dimension must lie in 1..{p}, got {r}")
    xi = F.root(F.E // p)
    psi = xi ** (((1 - r) * (p + 1) // 2) % p)
    if psi_sign < 0:
        psi = -psi
    if psi * psi != xi ** ((1 - r) % p):
        raise ConfigError("no psi with psi^2 = xi^(1-r) in the session field")
    zero, one = F.zero, F.one

    def mat():
        return [[zero] * r for _ in range(r)]
    Gm = mat()
    X = mat()
    Y = mat()
    for k in range(r):
        Gm[k][k] = psi * xi ** k
    for k in range(r - 1):
        X[k + 1][k] = one
    ys = []
    for i in range(1, r):
        y = xi * (1 - xi ** (i - r)) * (xi ** i - 1) * (xi - 1).inv()
        ys.append(y)
        Y[i - 1][i] = y
    ys_alt = [(xi - psi * psi * xi ** i) * (xi ** i - 1) * (xi - 1).inv() for i in range(1, r)]

    def mm(A, B):
        return [[sum((A[i][k] * B[k][j] for k in range(r) if A[i][k] and B[k][j]), zero)
                 for j in range(r)] for i in range(r)]

    def mpow(A, n):
        R = ident()
        for _ in range(n):
            R = mm(R, A)
        return R

    def ident():
        I = mat()
        for k in range(r):
            I[k][k] = one
        return I

    def lin(a, A, b, B):
        return [[A[i][j] * a + B[i][j] * b for j in range(r)] for i in range(r)]

    I = ident()
    Z = mat()
    rel = {
        "g^p = 1": mpow(Gm, p) == I,
        "gx = xi xg": mm(Gm, X) == lin(xi, mm(X, Gm), 0, Z),
        "gy = xi^-1 yg": mm(Gm, Y) == lin(xi.inv(), mm(Y, Gm), 0, Z),
        "x^p = 0": mpow(X, p) == Z,
        "y^p = 0": mpow(Y, p) == Z,
        "xy - xi^-1 yx = g^2 - 1": lin(1, mm(X, Y), -xi.inv(), mm(Y, X)) == lin(1, mm(Gm, Gm), -1, I),
    }
    # irreducibility: span of G^i X^j Y^k must be all of M_r
    rows = []
    Gp = [mpow(Gm, i) for i in range(p)]
    Xp = [mpow(X, j) for j in range(p)]
    Yp = [mpow(Y, k) for k in range(p)]
    for i, j, k in product(range(p), repeat=3):
        M = mm(mm(Gp[i], Xp[j]), Yp[k])
        rows.append({(a, b): M[a][b] for a in range(r) for b in range(r) if M[a][b]})
    span = rank(rows)
    return {
        "p": p, "r": r, "psi": psi, "xi": xi, "G": Gm, "X": X, "Y": Y, "y": ys,
        "relations": rel, "relations_hold": all(rel.values()),
        "y_formula_consistent": ys == ys_alt,
        "span_dim": span, "irreducible": span == r * r,
    }


# ---------------------------------------------------------------- example data


def cyclic_datum(n: int, gens: list, require_qls: bool = True) -> DiagonalDatum:
    """Datum over Z/n from a list of (g exponent, chi exponent) pairs."""
    G = FiniteAbelianGroup([n])
    return DiagonalDatum(G, tuple((g,) for g, _ in gens), tuple((c,) for _, c in gens), require_qls)


def taft_lifting_datum(n: int = 3, p: int = 2) -> DiagonalDatum:
    """Rank one over Z/(np): g x = q x g with q = zeta_{np}^p of order n."""
    return cyclic_datum(n * p, [(1, p)])


def linked_plane_datum(p: int = 3) -> DiagonalDatum:
    """Z/p^2, g x = q x g, g y = q^{-1} y g with q of order p."""
    return cyclic_datum(p * p, [(1, p), (1, -p)])


def linked_plane_params(p: int, a, b) -> LiftingParams:
    return LiftingParams([a, a], {(0, 1): b})


def small_linked_datum(p: int = 3) -> DiagonalDatum:
    """Z/p, g x = q x g, g y = q^{-1} y g (dimension p^3)."""
    return cyclic_datum(p, [(1, 1), (1, -1)])


def even_datum(p: int = 3) -> DiagonalDatum:
    """Z/2p with q = zeta_{2p}^2 (dimension 2p^3)."""
    return cyclic_datum(2 * p, [(1, 2), (1, -2)])


def coprime_datum(r: int, s: int) -> DiagonalDatum:
    """Z/rs with g x = chi^r(g) x g, g y = chi^{-r}(g) y g; truncation order s."""
    return cyclic_datum(r * s, [(1, r), (1, -r)])
