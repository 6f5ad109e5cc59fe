"""Finite abelian groups Z/m_1 x ... x Z/m_k with their characters.

Group elements and characters are both plain tuples of exponents.  An
element (g_1..g_k) stands for prod t_i^{g_i}; a character (c_1..c_k) sends
t_i to zeta_{m_i}^{c_i}, so chi(g) = zeta_E^{sum (E/m_i) c_i g_i}.
"""
from __future__ import annotations

from functools import reduce
from itertools import product
from math import gcd, lcm

from .errors import ConfigError, InputError
from .scalars import Scalar, get_field

GroupElement = tuple
Character = tuple


class FiniteAbelianGroup:
    def __init__(self, orders):
        orders = tuple(int(m) for m in orders)
        if not orders or any(m < 1 for m in orders):
            raise InputError(f"group factor orders must be positive integers, got {list(orders)}")
        self.orders = orders
        self.rank = len(orders)
        self.order = reduce(lambda a, b: a * b, orders, 1)
        self.exponent = reduce(lcm, orders, 1)
        self.identity = (0,) * self.rank
        self._elements = None

    def __eq__(self, other):
        return isinstance(other, FiniteAbelianGroup) and other.orders == self.orders

    def __hash__(self):
        return hash(self.orders)

    def __repr__(self):
        return "FiniteAbelianGroup(" + " x ".join(f"Z/{m}" for m in self.orders) + ")"

    # elements ---------------------------------------------------------
    def element(self, exps) -> GroupElement:
        exps = tuple(int(e) for e in exps)
        if len(exps) != self.rank:
            raise InputError(f"element {list(exps)} has {len(exps)} coordinates, group has {self.rank}")
        return tuple(e % m for e, m in zip(exps, self.orders))

    character = element

    def elements(self) -> list:
        if self._elements is None:
            self._elements = [tuple(t) for t in product(*(range(m) for m in self.orders))]
        return self._elements

    characters = elements

    def mul(self, a, b) -> GroupElement:
        return tuple((x + y) % m for x, y, m in zip(a, b, self.orders))

    def inv(self, a) -> GroupElement:
        return tuple((-x) % m for x, m in zip(a, self.orders))

    def pow(self, a, k: int) -> GroupElement:
        return tuple((x * k) % m for x, m in zip(a, self.orders))

    def element_order(self, a) -> int:
        return reduce(lcm, (m // gcd(m, x) for x, m in zip(a, self.orders)), 1)

    # pairing ----------------------------------------------------------
    def check_order(self, E: int) -> None:
        if E % self.exponent:
            raise ConfigError(f"group exponent {self.exponent} does not divide the cyclotomic order {E}")

    def pairing_exponent(self, chi, g, E: int | None = None) -> int:
        """k with chi(g) = zeta_E^k."""
        if E is None:
            E = get_field().E
        if len(chi) != self.rank or len(g) != self.rank:
            raise InputError("character and element do not belong to this group")
        self.check_order(E)
        return sum((E // m) * c * x for c, x, m in zip(chi, g, self.orders)) % E

    def char_eval(self, chi, g) -> Scalar:
        F = get_field()
        return F.root(self.pairing_exponent(chi, g, F.E))

    def is_trivial_character(self, chi) -> bool:
        return all(c % m == 0 for c, m in zip(chi, self.orders))


def char_eval(G: FiniteAbelianGroup, chi, g) -> Scalar:
    return G.char_eval(chi, g)


def generated_subgroup(G: FiniteAbelianGroup, gens) -> list:
    """Closure of gens under multiplication, by breadth-first orbit enumeration."""
    gens = [G.element(x) for x in gens]
    seen = {G.identity}
    frontier = [G.identity]
    while frontier:
        nxt = []
        for a in frontier:
            for s in gens:
                b = G.mul(a, s)
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return sorted(seen)


def annihilator(G: FiniteAbelianGroup, H) -> list:
    """Characters of G that are trivial on every element of H."""
    E = G.exponent
    return [chi for chi in G.characters()
            if all(G.pairing_exponent(chi, h, E) == 0 for h in H)]


def subgroup_and_quotient(G: FiniteAbelianGroup, gens):
    """(subgroup generated by gens, characters trivial on it = dual of the quotient)."""
    H = generated_subgroup(G, gens)
    return H, annihilator(G, H)
