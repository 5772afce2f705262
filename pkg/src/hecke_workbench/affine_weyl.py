"""
The extended affine Weyl group ``Lambda x| W_0``.

An element is stored in canonical form ``(lambda, v)`` and stands for
``t_lambda * v``; it acts on the coweight space by ``x -> v(x) + lambda``.
The base alcove sits in the anti-dominant chamber, so the simple affine
roots are ``-alpha_i`` and ``theta + 1`` and ``s0 = t_{-theta^vee} s_theta``.
With this choice ``T_lambda`` is the Bernstein element for anti-dominant
``lambda``.

>>> G = AffineWeylGroup(CartanType("A", 1), "sc")
>>> G.length(G.translation((2,)))
2
>>> len(G.enumerate_ball(3))
7
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

from .root_data import (
    CartanType, DiagramAut, RootSystem, build_root_system, node_names,
)

__all__ = ["ExtWeylElt", "OmegaElt", "AffineWeylGroup", "LATTICES"]

LATTICES = ("sc", "ad")

Vector = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]


@dataclass(frozen=True, order=True)
class ExtWeylElt:
    """``t_trans * fin``; ``fin`` is the integer matrix of the finite part on
    coweight coordinates (column-vector convention)."""
    trans: Vector
    fin: Matrix


@dataclass(frozen=True)
class OmegaElt:
    elt: ExtWeylElt
    diagram_action: DiagramAut


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = tuple(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def _apply(m: Matrix, v: Vector) -> Vector:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in m)


def _apply_transpose(m: Matrix, v: Vector) -> Vector:
    n = len(m)
    return tuple(sum(m[i][j] * v[i] for i in range(n)) for j in range(n))


@lru_cache(maxsize=None)
def _inverse(m: Matrix) -> Matrix:
    n = len(m)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(m)]
    for c in range(n):
        p = next(r for r in range(c, n) if aug[r][c])
        aug[c], aug[p] = aug[p], aug[c]
        piv = aug[c][c]
        aug[c] = [x / piv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[c])]
    return tuple(tuple(int(x) for x in row[n:]) for row in aug)


def _is_pos_root(beta: Vector) -> bool:
    return any(x > 0 for x in beta)


def _affine_positive(beta: Vector, k: int) -> bool:
    if _is_pos_root(beta):
        return k >= 1
    return k >= 0


class AffineWeylGroup:
    """Extended affine Weyl group for a root system and a lattice choice.

    ``lattice="sc"`` uses the coroot lattice (so the group is the affine
    Weyl group itself); ``lattice="ad"`` uses the full coweight lattice.
    """

    def __init__(self, cartan: CartanType, lattice: str = "sc", ball_bound: int = 10):
        if lattice not in LATTICES:
            raise ValueError(f"lattice must be one of {LATTICES}, got {lattice!r}")
        self.cartan = cartan
        self.lattice = lattice
        self.ball_bound = ball_bound
        self.rs: RootSystem = build_root_system(cartan)
        l = cartan.rank
        self.rank = l
        self.nodes = node_names(l)
        self.node_index = {s: i for i, s in enumerate(self.nodes)}
        ident = tuple(tuple(int(i == j) for j in range(l)) for i in range(l))
        self.identity = ExtWeylElt((0,) * l, ident)
        a = self.rs.cartan_matrix
        theta = self.rs.highest_root
        theta_vee = self.rs.coroots[theta]
        self.simple_affine: dict[str, tuple[Vector, int]] = {}
        self.gens: dict[str, ExtWeylElt] = {}
        for i in range(l):
            m = tuple(tuple(int(j == k) - (a[i][j] if k == i else 0) for k in range(l))
                      for j in range(l))
            name = self.nodes[i]
            self.gens[name] = ExtWeylElt((0,) * l, m)
            self.simple_affine[name] = (tuple(-x for x in self.rs.simple_roots[i]), 0)
        s_theta = tuple(tuple(int(j == k) - theta_vee[j] * theta[k] for k in range(l))
                        for j in range(l))
        self.gens["s0"] = ExtWeylElt(tuple(-x for x in theta_vee), s_theta)
        self.simple_affine["s0"] = (theta, 1)
        self._rmul_cache: dict = {}
        self._word_cache: dict = {}

    # group law ----------------------------------------------------------

    def mul(self, x: ExtWeylElt, y: ExtWeylElt) -> ExtWeylElt:
        trans = tuple(a + b for a, b in zip(x.trans, _apply(x.fin, y.trans)))
        return ExtWeylElt(trans, _matmul(x.fin, y.fin))

    def inverse(self, x: ExtWeylElt) -> ExtWeylElt:
        inv = _inverse(x.fin)
        return ExtWeylElt(tuple(-c for c in _apply(inv, x.trans)), inv)

    def product(self, elts) -> ExtWeylElt:
        out = self.identity
        for e in elts:
            out = self.mul(out, e)
        return out

    def from_word(self, word, u: ExtWeylElt | None = None) -> ExtWeylElt:
        out = self.identity if u is None else u
        for s in word:
            out = self.mul(out, self.gens[s])
        return out

    def in_lattice(self, lam) -> bool:
        lam = tuple(int(x) for x in lam)
        if len(lam) != self.rank:
            return False
        return self.lattice == "ad" or self.rs.in_coroot_lattice(lam)

    def translation(self, lam) -> ExtWeylElt:
        lam = tuple(int(x) for x in lam)
        if not self.in_lattice(lam):
            raise ValueError(f"{lam} is not in the {self.lattice} lattice of {self.cartan}")
        return ExtWeylElt(lam, self.identity.fin)

    def is_translation(self, w: ExtWeylElt) -> bool:
        return w.fin == self.identity.fin

    # affine roots and length ---------------------------------------------

    def act_on_root(self, w: ExtWeylElt, beta: Vector, k: int) -> tuple[Vector, int]:
        """``w . (beta + k)`` where affine roots are functions on coweights."""
        vb = _apply_transpose(_inverse(w.fin), beta)
        return vb, k - sum(x * y for x, y in zip(w.trans, vb))

    def length(self, w: ExtWeylElt) -> int:
        total = 0
        for alpha in self.rs.positive_roots:
            pair = sum(x * y for x, y in zip(w.trans, alpha))
            if _is_pos_root(_apply_transpose(w.fin, alpha)):
                total += abs(pair)
            else:
                total += abs(pair + 1)
        return total

    def is_right_descent(self, w: ExtWeylElt, s: str) -> bool:
        beta, k = self.act_on_root(w, *self.simple_affine[s])
        return not _affine_positive(beta, k)

    def is_left_descent(self, w: ExtWeylElt, s: str) -> bool:
        return self.is_right_descent(self.inverse(w), s)

    def right_mul_simple(self, w: ExtWeylElt, s: str) -> tuple[ExtWeylElt, bool]:
        """``(ws, l(ws) == l(w) + 1)``."""
        key = (w, s)
        hit = self._rmul_cache.get(key)
        if hit is None:
            hit = (self.mul(w, self.gens[s]), not self.is_right_descent(w, s))
            self._rmul_cache[key] = hit
        return hit

    # length zero part ------------------------------------------------------

    def omega_part(self, w: ExtWeylElt) -> ExtWeylElt:
        """The element ``u`` of length zero with ``w in u W``."""
        while True:
            for s in self.nodes:
                if self.is_right_descent(w, s):
                    w = self.mul(w, self.gens[s])
                    break
            else:
                return w

    def diagram_action(self, u: ExtWeylElt) -> DiagramAut:
        """The permutation of S induced by conjugation with ``u``."""
        lookup = {v: s for s, v in self.simple_affine.items()}
        out = {}
        for s in self.nodes:
            img = self.act_on_root(u, *self.simple_affine[s])
            if img not in lookup:
                raise ValueError("element does not have length zero")
            out[s] = lookup[img]
        return DiagramAut.from_dict(out)

    @cached_property
    def omega_group(self) -> list[OmegaElt]:
        """Length-zero elements, identity first, then in a fixed order."""
        elts = [self.identity]
        if self.lattice == "ad":
            gens = [self.omega_part(self.translation(w)) for w in self.rs.fundamental_coweights]
            seen = {self.identity}
            frontier = [self.identity]
            while frontier:
                nxt = []
                for x in frontier:
                    for g in gens:
                        y = self.mul(x, g)
                        if y not in seen:
                            seen.add(y)
                            nxt.append(y)
                            elts.append(y)
                frontier = nxt
        return [OmegaElt(u, self.diagram_action(u)) for u in elts]

    @cached_property
    def _omega_index(self) -> dict[ExtWeylElt, int]:
        return {o.elt: i for i, o in enumerate(self.omega_group)}

    def omega_of(self, u: ExtWeylElt) -> OmegaElt:
        return self.omega_group[self._omega_index[u]]

    # reduced words ---------------------------------------------------------

    def reduced_word(self, w: ExtWeylElt) -> tuple[ExtWeylElt, tuple[str, ...]]:
        """``w = u * s_1 ... s_n`` with ``u`` of length zero and the
        lexicographically smallest reduced word (affine node last)."""
        hit = self._word_cache.get(w)
        if hit is not None:
            return hit
        u = self.omega_part(w)
        x = self.mul(self.inverse(u), w)
        word = []
        while x != self.identity:
            xinv = self.inverse(x)
            for s in self.nodes:
                if self.is_right_descent(xinv, s):
                    word.append(s)
                    x = self.mul(self.gens[s], x)
                    break
            else:  # pragma: no cover - an element of W without descents is trivial
                raise AssertionError("no descent found")
        hit = (u, tuple(word))
        self._word_cache[w] = hit
        return hit

    def format(self, w: ExtWeylElt) -> str:
        u, word = self.reduced_word(w)
        head = str(self.omega_of(u).diagram_action) if self.lattice == "ad" else "id"
        return f"{head} | {' '.join(word)}".rstrip()

    def sort_key(self, w: ExtWeylElt):
        u, word = self.reduced_word(w)
        return (self._omega_index[u], len(word), tuple(self.node_index[s] for s in word))

    # enumeration -------------------------------------------------------------

    def enumerate_ball(self, radius: int) -> dict[ExtWeylElt, int]:
        """All elements of length at most ``radius`` with their BFS depth,
        growing from the length-zero elements by right multiplication by S."""
        if radius < 0 or radius > self.ball_bound:
            raise ValueError(f"ball radius must lie in [0, {self.ball_bound}]")
        depth = {o.elt: 0 for o in self.omega_group}
        frontier = list(depth)
        for r in range(1, radius + 1):
            nxt = []
            for x in frontier:
                for s in self.nodes:
                    y = self.mul(x, self.gens[s])
                    if y not in depth:
                        depth[y] = r
                        nxt.append(y)
            frontier = nxt
        return depth

    # dominant monoid ---------------------------------------------------------

    def ray_multiple(self, i: int) -> int:
        """Smallest k > 0 with k * omega_i^vee in the lattice."""
        k = 1
        while not self.in_lattice(tuple(k * int(i == j) for j in range(self.rank))):
            k += 1
        return k

    @cached_property
    def dominant_monoid_generators(self) -> tuple[Vector, ...]:
        """Hilbert basis of the dominant cone intersected with the lattice."""
        l = self.rank
        ks = [self.ray_multiple(i) for i in range(l)]
        cands = {tuple(k * int(i == j) for j in range(l)) for i, k in enumerate(ks)}
        for c in itertools.product(*(range(k) for k in ks)):
            if any(c) and self.in_lattice(c):
                cands.add(c)
        cands = sorted(cands, key=lambda c: (sum(c), c))

        def reducible(x):
            for y in cands:
                if y == x or sum(y) >= sum(x):
                    continue
                rest = tuple(a - b for a, b in zip(x, y))
                if all(r >= 0 for r in rest) and self.in_lattice(rest):
                    return True
            return False

        return tuple(c for c in cands if not reducible(c))
