"""
Generalized affine Hecke algebras over Z[q^(1/2), q^(-1/2)] in the T-basis.

>>> alg = HeckeAlgebra.for_datum(make_datum("A1", (1, 1)))
>>> t = alg.T_s("s1")
>>> t * t == alg.q_s("s1") * alg.one + (alg.q_s("s1") - 1) * t
True
>>> E = alg.bernstein_E((-2,))
>>> E == alg.T(alg.W.translation((-2,)))
True
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .affine_weyl import AffineWeylGroup, ExtWeylElt
from .laurent import HalfLaurent
from .root_data import (
    AffineDynkin, CartanType, DiagramAut, affine_diagram, diagram_automorphisms,
    parse_cartan, weyl_orbit,
)

__all__ = [
    "AlgebraDatum", "make_datum", "HeckeAlgebra", "HeckeElt", "NotInCommutativeSubring",
    "PSI_CHOICES",
]

PSI_CHOICES = ("trivial", "full", "swap-endpoints")

Vector = tuple[int, ...]


class NotInCommutativeSubring(ValueError):
    """Raised when an element is not a combination of Bernstein elements."""


@lru_cache(maxsize=None)
def _group(cartan: CartanType, lattice: str) -> AffineWeylGroup:
    return AffineWeylGroup(cartan, lattice)


@dataclass(frozen=True)
class AlgebraDatum:
    dyn: AffineDynkin
    lattice: str
    # the diagram automorphisms realized by Omega, identity included
    psi: tuple[DiagramAut, ...]

    @property
    def cartan(self) -> CartanType:
        return self.dyn.cartan

    @property
    def psi_trivial(self) -> bool:
        return all(g.is_identity() for g in self.psi)

    def describe(self) -> str:
        params = ",".join(str(x) for x in self.dyn.component_params())
        psi = "trivial" if self.psi_trivial else f"order {len(self.psi)}"
        return f"{self.cartan} params={params} lattice={self.lattice} psi={psi}"


def _preserves(dyn: AffineDynkin, g: DiagramAut) -> bool:
    return all(dyn.params[s] == dyn.params[g(s)] for s in dyn.nodes)


def make_datum(cartan, params=None, lattice: str = "sc", psi: str | None = None) -> AlgebraDatum:
    """Build a datum from a type, parameters, lattice and a named Psi.

    ``psi="full"`` is the parameter-preserving part of the diagram action of
    the length-zero group of the coweight lattice; ``"swap-endpoints"`` is
    the same group, allowed only where it is the endpoint swap of type C or
    the node swap of type A1.  With ``lattice="ad"`` the group is realized
    inside the algebra and must preserve the parameters.
    """
    if isinstance(cartan, str):
        cartan = parse_cartan(cartan)
    dyn = affine_diagram(cartan, params)
    if psi is None:
        psi = "full" if lattice == "ad" else "trivial"
    if psi not in PSI_CHOICES:
        raise ValueError(f"psi must be one of {PSI_CHOICES}, got {psi!r}")
    if lattice not in ("sc", "ad"):
        raise ValueError(f"lattice must be 'sc' or 'ad', got {lattice!r}")
    ad_image = [o.diagram_action for o in _group(cartan, "ad").omega_group]
    if lattice == "ad":
        if not all(_preserves(dyn, g) for g in ad_image):
            raise ValueError("lattice=ad: Omega does not preserve the parameters")
        if psi == "trivial" and len(ad_image) > 1:
            raise ValueError("psi=trivial is incompatible with lattice=ad")
    if psi == "trivial":
        group = (ad_image[0],)
    else:
        group = tuple(g for g in ad_image if _preserves(dyn, g))
        if psi == "swap-endpoints":
            if cartan.family not in "AC" or (cartan.family == "A" and cartan.rank != 1):
                raise ValueError(f"psi=swap-endpoints is not defined for {cartan}")
            if len(group) != 2:
                raise ValueError("psi=swap-endpoints: the endpoint parameters differ")
    return AlgebraDatum(dyn=dyn, lattice=lattice, psi=group)


class HeckeElt:
    """A finite Z[q^(+-1/2)]-combination of basis elements ``T_w``."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: HeckeAlgebra, terms: dict[ExtWeylElt, HalfLaurent] | None = None):
        self.alg = alg
        self.terms = {w: c for w, c in (terms or {}).items() if c}

    def _check(self, other: HeckeElt):
        if other.alg is not self.alg:
            raise ValueError("mixed datum: elements belong to different algebras")

    def __add__(self, other):
        if isinstance(other, (int, HalfLaurent)):
            other = self.alg.one * other
        if not isinstance(other, HeckeElt):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return HeckeElt(self.alg, out)

    __radd__ = __add__

    def __neg__(self):
        return HeckeElt(self.alg, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, HalfLaurent)):
            other = HalfLaurent.coerce(other)
            return HeckeElt(self.alg, {w: c * other for w, c in self.terms.items()})
        if not isinstance(other, HeckeElt):
            return NotImplemented
        self._check(other)
        return self.alg.multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, HalfLaurent)):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.alg.one * other
        if not isinstance(other, HeckeElt):
            return NotImplemented
        return self.alg is other.alg and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, w: ExtWeylElt) -> HalfLaurent:
        return self.terms.get(w, HalfLaurent())

    def dump(self) -> list[tuple[str, str]]:
        """Deterministic list of (element, coefficient) strings."""
        W = self.alg.W
        return [(W.format(w), str(self.terms[w]))
                for w in sorted(self.terms, key=W.sort_key)]

    def __repr__(self):
        return " + ".join(f"({c})*T[{w}]" for w, c in self.dump()) or "0"


class HeckeAlgebra:
    """The algebra of one datum, with memoized Bernstein and central elements."""

    def __init__(self, datum: AlgebraDatum):
        self.datum = datum
        self.W = _group(datum.cartan, datum.lattice)
        self.params = dict(datum.dyn.params)
        self._q = {s: HalfLaurent.monomial(2 * d) for s, d in self.params.items()}
        self._qm1 = {s: q - 1 for s, q in self._q.items()}
        self._E: dict[Vector, HeckeElt] = {}
        self._z: dict[Vector, HeckeElt] = {}

    @classmethod
    def for_datum(cls, datum: AlgebraDatum) -> HeckeAlgebra:
        return _algebra(datum)

    # basis elements -------------------------------------------------------

    @property
    def one(self) -> HeckeElt:
        return HeckeElt(self, {self.W.identity: HalfLaurent.const(1)})

    @property
    def zero(self) -> HeckeElt:
        return HeckeElt(self)

    def T(self, w: ExtWeylElt) -> HeckeElt:
        return HeckeElt(self, {w: HalfLaurent.const(1)})

    def T_s(self, s: str) -> HeckeElt:
        return self.T(self.W.gens[s])

    def q_s(self, s: str) -> HalfLaurent:
        return self._q[s]

    def q_w(self, w: ExtWeylElt) -> HalfLaurent:
        _, word = self.W.reduced_word(w)
        return HalfLaurent.monomial(2 * sum(self.params[s] for s in word))

    def q_exponent(self, w: ExtWeylElt) -> int:
        _, word = self.W.reduced_word(w)
        return sum(self.params[s] for s in word)

    # multiplication ---------------------------------------------------------

    def _times_s(self, terms: dict, s: str) -> dict:
        q, qm1 = self._q[s], self._qm1[s]
        rmul = self.W.right_mul_simple
        out: dict = {}
        for w, c in terms.items():
            ws, up = rmul(w, s)
            if up:
                out[ws] = out[ws] + c if ws in out else c
            else:
                v = c * q
                out[ws] = out[ws] + v if ws in out else v
                v = c * qm1
                out[w] = out[w] + v if w in out else v
        return {w: c for w, c in out.items() if c}

    def _times_u(self, terms: dict, u: ExtWeylElt) -> dict:
        if u == self.W.identity:
            return terms
        mul = self.W.mul
        return {mul(w, u): c for w, c in terms.items()}

    def multiply(self, a: HeckeElt, b: HeckeElt) -> HeckeElt:
        # group b's terms by length-zero part, then walk a prefix tree of
        # reduced words so that shared prefixes are multiplied once
        by_u: dict = {}
        for w, c in b.terms.items():
            u, word = self.W.reduced_word(w)
            trie = by_u.setdefault(u, [None, {}])
            node = trie
            for s in word:
                node = node[1].setdefault(s, [None, {}])
            node[0] = c
        total: dict = {}

        def accumulate(terms, coeff):
            for w, c in terms.items():
                v = c * coeff
                total[w] = total[w] + v if w in total else v

        for u, trie in by_u.items():
            start = self._times_u(a.terms, u)
            stack = [(trie, start)]
            while stack:
                node, cur = stack.pop()
                if node[0] is not None:
                    accumulate(cur, node[0])
                for s, child in node[1].items():
                    stack.append((child, self._times_s(cur, s)))
        return HeckeElt(self, total)

    # star elements ------------------------------------------------------------

    def _star_terms(self, w: ExtWeylElt) -> dict:
        u, word = self.W.reduced_word(w)
        terms = {u: HalfLaurent.const(1)}
        for s in word:
            up = self._times_s(terms, s)
            qm1 = self._qm1[s]
            for x, c in terms.items():
                v = -(c * qm1)
                up[x] = up[x] + v if x in up else v
            terms = {x: c for x, c in up.items() if c}
        return terms

    def star(self, w: ExtWeylElt) -> HeckeElt:
        return HeckeElt(self, self._star_terms(w))

    def t_inverse(self, w: ExtWeylElt) -> HeckeElt:
        return self.star(self.W.inverse(w)) * self.q_w(w).inverse()

    def sign_star(self, a: HeckeElt) -> HeckeElt:
        """The automorphism ``T_w -> (-1)^l(w) T*_w``, extended linearly."""
        out = self.zero
        for w, c in a.terms.items():
            sign = -1 if len(self.W.reduced_word(w)[1]) % 2 else 1
            out = out + self.star(w) * (c * sign)
        return out

    # Bernstein elements ---------------------------------------------------------

    def dominant_part(self, lam: Vector) -> Vector:
        """A dominant lattice element lam+ with lam - lam+ anti-dominant."""
        out = [0] * len(lam)
        for i, c in enumerate(lam):
            if c > 0:
                k = self.W.ray_multiple(i)
                out[i] = -(-c // k) * k
        return tuple(out)

    def bernstein_E(self, lam, plus: Vector | None = None) -> HeckeElt:
        """``E_lambda``; ``plus`` optionally fixes the dominant part of the
        decomposition (the result does not depend on it)."""
        lam = tuple(int(x) for x in lam)
        if plus is None and lam in self._E:
            return self._E[lam]
        W = self.W
        t_lam = W.translation(lam)
        if plus is None:
            plus = self.dominant_part(lam)
        plus = tuple(plus)
        minus = tuple(a - b for a, b in zip(lam, plus))
        if any(x < 0 for x in plus) or any(x > 0 for x in minus):
            raise ValueError("decomposition must be dominant plus anti-dominant")
        tp, tm = W.translation(plus), W.translation(minus)
        terms = self._star_terms(tp)
        u, word = W.reduced_word(tm)
        terms = self._times_u(terms, u)
        for s in word:
            terms = self._times_s(terms, s)
        shift = self.q_exponent(tp) + self.q_exponent(tm) - self.q_exponent(t_lam)
        scale = HalfLaurent.monomial(-shift)
        out = HeckeElt(self, {w: c * scale for w, c in terms.items()})
        if plus == self.dominant_part(lam):
            self._E[lam] = out
        return out

    def theta(self, lam) -> HeckeElt:
        lam = tuple(int(x) for x in lam)
        e = self.q_exponent(self.W.translation(lam))
        return self.bernstein_E(lam) * HalfLaurent.monomial(-e)

    def orbit(self, mu) -> list[Vector]:
        return sorted(weyl_orbit(self.W.rs, tuple(mu)))

    def central_z(self, mu) -> HeckeElt:
        mu = tuple(int(x) for x in mu)
        if any(x < 0 for x in mu):
            raise ValueError(f"{mu} is not dominant")
        if not self.W.in_lattice(mu):
            raise ValueError(f"{mu} is not in the {self.W.lattice} lattice")
        if mu not in self._z:
            out = self.zero
            for lam in self.orbit(mu):
                out = out + self.bernstein_E(lam)
            self._z[mu] = out
        return self._z[mu]

    def e_basis_expand(self, a: HeckeElt) -> dict[Vector, HalfLaurent]:
        """Coefficients of ``a`` in the Bernstein basis."""
        W = self.W
        rest = dict(a.terms)
        out: dict[Vector, HalfLaurent] = {}
        lengths: dict = {}
        while rest:
            for w in rest:
                if w not in lengths:
                    lengths[w] = W.length(w)
            top = max(lengths[w] for w in rest)
            for w in [w for w in rest if lengths[w] == top]:
                if w not in rest:
                    continue
                if not W.is_translation(w):
                    raise NotInCommutativeSubring(
                        f"term {W.format(w)} is not a translation: not in commutative subring")
                E = self.bernstein_E(w.trans)
                lead = E.terms[w]
                try:
                    coeff = rest[w].exact_div(lead)
                except (ArithmeticError, ValueError) as exc:
                    raise NotInCommutativeSubring(str(exc)) from exc
                out[w.trans] = coeff
                for x, c in E.terms.items():
                    v = rest.get(x, 0) - c * coeff
                    if v:
                        rest[x] = v
                    else:
                        rest.pop(x, None)
        return out

    def commutes(self, a: HeckeElt, b: HeckeElt) -> bool:
        return (a * b - b * a).is_zero()

    def generators(self) -> list[tuple[str, HeckeElt]]:
        """``T_s`` for s in S and ``T_u`` for the length-zero elements."""
        gens = [(s, self.T_s(s)) for s in self.W.nodes]
        for o in self.W.omega_group[1:]:
            gens.append((str(o.diagram_action), self.T(o.elt)))
        return gens


@lru_cache(maxsize=None)
def _algebra(datum: AlgebraDatum) -> HeckeAlgebra:
    return HeckeAlgebra(datum)


def param_preserving_automorphisms(datum: AlgebraDatum) -> list[DiagramAut]:
    return diagram_automorphisms(datum.dyn)
