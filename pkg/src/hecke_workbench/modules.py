"""
Finite-rank right modules over a generalized affine Hecke algebra.

Modules act on row vectors: ``v . T_s = v @ M_s``.  Generic modules have
entries in Z[q^(+-1/2)]; reduced modules have entries in F_p (with
q^(1/2) -> 0) or F_c (with q^(1/2) -> r).

>>> from hecke_workbench.hecke import make_datum
>>> datum = make_datum("A1", (1, 1), psi="full")
>>> chars = enumerate_characters_generic(datum)
>>> len(chars), sum(extends_to_extended(c, datum) for c in chars)
(4, 2)
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .hecke import AlgebraDatum, HeckeAlgebra, HeckeElt
from .laurent import HalfLaurent, ModC, ModP, NotIntegralError, Real, abs_lt_one, specialize

__all__ = [
    "GENERIC", "FiniteRing", "HCharacter", "FinHeckeModule",
    "enumerate_characters_generic", "enumerate_characters_mod_p",
    "extends_to_extended", "character_module", "induce_character",
    "reflection_module", "b3_reflection_module", "reduce_mod_p",
    "is_supersingular", "is_discrete", "verify_module_relations",
    "is_simple_over_fraction_field", "restriction_characters", "direct_sum",
]


# coefficient rings ------------------------------------------------------------


class _GenericRing:
    name = "generic"

    def zero(self):
        return HalfLaurent()

    def one(self):
        return HalfLaurent.const(1)

    def coerce(self, h):
        return HalfLaurent.coerce(h)

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def is_zero(self, a) -> bool:
        return not a

    def __repr__(self):
        return "GENERIC"


GENERIC = _GenericRing()


@dataclass(frozen=True)
class FiniteRing:
    """F_c with a fixed image of q^(1/2)."""
    target: ModP | ModC

    @property
    def p(self) -> int:
        return self.target.p if isinstance(self.target, ModP) else self.target.c

    @property
    def name(self) -> str:
        if isinstance(self.target, ModP):
            return f"F_{self.target.p}"
        return f"F_{self.target.c}[q^(1/2)={self.target.r}]"

    def zero(self):
        return 0

    def one(self):
        return 1

    def coerce(self, h):
        if isinstance(h, int):
            return h % self.p
        return specialize(h, self.target)

    def add(self, a, b):
        return (a + b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def is_zero(self, a) -> bool:
        return a % self.p == 0


Matrix = tuple[tuple, ...]


def _mat_mul(ring, a: Matrix, b: Matrix) -> Matrix:
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = ring.zero()
            for t in range(k):
                x, y = a[i][t], b[t][j]
                if not ring.is_zero(x) and not ring.is_zero(y):
                    acc = ring.add(acc, ring.mul(x, y))
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def _mat_add(ring, a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(ring.add(x, y) for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def _mat_scale(ring, c, a: Matrix) -> Matrix:
    return tuple(tuple(ring.mul(c, x) for x in row) for row in a)


def _identity(ring, n: int) -> Matrix:
    return tuple(tuple(ring.one() if i == j else ring.zero() for j in range(n)) for i in range(n))


def _mat_eq(ring, a: Matrix, b: Matrix) -> bool:
    return all(ring.is_zero(ring.add(x, ring.mul(ring.coerce(-1), y)))
               for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def _is_zero_matrix(ring, a: Matrix) -> bool:
    return all(ring.is_zero(x) for row in a for x in row)


# characters -----------------------------------------------------------------


@dataclass(frozen=True)
class HCharacter:
    """A character of the finite-type-free part H, possibly with Omega values.

    ``values`` maps each node of S to a scalar (a HalfLaurent generically, a
    residue over a finite ring); ``omega_values`` maps each element of Psi
    to a scalar and is empty for characters of H alone.
    """
    datum: AlgebraDatum
    ring: object
    values: tuple[tuple[str, object], ...]
    omega_values: tuple[tuple[object, object], ...] = ()

    def value(self, s: str):
        return dict(self.values)[s]

    def as_dict(self) -> dict:
        return dict(self.values)

    @property
    def is_trivial(self) -> bool:
        alg = HeckeAlgebra.for_datum(self.datum)
        return all(v == self.ring.coerce(alg.q_s(s)) for s, v in self.values)

    @property
    def is_special(self) -> bool:
        minus = self.ring.coerce(HalfLaurent.const(-1))
        return all(v == minus for s, v in self.values)

    def component_values(self) -> tuple:
        """The value on each S_i (generic characters are constant there)."""
        d = dict(self.values)
        return tuple(d[c[0]] for c in self.datum.dyn.components)

    def label(self) -> str:
        if self.ring is GENERIC:
            parts = ["-1" if v == -1 else f"q^{v.max_half_exp() // 2}"
                     for v in self.component_values()]
            return "(" + ", ".join(parts) + ")"
        return "(" + ", ".join(str(v) for _, v in self.values) + ")"


def enumerate_characters_generic(datum: AlgebraDatum) -> list[HCharacter]:
    """The 2^m characters of H over Z[q^(+-1/2)], trivial first, special last."""
    dyn = datum.dyn
    out = []
    for choice in itertools.product((True, False), repeat=dyn.m):
        vals = {}
        for take_q, comp in zip(choice, dyn.components):
            for s in comp:
                vals[s] = HalfLaurent.monomial(2 * dyn.params[s]) if take_q else HalfLaurent.const(-1)
        out.append(HCharacter(datum, GENERIC, tuple((s, vals[s]) for s in dyn.nodes)))
    return out


def enumerate_characters_mod_p(datum: AlgebraDatum, p: int) -> list[HCharacter]:
    """The 2^|S| characters of H over F_p, values 0 or -1 on every node."""
    ring = FiniteRing(ModP(p))
    nodes = datum.dyn.nodes
    out = []
    for choice in itertools.product((0, p - 1), repeat=len(nodes)):
        out.append(HCharacter(datum, ring, tuple(zip(nodes, choice))))
    return out


def extends_to_extended(chi: HCharacter, datum: AlgebraDatum | None = None) -> bool:
    datum = datum or chi.datum
    vals = chi.as_dict()
    return all(vals[s] == vals[g(s)] for g in datum.psi for s in datum.dyn.nodes)


# modules --------------------------------------------------------------------


@dataclass(frozen=True)
class FinHeckeModule:
    datum: AlgebraDatum
    ring: object
    labels: tuple[str, ...]
    gen_action: dict = field(compare=False)
    # Psi element (DiagramAut) -> matrix; the identity is always present
    omega_action: dict = field(compare=False)
    lift: FinHeckeModule | None = field(default=None, compare=False)

    @property
    def rank(self) -> int:
        return len(self.labels)

    @property
    def algebra(self) -> HeckeAlgebra:
        return HeckeAlgebra.for_datum(self.datum)

    def q_s(self, s: str):
        return self.ring.coerce(self.algebra.q_s(s))

    # actions of algebra elements ------------------------------------------

    def _omega_matrix(self, u) -> Matrix:
        W = self.algebra.W
        if u == W.identity:
            return _identity(self.ring, self.rank)
        key = W.omega_of(u).diagram_action
        return self.omega_action[key]

    def act_word(self, u, word, star: bool = False) -> Matrix:
        """Matrix of ``T_u T_{s_1} ... T_{s_n}`` (or the starred product)."""
        m = self._omega_matrix(u)
        for s in word:
            g = self.gen_action[s]
            if star:
                shift = self.ring.coerce(1 - self.algebra.q_s(s))
                g = _mat_add(self.ring, g, _mat_scale(self.ring, shift, _identity(self.ring, self.rank)))
            m = _mat_mul(self.ring, m, g)
        return m

    def act_T(self, w) -> Matrix:
        u, word = self.algebra.W.reduced_word(w)
        return self.act_word(u, word)

    def act_star(self, w) -> Matrix:
        u, word = self.algebra.W.reduced_word(w)
        return self.act_word(u, word, star=True)

    def act(self, h: HeckeElt) -> Matrix:
        out = tuple(tuple(self.ring.zero() for _ in range(self.rank)) for _ in range(self.rank))
        for w, c in h.terms.items():
            out = _mat_add(self.ring, out, _mat_scale(self.ring, self.ring.coerce(c), self.act_T(w)))
        return out

    def act_E(self, lam) -> Matrix:
        """Action of the Bernstein element, computed as a product of
        generator matrices without expanding it in the T-basis."""
        alg = self.algebra
        W = alg.W
        lam = tuple(lam)
        plus = alg.dominant_part(lam)
        minus = tuple(a - b for a, b in zip(lam, plus))
        tp, tm, tl = W.translation(plus), W.translation(minus), W.translation(lam)
        shift = alg.q_exponent(tp) + alg.q_exponent(tm) - alg.q_exponent(tl)
        m = _mat_mul(self.ring, self.act_star(tp), self.act_T(tm))
        return _mat_scale(self.ring, self.ring.coerce(HalfLaurent.monomial(-shift)), m)

    def act_theta(self, lam) -> Matrix:
        alg = self.algebra
        e = alg.q_exponent(alg.W.translation(tuple(lam)))
        return _mat_scale(self.ring, self.ring.coerce(HalfLaurent.monomial(-e)), self.act_E(lam))

    def act_z(self, mu) -> Matrix:
        alg = self.algebra
        out = tuple(tuple(self.ring.zero() for _ in range(self.rank)) for _ in range(self.rank))
        for lam in alg.orbit(mu):
            out = _mat_add(self.ring, out, self.act_E(lam))
        return out


def character_module(chi: HCharacter, omega_values: dict | None = None) -> FinHeckeModule:
    """Rank-one module of a character, extended by scalars on Psi (1 by default)."""
    datum, ring = chi.datum, chi.ring
    if not extends_to_extended(chi, datum):
        raise ValueError("character is not Psi-invariant: use induce_character instead")
    omega_values = omega_values or {}
    gen = {s: ((v,),) for s, v in chi.values}
    om = {g: ((ring.coerce(omega_values.get(g, 1)),),) for g in datum.psi}
    return FinHeckeModule(datum, ring, (chi.label(),), gen, om)


def _subgroup_cosets(group, stab):
    reps, seen = [], set()
    for g in group:
        if g in seen:
            continue
        reps.append(g)
        for h in stab:
            seen.add(g.compose(h))
    return reps


def induce_character(chi: HCharacter, datum: AlgebraDatum | None = None) -> FinHeckeModule:
    """Module induced from a character that Psi does not fix.

    The basis is indexed by the Psi-orbit of the character; on the vector
    ``e_u`` the generator ``T_s`` acts by ``chi(u(s))`` and ``T_v`` sends it
    to ``e_{uv}``.  Psi is abelian, so these formulas are coset-independent.
    """
    datum = datum or chi.datum
    ring = chi.ring
    if extends_to_extended(chi, datum):
        raise ValueError("character is Psi-invariant: use scalar extension instead")
    vals = chi.as_dict()
    group = list(datum.psi)
    stab = [g for g in group if all(vals[g(s)] == vals[s] for s in datum.dyn.nodes)]
    reps = _subgroup_cosets(group, stab)

    def index(g):
        for i, r in enumerate(reps):
            if any(r.compose(h) == g for h in stab):
                return i
        raise AssertionError("coset not found")

    n = len(reps)
    zero, one = ring.zero(), ring.one()
    gen = {}
    for s in datum.dyn.nodes:
        gen[s] = tuple(tuple(vals[reps[i](s)] if i == j else zero for j in range(n))
                       for i in range(n))
    om = {}
    for v in group:
        rows = []
        for i in range(n):
            j = index(reps[i].compose(v))
            rows.append(tuple(one if k == j else zero for k in range(n)))
        om[v] = tuple(rows)
    labels = tuple(HCharacter(datum, ring, tuple((s, vals[r(s)]) for s in datum.dyn.nodes)).label()
                   for r in reps)
    return FinHeckeModule(datum, ring, labels, gen, om)


def _twisted_reflection(datum: AlgebraDatum, basis: list[str]) -> FinHeckeModule:
    """Right module from the twisted left reflection action on ``basis``.

    The left action after the sign-star twist is
    ``T_s e_t = q e_t`` (s = t), ``-e_t`` (bond 2), ``-e_t - q^(1/2) e_s``
    (bond 3), and ``-e_t`` for nodes s outside the basis.  The right module
    comes from ``T_w -> T_{w^-1}``, i.e. the transposed matrices, and
    ``e_t . T_u = e_{u^-1(t)}``.
    """
    dyn = datum.dyn
    idx = {t: i for i, t in enumerate(basis)}
    n = len(basis)
    q = HalfLaurent.monomial(2)
    qh = HalfLaurent.q_half()
    zero = HalfLaurent()
    gen = {}
    for s in dyn.nodes:
        left = [[zero] * n for _ in range(n)]  # left[r][c]: coefficient of e_r in T_s e_c
        for t in basis:
            c = idx[t]
            if s == t:
                left[c][c] = q
            elif s not in idx:
                left[c][c] = HalfLaurent.const(-1)
            else:
                bond = dyn.bond(s, t)
                left[c][c] = HalfLaurent.const(-1)
                if bond == 3:
                    left[idx[s]][c] = -qh
                elif bond != 2:
                    raise ValueError(f"bond {bond} between basis nodes {s}, {t}")
        gen[s] = tuple(tuple(left[r][c] for r in range(n)) for c in range(n))
    om = {}
    one = HalfLaurent.const(1)
    for g in datum.psi:
        ginv = g.inverse()
        om[g] = tuple(tuple(one if basis[k] == ginv(t) else zero for k in range(n)) for t in basis)
    return FinHeckeModule(datum, GENERIC, tuple(f"e_{t}" for t in basis), gen, om)


def reflection_module(datum: AlgebraDatum) -> FinHeckeModule:
    """The twisted reflection module of rank |S| in types D and E."""
    fam = datum.cartan.family
    if fam not in "DE":
        raise ValueError(f"reflection_module needs type D or E, got {datum.cartan}")
    if any(d != 1 for d in datum.dyn.params.values()):
        raise ValueError("reflection_module needs all parameters equal to 1")
    return _twisted_reflection(datum, list(datum.dyn.nodes))


def b3_reflection_module(datum: AlgebraDatum) -> FinHeckeModule:
    """The rank-3 module on the long simple affine roots of B3 with params (1, 2)."""
    if str(datum.cartan) != "B3" or datum.dyn.component_params() != (1, 2):
        raise ValueError("b3_reflection_module needs type B3 with parameters (1, 2)")
    longs = [s for s in datum.dyn.nodes if s in datum.dyn.long_nodes]
    return _twisted_reflection(datum, longs)


def direct_sum(a: FinHeckeModule, b: FinHeckeModule) -> FinHeckeModule:
    ring = a.ring
    n, m = a.rank, b.rank
    zero = ring.zero()

    def block(x, y):
        rows = [tuple(x[i]) + (zero,) * m for i in range(n)]
        rows += [(zero,) * n + tuple(y[i]) for i in range(m)]
        return tuple(rows)

    gen = {s: block(a.gen_action[s], b.gen_action[s]) for s in a.gen_action}
    om = {g: block(a.omega_action[g], b.omega_action[g]) for g in a.omega_action}
    return FinHeckeModule(a.datum, ring, a.labels + b.labels, gen, om)


def reduce_mod_p(m: FinHeckeModule, p: int) -> FinHeckeModule:
    """Entrywise reduction with q^(1/2) -> 0."""
    if m.ring is not GENERIC:
        raise ValueError("reduce_mod_p needs a generic module")
    ring = FiniteRing(ModP(p))

    def red(mat):
        try:
            return tuple(tuple(ring.coerce(x) for x in row) for row in mat)
        except NotIntegralError as exc:
            raise NotIntegralError(f"module is not p-integral: {exc}") from exc

    gen = {s: red(v) for s, v in m.gen_action.items()}
    om = {g: red(v) for g, v in m.omega_action.items()}
    return FinHeckeModule(m.datum, ring, m.labels, gen, om, lift=m)


def specialize_module(m: FinHeckeModule, target: ModC) -> FinHeckeModule:
    ring = FiniteRing(target)
    gen = {s: tuple(tuple(ring.coerce(x) for x in row) for row in v) for s, v in m.gen_action.items()}
    om = {g: tuple(tuple(ring.coerce(x) for x in row) for row in v) for g, v in m.omega_action.items()}
    return FinHeckeModule(m.datum, ring, m.labels, gen, om, lift=m)


# relation checks ------------------------------------------------------------


def verify_module_relations(m: FinHeckeModule) -> tuple[bool, str | None]:
    """Check the quadratic, braid and Omega relations; name the first failure."""
    ring, n = m.ring, m.rank
    dyn = m.datum.dyn
    ident = _identity(ring, n)
    minus_one = ring.coerce(-1)
    for s in dyn.nodes:
        g = m.gen_action[s]
        a = _mat_add(ring, g, _mat_scale(ring, ring.mul(minus_one, m.q_s(s)), ident))
        b = _mat_add(ring, g, ident)
        if not _is_zero_matrix(ring, _mat_mul(ring, a, b)):
            return False, f"quadratic {s}"
    for s, t in itertools.combinations(dyn.nodes, 2):
        k = dyn.bond(s, t)
        if k is None:
            continue
        left, right = ident, ident
        for i in range(k):
            left = _mat_mul(ring, left, m.gen_action[(s, t)[i % 2]])
            right = _mat_mul(ring, right, m.gen_action[(t, s)[i % 2]])
        if not _mat_eq(ring, left, right):
            return False, f"braid {s},{t}"
    om = m.omega_action
    for g, h in itertools.product(om, repeat=2):
        if not _mat_eq(ring, _mat_mul(ring, om[g], om[h]), om[g.compose(h)]):
            return False, f"omega-product {g},{h}"
    for g in om:
        for s in dyn.nodes:
            lhs = _mat_mul(ring, om[g], m.gen_action[s])
            rhs = _mat_mul(ring, m.gen_action[g(s)], om[g])
            if not _mat_eq(ring, lhs, rhs):
                return False, f"omega-conjugation {g},{s}"
    return True, None


def restriction_characters(m: FinHeckeModule) -> list[dict] | None:
    """If every T_s acts diagonally, the character on each basis vector."""
    n = m.rank
    for mat in m.gen_action.values():
        if any(not m.ring.is_zero(mat[i][j]) for i in range(n) for j in range(n) if i != j):
            return None
    return [{s: mat[i][i] for s, mat in m.gen_action.items()} for i in range(n)]


# supersingularity and discreteness --------------------------------------------


def _nilpotent(ring, a: Matrix) -> bool:
    n = len(a)
    power = a
    for _ in range(n - 1):
        power = _mat_mul(ring, power, a)
    return _is_zero_matrix(ring, power)


def is_supersingular(m: FinHeckeModule) -> bool:
    """Every central element z_mu, mu a Hilbert basis generator of the
    dominant monoid, acts nilpotently."""
    if not isinstance(m.ring, FiniteRing):
        raise ValueError("is_supersingular needs a module over a finite field")
    alg = m.algebra
    for mu in alg.W.dominant_monoid_generators:
        if m.lift is not None:
            z = m.lift.act_z(mu)
            z = tuple(tuple(m.ring.coerce(x) for x in row) for row in z)
        else:
            z = m.act(alg.central_z(mu))
        if not _nilpotent(m.ring, z):
            return False
    return True


def character_theta_value(chi: HCharacter, lam) -> HalfLaurent:
    """``chi(theta_{-lam})`` for dominant lam, an exact monomial."""
    alg = HeckeAlgebra.for_datum(chi.datum)
    W = alg.W
    t = W.translation(tuple(-x for x in lam))
    u, word = W.reduced_word(t)
    if u != W.identity:
        raise ValueError("Omega part present; use the module path")
    vals = chi.as_dict()
    out = HalfLaurent.const(1)
    for s in word:
        out = out * vals[s]
    return out * HalfLaurent.monomial(-alg.q_exponent(t))


def _float_matrix(mat: Matrix, q0) -> np.ndarray:
    t = Real(q0)
    return np.array([[float(specialize(x, t)) for x in row] for row in mat], dtype=float)


def is_discrete(m: FinHeckeModule, q0_list=(2, 3, 4, 9), tol: float = 1e-6,
                method: str = "auto") -> bool:
    """Discreteness test on the generators of the dominant monoid.

    ``method="exact"`` works for rank-one modules whose theta values are
    monomials; ``"numeric"`` checks the spectral radius of theta_{-lambda}
    at each q0; ``"auto"`` takes the exact path where it applies.
    """
    if m.ring is not GENERIC:
        raise ValueError("is_discrete needs a generic module")
    alg = m.algebra
    gens = alg.W.dominant_monoid_generators
    mats = {lam: m.act_theta(tuple(-x for x in lam)) for lam in gens}
    if method == "auto":
        method = "exact" if m.rank == 1 else "numeric"
    if method == "exact":
        if m.rank != 1:
            raise ValueError("exact discreteness needs a rank-one module")
        verdicts = [abs_lt_one(mats[lam][0][0]) for lam in gens]
        if "depends" in verdicts:
            return is_discrete(m, q0_list, tol, method="numeric")
        return all(v == "always" for v in verdicts)
    for q0 in q0_list:
        for lam in gens:
            ev = np.linalg.eigvals(_float_matrix(mats[lam], q0))
            if not np.all(np.abs(ev) < 1 - tol):
                return False
    return True


# simplicity -------------------------------------------------------------------


def _rank_of(rows: list[list[Fraction]]) -> int:
    rows = [list(r) for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                f = rows[i][c] / rows[rank][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def _fraction_matrices(m: FinHeckeModule, qh: Fraction) -> list:
    out = []
    for mat in list(m.gen_action.values()) + list(m.omega_action.values()):
        out.append([[Fraction(x.evaluate(qh)) for x in row] for row in mat])
    return out


def _fmul(a, b):
    n, k, p = len(a), len(b), len(b[0])
    return [[sum(a[i][t] * b[t][j] for t in range(k)) for j in range(p)] for i in range(n)]


def _algebra_dimension(gens: list, n: int) -> int:
    """Dimension of the matrix algebra generated by ``gens``."""
    ident = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    basis_rows: list[list[Fraction]] = []
    elems = []

    def try_add(mat):
        flat = [x for row in mat for x in row]
        if _rank_of(basis_rows + [flat]) > len(basis_rows):
            basis_rows.append(flat)
            elems.append(mat)
            return True
        return False

    try_add(ident)
    frontier = [ident]
    while frontier and len(basis_rows) < n * n:
        nxt = []
        for a in frontier:
            for g in gens:
                b = _fmul(a, g)
                if try_add(b):
                    nxt.append(b)
        frontier = nxt
    return len(basis_rows)


def is_simple_over_fraction_field(m: FinHeckeModule, bound: int = 12, trials: int = 3,
                                  seed: int = 0) -> bool:
    """Absolute simplicity at generic q.

    The generated matrix algebra is computed exactly at random rational
    values of q^(1/2).  It is the full matrix algebra at one value iff it is
    generically, and that is equivalent to absolute simplicity.
    """
    if m.ring is not GENERIC:
        raise ValueError("simplicity test needs a generic module")
    if m.rank > bound:
        raise ValueError(f"rank {m.rank} exceeds the bound {bound}")
    n = m.rank
    if n == 1:
        return True
    rng = random.Random(seed)
    for _ in range(trials):
        qh = Fraction(rng.randint(2, 97), rng.randint(1, 13))
        if _algebra_dimension(_fraction_matrices(m, qh), n) == n * n:
            return True
    return False
