"""
Irreducible reduced root systems, their Weyl groups, and the extended
Dynkin diagram decorated with parameters.

Coweights are integer vectors in fundamental-coweight coordinates, i.e. the
vector ``c`` stands for the coweight with ``<lambda, alpha_i> = c[i]``.
Roots are integer vectors in simple-root coordinates, so the pairing is a
plain dot product.  Nodes of the affine diagram are named ``"s1" ... "sl"``
(Bourbaki numbering) followed by the affine node ``"s0"``.

>>> rs = build_root_system(CartanType("G", 2))
>>> len(rs.positive_roots)
6
>>> affine_diagram(CartanType("C", 2), (3, 2, 2)).m
3
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache

__all__ = [
    "CartanType", "RootSystem", "AffineDynkin", "DiagramAut",
    "build_root_system", "affine_diagram", "weyl_orbit",
    "is_dominant", "is_strictly_dominant", "diagram_automorphisms",
    "parse_cartan",
]

Vector = tuple[int, ...]

_VALID_RANKS = {
    "A": lambda r: r >= 1,
    "B": lambda r: r >= 2,
    "C": lambda r: r >= 2,
    "D": lambda r: r >= 4,
    "E": lambda r: r in (6, 7, 8),
    "F": lambda r: r == 4,
    "G": lambda r: r == 2,
}

# number of positive roots
_POS_COUNT = {
    "A": lambda l: l * (l + 1) // 2,
    "B": lambda l: l * l,
    "C": lambda l: l * l,
    "D": lambda l: l * (l - 1),
    "E": lambda l: {6: 36, 7: 63, 8: 120}[l],
    "F": lambda l: 24,
    "G": lambda l: 6,
}

# order of the finite Weyl group
_WEYL_ORDER = {
    "A": lambda l: _fact(l + 1),
    "B": lambda l: 2 ** l * _fact(l),
    "C": lambda l: 2 ** l * _fact(l),
    "D": lambda l: 2 ** (l - 1) * _fact(l),
    "E": lambda l: {6: 51840, 7: 2903040, 8: 696729600}[l],
    "F": lambda l: 1152,
    "G": lambda l: 12,
}


def _fact(n: int) -> int:
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


@dataclass(frozen=True, order=True)
class CartanType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in _VALID_RANKS:
            raise ValueError(f"unknown Cartan family {self.family!r}")
        if not _VALID_RANKS[self.family](self.rank):
            raise ValueError(f"invalid rank {self.rank} for family {self.family}")

    def __str__(self):
        return f"{self.family}{self.rank}"


def parse_cartan(text: str) -> CartanType:
    text = text.strip()
    if len(text) < 2 or not text[1:].isdigit():
        raise ValueError(f"cannot parse Cartan type {text!r}")
    return CartanType(text[0].upper(), int(text[1:]))


def cartan_matrix(ct: CartanType) -> tuple[tuple[int, ...], ...]:
    """Entries ``A[i][j] = <alpha_i^vee, alpha_j>`` in Bourbaki numbering."""
    l, fam = ct.rank, ct.family
    a = [[2 if i == j else 0 for j in range(l)] for i in range(l)]

    def link(i, j, aij=-1, aji=-1):
        a[i][j], a[j][i] = aij, aji

    if fam in "ABC":
        for i in range(l - 1):
            link(i, i + 1)
        if fam == "B":
            link(l - 2, l - 1, -1, -2)
        elif fam == "C":
            link(l - 2, l - 1, -2, -1)
    elif fam == "D":
        for i in range(l - 2):
            link(i, i + 1)
        link(l - 3, l - 1)
    elif fam == "E":
        link(0, 2)
        link(1, 3)
        for i in range(2, l - 1):
            link(i, i + 1)
    elif fam == "F":
        link(0, 1)
        link(1, 2, -1, -2)
        link(2, 3)
    elif fam == "G":
        link(0, 1, -3, -1)
    return tuple(tuple(r) for r in a)


def _dot(u, v) -> int:
    return sum(x * y for x, y in zip(u, v))


@dataclass(frozen=True)
class RootSystem:
    cartan: CartanType
    cartan_matrix: tuple[tuple[int, ...], ...]
    simple_roots: tuple[Vector, ...]
    positive_roots: tuple[Vector, ...]
    # coroot of each positive root, in coweight coordinates
    coroots: dict[Vector, Vector] = field(compare=False)
    # squared root length, normalized so short roots have length 1
    norms: dict[Vector, int] = field(compare=False)

    @property
    def rank(self) -> int:
        return self.cartan.rank

    @property
    def fundamental_coweights(self) -> tuple[Vector, ...]:
        l = self.rank
        return tuple(tuple(int(i == j) for j in range(l)) for i in range(l))

    def simple_coroot(self, i: int) -> Vector:
        return self.cartan_matrix[i]

    def pairing(self, coweight: Vector, root: Vector) -> int:
        return _dot(coweight, root)

    @cached_property
    def highest_root(self) -> Vector:
        return max(self.positive_roots, key=lambda r: (sum(r), r))

    @cached_property
    def cartan_inverse(self) -> tuple[tuple[Fraction, ...], ...]:
        return _inverse_matrix(self.cartan_matrix)

    @cached_property
    def fundamental_group_order(self) -> int:
        return abs(_det(self.cartan_matrix))

    def in_coroot_lattice(self, coweight: Vector) -> bool:
        # coweight = n . A  with n integral
        inv = self.cartan_inverse
        l = self.rank
        return all(
            sum(coweight[i] * inv[i][j] for i in range(l)).denominator == 1
            for j in range(l)
        )

    def coroot_coordinates(self, coweight: Vector) -> tuple[Fraction, ...]:
        inv = self.cartan_inverse
        l = self.rank
        return tuple(sum(coweight[i] * inv[i][j] for i in range(l)) for j in range(l))

    def reflect_coweight(self, i: int, c: Vector) -> Vector:
        ci = c[i]
        if not ci:
            return c
        row = self.cartan_matrix[i]
        return tuple(cj - ci * aij for cj, aij in zip(c, row))

    def reflect_root(self, i: int, r: Vector) -> Vector:
        k = _dot(self.cartan_matrix[i], r)
        if not k:
            return r
        return tuple(rj - (k if j == i else 0) for j, rj in enumerate(r))

    @cached_property
    def weyl_order(self) -> int:
        return _WEYL_ORDER[self.cartan.family](self.rank)

    @cached_property
    def longest_element_action(self):
        """The map lambda -> w_o(lambda) on coweights, as a function."""
        rho = tuple(1 for _ in range(self.rank))
        word = []
        c = tuple(-x for x in rho)
        # sort -rho into the dominant chamber; the word gives w_o
        while True:
            for i, ci in enumerate(c):
                if ci < 0:
                    c = self.reflect_coweight(i, c)
                    word.append(i)
                    break
            else:
                break

        def act(v: Vector) -> Vector:
            for i in reversed(word):
                v = self.reflect_coweight(i, v)
            return v
        return act


def _det(m) -> int:
    m = [[Fraction(x) for x in row] for row in m]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c]), None)
        if p is None:
            return 0
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return int(det)


def _inverse_matrix(m):
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
    return tuple(tuple(row[n:]) for row in aug)


def _simple_norms(a) -> list[int]:
    """Squared lengths of the simple roots, short roots normalized to 1."""
    l = len(a)
    norm = [None] * l
    norm[0] = Fraction(1)
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(l):
            if j != i and a[i][j] and norm[j] is None:
                # a_ij / a_ji = |alpha_j|^2 / |alpha_i|^2
                norm[j] = norm[i] * Fraction(a[i][j], a[j][i])
                stack.append(j)
    smallest = min(norm)
    return [int(x / smallest) for x in norm]


@lru_cache(maxsize=None)
def build_root_system(cartan: CartanType) -> RootSystem:
    """Close the simple roots under simple reflections."""
    a = cartan_matrix(cartan)
    l = cartan.rank
    simple = tuple(tuple(int(i == j) for j in range(l)) for i in range(l))
    norms0 = _simple_norms(a)
    coroot = {r: a[i] for i, r in enumerate(simple)}
    norm = {r: norms0[i] for i, r in enumerate(simple)}
    frontier = list(simple)
    while frontier:
        nxt = []
        for r in frontier:
            for i in range(l):
                k = _dot(a[i], r)
                if not k:
                    continue
                r2 = tuple(x - (k if j == i else 0) for j, x in enumerate(r))
                if r2 in coroot:
                    continue
                c = coroot[r]
                ci = c[i]
                coroot[r2] = tuple(cj - ci * aij for cj, aij in zip(c, a[i]))
                norm[r2] = norm[r]
                nxt.append(r2)
        frontier = nxt
    positive = tuple(sorted((r for r in coroot if all(x >= 0 for x in r)),
                            key=lambda r: (sum(r), r)))
    expected = _POS_COUNT[cartan.family](l)
    if len(positive) != expected:
        raise AssertionError(f"{cartan}: found {len(positive)} positive roots, expected {expected}")
    return RootSystem(
        cartan=cartan,
        cartan_matrix=a,
        simple_roots=simple,
        positive_roots=positive,
        coroots={r: coroot[r] for r in positive},
        norms={r: norm[r] for r in positive},
    )


def is_dominant(rs: RootSystem, mu: Vector) -> bool:
    return all(x >= 0 for x in mu)


def is_strictly_dominant(rs: RootSystem, mu: Vector) -> bool:
    return all(x > 0 for x in mu)


def weyl_orbit(rs: RootSystem, mu: Vector) -> frozenset[Vector]:
    """The W_0-orbit of a coweight, by closure under simple reflections."""
    mu = tuple(mu)
    seen = {mu}
    frontier = [mu]
    while frontier:
        nxt = []
        for v in frontier:
            for i in range(rs.rank):
                w = rs.reflect_coweight(i, v)
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return frozenset(seen)


def dominant_representative(rs: RootSystem, mu: Vector) -> Vector:
    mu = tuple(mu)
    while True:
        for i, ci in enumerate(mu):
            if ci < 0:
                mu = rs.reflect_coweight(i, mu)
                break
        else:
            return mu


# affine diagram -------------------------------------------------------------


def node_names(rank: int) -> tuple[str, ...]:
    """Nodes in the fixed order: finite nodes in Bourbaki order, affine node last."""
    return tuple(f"s{i}" for i in range(1, rank + 1)) + ("s0",)


@dataclass(frozen=True)
class DiagramAut:
    """A permutation of the affine nodes, stored as sorted (node, image) pairs."""
    mapping: tuple[tuple[str, str], ...]

    @classmethod
    def from_dict(cls, d: dict[str, str]) -> DiagramAut:
        return cls(tuple(sorted(d.items())))

    @classmethod
    def identity(cls, nodes) -> DiagramAut:
        return cls.from_dict({s: s for s in nodes})

    def __call__(self, s: str) -> str:
        return dict(self.mapping)[s]

    def as_dict(self) -> dict[str, str]:
        return dict(self.mapping)

    def compose(self, other: DiagramAut) -> DiagramAut:
        """``(self o other)(s) = self(other(s))``."""
        a, b = self.as_dict(), other.as_dict()
        return DiagramAut.from_dict({s: a[b[s]] for s in b})

    def inverse(self) -> DiagramAut:
        return DiagramAut.from_dict({v: k for k, v in self.mapping})

    def is_identity(self) -> bool:
        return all(k == v for k, v in self.mapping)

    def __str__(self):
        moved = [f"{k}->{v}" for k, v in self.mapping if k != v]
        return "id" if not moved else "(" + " ".join(moved) + ")"


@dataclass(frozen=True)
class AffineDynkin:
    cartan: CartanType
    nodes: tuple[str, ...]
    # bond orders n_{s,t}; None stands for infinity
    bonds: dict[tuple[str, str], int | None] = field(compare=False)
    params: dict[str, int] = field(compare=False)
    # S_1, ..., S_m in the conventional labeling
    components: tuple[tuple[str, ...], ...]
    long_nodes: frozenset[str] = field(compare=False)

    @property
    def m(self) -> int:
        return len(self.components)

    def bond(self, s: str, t: str) -> int | None:
        if s == t:
            return 1
        return self.bonds[(s, t)]

    def component_of(self, s: str) -> int:
        for i, comp in enumerate(self.components):
            if s in comp:
                return i
        raise KeyError(s)

    def component_params(self) -> tuple[int, ...]:
        return tuple(self.params[c[0]] for c in self.components)

    def __hash__(self):
        return hash((self.cartan, self.components, tuple(sorted(self.params.items()))))

    def __eq__(self, other):
        return (isinstance(other, AffineDynkin) and self.cartan == other.cartan
                and self.params == other.params)


def affine_cartan(rs: RootSystem) -> dict[tuple[str, str], int]:
    """Affine Cartan entries ``a[(s, t)] = <alpha_s^vee, alpha_t>``."""
    l = rs.rank
    names = node_names(l)
    theta = rs.highest_root
    theta_vee = rs.coroots[theta]
    a = {}
    for i in range(l):
        for j in range(l):
            a[(names[i], names[j])] = rs.cartan_matrix[i][j]
        a[(names[i], "s0")] = -_dot(rs.cartan_matrix[i], theta)
        a[("s0", names[i])] = -theta_vee[i]
    a[("s0", "s0")] = 2
    return a


_BOND = {0: 2, 1: 3, 2: 4, 3: 6}


def _bonds(rs: RootSystem) -> dict[tuple[str, str], int | None]:
    a = affine_cartan(rs)
    names = node_names(rs.rank)
    out = {}
    for s, t in itertools.permutations(names, 2):
        prod = a[(s, t)] * a[(t, s)]
        out[(s, t)] = _BOND.get(prod)  # product 4 -> infinite bond
    return out


def _components(names, bonds, ct: CartanType) -> tuple[tuple[str, ...], ...]:
    # delete multiple edges (bond order >= 4 or infinite), keep simple edges
    parent = {s: s for s in names}

    def find(s):
        while parent[s] != s:
            parent[s] = parent[parent[s]]
            s = parent[s]
        return s

    for (s, t), n in bonds.items():
        if n == 3:
            parent[find(s)] = find(t)
    groups: dict[str, list[str]] = {}
    for s in names:
        groups.setdefault(find(s), []).append(s)
    comps = [tuple(g) for g in groups.values()]
    order = {s: i for i, s in enumerate(names)}
    if len(comps) == 3:
        # the middle component (neither endpoint) comes first, then the
        # finite endpoint, then the affine endpoint
        def is_end(comp):
            return len(comp) == 1 and sum(
                1 for t in names if t != comp[0] and bonds[(comp[0], t)] != 2) == 1
        middle = [c for c in comps if not is_end(c)]
        if len(middle) != 1:
            middle = [c for c in comps if "s0" not in c and names[-2] not in c] or comps[:1]
        ends = sorted((c for c in comps if c is not middle[0]),
                      key=lambda c: order[c[0]])
        return (middle[0],) + tuple(ends)
    return tuple(sorted(comps, key=lambda c: (-len(c), min(order[s] for s in c))))


def affine_diagram(cartan: CartanType, params=None) -> AffineDynkin:
    """Extended Dynkin diagram with parameters.

    ``params`` is either one value per component S_i (in the conventional
    labeling) or one value per node in node order; ``None`` means all 1.
    """
    rs = build_root_system(cartan)
    names = node_names(cartan.rank)
    bonds = _bonds(rs)
    comps = _components(names, bonds, cartan)
    if params is None:
        params = (1,) * len(comps)
    params = tuple(int(x) for x in params)
    if any(x <= 0 for x in params):
        raise ValueError("params must be positive integers")
    if len(params) == len(comps):
        d = {s: params[i] for i, comp in enumerate(comps) for s in comp}
    elif len(params) == len(names):
        d = dict(zip(names, params))
        for comp in comps:
            if len({d[s] for s in comp}) != 1:
                raise ValueError(f"params not constant on component {comp}")
    else:
        raise ValueError(
            f"params: expected {len(comps)} values (one per component) "
            f"or {len(names)} (one per node), got {len(params)}")
    long_root = rs.highest_root
    lnorm = rs.norms[long_root]
    longs = {names[i] for i in range(cartan.rank)
             if rs.norms[rs.simple_roots[i]] == lnorm}
    longs.add("s0")
    return AffineDynkin(cartan=cartan, nodes=names, bonds=bonds, params=d,
                        components=comps, long_nodes=frozenset(longs))


def diagram_automorphisms(dyn: AffineDynkin) -> list[DiagramAut]:
    """All permutations of S preserving bond orders and parameters."""
    names = dyn.nodes
    # cheap invariant: sorted bond multiset and parameter of each node
    def signature(s):
        return (dyn.params[s], tuple(sorted(str(dyn.bonds[(s, t)]) for t in names if t != s)))

    sigs = {s: signature(s) for s in names}
    candidates = {s: [t for t in names if sigs[t] == sigs[s]] for s in names}
    out = []

    def extend(assign, used, idx):
        if idx == len(names):
            out.append(DiagramAut.from_dict(dict(assign)))
            return
        s = names[idx]
        for t in candidates[s]:
            if t in used:
                continue
            ok = all(dyn.bonds[(s, s2)] == dyn.bonds[(t, t2)] for s2, t2 in assign.items())
            if ok:
                assign[s] = t
                used.add(t)
                extend(assign, used, idx + 1)
                del assign[s]
                used.discard(t)

    extend({}, set(), 0)
    return out
