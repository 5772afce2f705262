"""
Named identity checks over one algebra datum.

Each check returns a :class:`CheckResult`; failures carry a short witness.
Randomized checks take a seed so runs are reproducible.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .hecke import AlgebraDatum, HeckeAlgebra, HeckeElt
from .laurent import HalfLaurent, ModC, specialize
from .root_data import is_strictly_dominant

__all__ = ["CheckResult", "CHECKS", "run_check", "minimal_strictly_dominant",
           "random_lattice_vectors", "orbit_product_expansion"]


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def random_lattice_vectors(alg: HeckeAlgebra, count: int, rng: random.Random, spread: int = 2):
    W = alg.W
    basis = W.rs.cartan_matrix if W.lattice == "sc" else W.rs.fundamental_coweights
    out = []
    for _ in range(count):
        v = [0] * W.rank
        for b in basis:
            k = rng.randint(-spread, spread)
            v = [x + k * y for x, y in zip(v, b)]
        out.append(tuple(v))
    return out


def minimal_strictly_dominant(alg: HeckeAlgebra) -> tuple[int, ...]:
    """The strictly dominant lattice vector of least height (sum of
    coroot coordinates), ties broken lexicographically."""
    W = alg.W
    best = None
    bound = 1
    while best is None:
        for c in itertools.product(range(1, bound + 1), repeat=W.rank):
            if W.in_lattice(c):
                key = (sum(W.rs.coroot_coordinates(c)), c)
                if best is None or key < best:
                    best = key
        bound += 1
    return best[1]


def orbit_product_expansion(alg: HeckeAlgebra, mu) -> dict:
    """E-basis coefficients of ``z_mu * z_{-w_o(mu)}``."""
    rs = alg.W.rs
    dual = tuple(-x for x in rs.longest_element_action(tuple(mu)))
    return alg.e_basis_expand(alg.central_z(mu) * alg.central_z(dual))


def check_orbit_product(alg: HeckeAlgebra, **_) -> CheckResult:
    W = alg.W
    mu = minimal_strictly_dominant(alg)
    if not is_strictly_dominant(W.rs, mu):
        return CheckResult("orbit-product", False, "no strictly dominant vector")
    coeffs = orbit_product_expansion(alg, mu)
    by_orbit: dict = {}
    for lam, c in coeffs.items():
        key = min(alg.orbit(lam))
        by_orbit.setdefault(key, set()).add(c)
    for key, cs in by_orbit.items():
        orbit = alg.orbit(key)
        if len(cs) != 1 or any(lam not in coeffs for lam in orbit):
            return CheckResult("orbit-product", False, f"coefficients not orbit-constant on {key}")
    zero = (0,) * W.rank
    expected = alg.q_w(W.translation(mu)) * W.rs.weyl_order
    got = coeffs.get(zero, HalfLaurent())
    if got != expected:
        return CheckResult("orbit-product", False, f"zero-orbit coefficient {got}, expected {expected}")
    return CheckResult("orbit-product", True, f"mu={mu}, zero-orbit coefficient {got}")


def _character_value(alg: HeckeAlgebra, h: HeckeElt, values: dict, target) -> int:
    c = target.c
    total = 0
    for w, coeff in h.terms.items():
        u, word = alg.W.reduced_word(w)
        v = specialize(coeff, target)
        for s in word:
            v = v * values[s] % c
        total += v
    return total % c


def check_char2_witness(alg: HeckeAlgebra, target: ModC | None = None, **_) -> CheckResult:
    """Every F_c-character with values in {q_s, -1}, constant on the
    components, kills z_{k mu} for k = 1, 2, 3 and the generator mu."""
    target = target or ModC(2, 1)
    W = alg.W
    dyn = alg.datum.dyn
    mu = W.dominant_monoid_generators[0]
    failures = []
    for choice in itertools.product((True, False), repeat=dyn.m):
        values = {}
        for take_q, comp in zip(choice, dyn.components):
            for s in comp:
                values[s] = specialize(alg.q_s(s), target) if take_q else (-1) % target.c
        for k in (1, 2, 3):
            z = alg.central_z(tuple(k * x for x in mu))
            val = _character_value(alg, z, values, target)
            if val:
                failures.append(f"chi={values} z_{k}mu -> {val}")
    if failures:
        return CheckResult("char2-witness", False, "; ".join(failures[:3]))
    return CheckResult("char2-witness", True, f"mu={mu}, k=1..3 vanish")


def _ball_sample(alg: HeckeAlgebra, radius: int):
    return sorted(alg.W.enumerate_ball(radius), key=alg.W.sort_key)


def check_assoc(alg: HeckeAlgebra, seed: int = 0, trials: int = 200, radius: int = 6, **_):
    rng = random.Random(seed)
    ball = _ball_sample(alg, radius)
    for _ in range(trials):
        a, b, c = (alg.T(rng.choice(ball)) for _ in range(3))
        if (a * b) * c != a * (b * c):
            return CheckResult("assoc", False, f"{a!r} {b!r} {c!r}")
    return CheckResult("assoc", True, f"{trials} triples")


def check_length_additive(alg: HeckeAlgebra, radius: int = 4, **_):
    W = alg.W
    ball = W.enumerate_ball(radius)
    for x, lx in ball.items():
        for y, ly in ball.items():
            xy = W.mul(x, y)
            if W.length(xy) == lx + ly and alg.T(x) * alg.T(y) != alg.T(xy):
                return CheckResult("length-additive", False, f"{W.format(x)} * {W.format(y)}")
    return CheckResult("length-additive", True, f"{len(ball) ** 2} pairs")


def check_star_inverse(alg: HeckeAlgebra, radius: int = 4, **_):
    W = alg.W
    for w in W.enumerate_ball(radius):
        if alg.T(w) * alg.star(W.inverse(w)) != alg.one * alg.q_w(w):
            return CheckResult("star-inverse", False, W.format(w))
        if alg.T(w) * alg.t_inverse(w) != alg.one:
            return CheckResult("star-inverse", False, f"inverse of {W.format(w)}")
    return CheckResult("star-inverse", True, f"ball of radius {radius}")


def check_theta_mult(alg: HeckeAlgebra, seed: int = 0, trials: int = 100, **_):
    rng = random.Random(seed)
    vecs = random_lattice_vectors(alg, 2 * trials, rng, spread=1)
    for a, b in zip(vecs[::2], vecs[1::2]):
        ab = tuple(x + y for x, y in zip(a, b))
        if alg.theta(a) * alg.theta(b) != alg.theta(ab):
            return CheckResult("theta-mult", False, f"{a} {b}")
    return CheckResult("theta-mult", True, f"{trials} pairs")


def check_e_decomposition(alg: HeckeAlgebra, seed: int = 0, trials: int = 50, **_):
    rng = random.Random(seed)
    gens = alg.W.dominant_monoid_generators
    for lam in random_lattice_vectors(alg, trials, rng, spread=1):
        extra = rng.choice(gens)
        plus = tuple(x + y for x, y in zip(alg.dominant_part(lam), extra))
        if alg.bernstein_E(lam) != alg.bernstein_E(lam, plus=plus):
            return CheckResult("e-decomposition", False, f"lambda={lam}")
    return CheckResult("e-decomposition", True, f"{trials} vectors")


def check_centrality(alg: HeckeAlgebra, **_):
    for mu in alg.W.dominant_monoid_generators:
        z = alg.central_z(mu)
        for name, g in alg.generators():
            if not alg.commutes(z, g):
                return CheckResult("centrality", False, f"z_{mu} vs {name}")
    return CheckResult("centrality", True, "all Hilbert basis generators")


def check_length_oracle(alg: HeckeAlgebra, radius: int = 8, **_):
    W = alg.W
    for w, depth in W.enumerate_ball(radius).items():
        if W.length(w) != depth:
            return CheckResult("length-oracle", False, f"{W.format(w)}: {W.length(w)} vs {depth}")
    return CheckResult("length-oracle", True, f"ball of radius {radius}")


CHECKS = {
    "orbit-product": check_orbit_product,
    "char2-witness": check_char2_witness,
    "assoc": check_assoc,
    "length-additive": check_length_additive,
    "star-inverse": check_star_inverse,
    "theta-mult": check_theta_mult,
    "e-decomposition": check_e_decomposition,
    "centrality": check_centrality,
    "length-oracle": check_length_oracle,
}


def run_check(name: str, datum: AlgebraDatum, **kwargs) -> CheckResult:
    if name not in CHECKS:
        raise KeyError(f"unknown check {name!r}; known: {', '.join(sorted(CHECKS))}")
    return CHECKS[name](HeckeAlgebra.for_datum(datum), **kwargs)
