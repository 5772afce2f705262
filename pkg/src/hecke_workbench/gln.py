"""
Valuation bookkeeping for Iwahori-level Hecke modules of GL_n(D).

Valuations are normalized by ``val(p) = 1`` and ``val(q) = val_q``.  Exact
scalars live in Q(p^(1/N)): the half-integral powers of q that appear in the
central scalars are handled exactly, never numerically.

>>> q_z_exponent((1, 0), 1)
1
>>> e_I_scaling_exponent({2, 3}, 3, 1)
2
>>> pts = newton_polygon([(0, 0), (1, 0), (2, 1)])
>>> pts.vertices
(0, 1, 2)
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .laurent import is_prime

__all__ = [
    "PSurd", "TamePair", "TamePairDatum", "NewtonPolygon", "NewtonWitnessReport",
    "WeakAdmissibilityReport", "q_z_exponent", "e_I_scaling_exponent",
    "lambda_scalars", "lambda_scalars_raw", "newton_polygon",
    "frobenius_valuations", "frobenius_valuation_sums", "newton_witness_check",
    "weak_admissibility_check", "datum_from_json", "newton_witness_sweep",
]


def _vp(x: Fraction, p: int) -> int:
    if x == 0:
        raise ValueError("valuation of zero")
    v = 0
    n, d = x.numerator, x.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


@dataclass(frozen=True)
class PSurd:
    """A finite sum of ``c * p^r`` with c rational and r in [0, 1).

    Terms with different fractional exponents have valuations that differ
    modulo 1, so they never cancel and the valuation is the minimum.
    """
    p: int
    terms: tuple[tuple[Fraction, Fraction], ...]  # sorted (r, c), c != 0

    @classmethod
    def make(cls, p: int, mapping: dict) -> PSurd:
        return cls(p, tuple(sorted((Fraction(r), Fraction(c)) for r, c in mapping.items() if c)))

    @classmethod
    def rational(cls, p: int, c) -> PSurd:
        return cls.make(p, {Fraction(0): Fraction(c)})

    @classmethod
    def p_power(cls, p: int, e, coeff=1) -> PSurd:
        """``coeff * p^e`` for rational e."""
        e = Fraction(e)
        whole = math.floor(e)
        c = Fraction(coeff) * Fraction(p) ** whole
        return cls.make(p, {e - whole: c})

    def __add__(self, other: PSurd) -> PSurd:
        out = dict(self.terms)
        for r, c in other.terms:
            out[r] = out.get(r, 0) + c
        return PSurd.make(self.p, out)

    def __neg__(self):
        return PSurd(self.p, tuple((r, -c) for r, c in self.terms))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: PSurd) -> PSurd:
        out: dict = {}
        for r1, c1 in self.terms:
            for r2, c2 in other.terms:
                r, c = r1 + r2, c1 * c2
                if r >= 1:
                    r, c = r - 1, c * self.p
                out[r] = out.get(r, 0) + c
        return PSurd.make(self.p, out)

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def inverse(self) -> PSurd:
        if not self.is_monomial():
            raise ZeroDivisionError("only monomials are inverted")
        (r, c), = self.terms
        return PSurd.p_power(self.p, -r, 1 / c)

    def val(self) -> Fraction:
        """p-adic valuation, +infinity is reported as ``None``."""
        if not self.terms:
            return None
        return min(_vp(c, self.p) + r for r, c in self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}" if r == 0 else f"{c}*{self.p}^({r})" for r, c in self.terms)


# combinatorial exponents ---------------------------------------------------


def q_z_exponent(vals, d: int) -> int:
    """Exponent of q in q_z for z = diag(delta_i) with val_D(delta_i) = vals."""
    return d * sum(abs(a - b) for a, b in itertools.combinations(vals, 2))


def e_I_scaling_exponent(I, n: int, d: int) -> int:
    I = set(I)
    if not I or not all(1 <= i <= n for i in I):
        raise ValueError("I must be a nonempty subset of {1..n}")
    k = len(I)
    return d * d * (sum(I) - k * (k + 1) // 2)


# tame pair data --------------------------------------------------------------


@dataclass(frozen=True)
class TamePair:
    f: int
    e: int
    zeta_val: Fraction
    # exact value of zeta'(varpi)^e, if supplied
    zeta_exact: PSurd | None = None


@dataclass(frozen=True)
class TamePairDatum:
    n: int
    d: int
    val_q: Fraction
    pairs: tuple[TamePair, ...]
    p: int | None = None

    def __post_init__(self):
        if self.n < 1 or self.d < 1:
            raise ValueError("n and d must be positive")
        if len(self.pairs) != self.n:
            raise ValueError(f"pairs: expected {self.n} records, got {len(self.pairs)}")
        if self.val_q <= 0:
            raise ValueError("val_q must be positive")
        for pr in self.pairs:
            if pr.e * pr.f != self.d:
                raise ValueError(f"pairs: f={pr.f} does not divide d={self.d}")
            if pr.zeta_exact is not None and pr.zeta_exact.val() != pr.e * pr.zeta_val:
                raise ValueError("pairs: zeta_exact has the wrong valuation")

    def exact_values(self) -> list[PSurd]:
        """zeta'_i(varpi)^{e_i}; missing values default to p^{e_i * zeta_val}."""
        out = []
        for pr in self.pairs:
            if pr.zeta_exact is not None:
                out.append(pr.zeta_exact)
            elif self.p is not None:
                out.append(PSurd.p_power(self.p, pr.e * pr.zeta_val))
            else:
                raise ValueError("missing exact values: supply zeta_exact or p")
        return out

    def q_power(self, e) -> PSurd:
        if self.p is None:
            raise ValueError("p is required for exact scalars")
        return PSurd.p_power(self.p, Fraction(e) * self.val_q)


def datum_from_json(obj: dict) -> TamePairDatum:
    """Parse ``{n, d, val_q, p?, q?, pairs: [{f, zeta_val, zeta_exact?}]}``."""
    def need(key, where=obj):
        if key not in where:
            raise ValueError(f"missing field {key!r}")
        return where[key]

    try:
        n, d = int(need("n")), int(need("d"))
    except (TypeError, ValueError) as exc:
        raise ValueError(f"field n/d: {exc}") from exc
    p = obj.get("p")
    val_q = obj.get("val_q")
    if "q" in obj:
        q = int(obj["q"])
        base = next(b for b in range(2, q + 1) if q % b == 0)
        f = round(math.log(q, base))
        if not is_prime(base) or base ** f != q:
            raise ValueError("field 'q' must be a prime power")
        if p is not None and int(p) != base:
            raise ValueError("field 'p' does not match 'q'")
        p = base
        if val_q is not None and Fraction(val_q) != f:
            raise ValueError("field 'val_q' does not match 'q'")
        val_q = f
    if val_q is None:
        raise ValueError("missing field 'val_q'")
    if p is not None:
        p = int(p)
        if not is_prime(p):
            raise ValueError("field 'p' must be prime")
    raw_pairs = need("pairs")
    if not isinstance(raw_pairs, list):
        raise ValueError("field 'pairs' must be a list")
    pairs = []
    for i, rec in enumerate(raw_pairs):
        try:
            f_i = int(need("f", rec))
            if f_i <= 0 or d % f_i:
                raise ValueError(f"f={f_i} does not divide d={d}")
            zv = Fraction(str(need("zeta_val", rec)))
            exact = None
            if rec.get("zeta_exact") is not None:
                if p is None:
                    raise ValueError("zeta_exact needs p or q")
                exact = PSurd.rational(p, Fraction(str(rec["zeta_exact"])))
                if exact.is_zero():
                    raise ValueError("zeta_exact must be nonzero")
        except (TypeError, ValueError) as exc:
            raise ValueError(f"field pairs[{i}]: {exc}") from exc
        pairs.append(TamePair(f_i, d // f_i, zv, exact))
    return TamePairDatum(n, d, Fraction(val_q), tuple(pairs), p)


# central scalars -------------------------------------------------------------


def _zeta_inverses(datum: TamePairDatum) -> list[PSurd]:
    return [z.inverse() for z in datum.exact_values()]


def lambda_scalars_raw(datum: TamePairDatum) -> list[PSurd]:
    """lambda_1..lambda_n as the sum over subsets with both q-factors kept apart."""
    n, d = datum.n, datum.d
    inv = _zeta_inverses(datum)
    out = []
    for j in range(1, n + 1):
        total = PSurd.rational(datum.p, 0)
        for I in itertools.combinations(range(1, n + 1), j):
            s = sum(I)
            term = datum.q_power(d * d * (s - math.comb(j + 1, 2)))
            term = term * datum.q_power(Fraction(d * d * (n + 1) * j, 2) - d * d * s)
            for i in I:
                term = term * inv[i - 1]
            total = total + term
        out.append(total)
    return out


def lambda_scalars(datum: TamePairDatum) -> list[PSurd]:
    """lambda_1..lambda_n in factored form: a q-power times an elementary
    symmetric function of the scaled inverse zeta values."""
    n, d = datum.n, datum.d
    x = [datum.q_power(Fraction(d * d * (n - 1), 2)) * z for z in _zeta_inverses(datum)]
    out = []
    for j in range(1, n + 1):
        total = PSurd.rational(datum.p, 0)
        for I in itertools.combinations(range(n), j):
            term = PSurd.rational(datum.p, 1)
            for i in I:
                term = term * x[i]
            total = total + term
        out.append(datum.q_power(-d * d * math.comb(j, 2)) * total)
    return out


# Newton polygons ----------------------------------------------------------------


@dataclass(frozen=True)
class NewtonPolygon:
    points: tuple[tuple[int, Fraction], ...]
    vertices: tuple[int, ...]
    slopes: tuple[Fraction, ...]

    def is_vertex(self, i: int) -> bool:
        return i in self.vertices


def newton_polygon(points) -> NewtonPolygon:
    """Lower convex hull; collinear interior points are not vertices."""
    pts = sorted((int(i), Fraction(v)) for i, v in points)
    hull: list[tuple[int, Fraction]] = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop hull[-1] unless it lies strictly below the chord
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    slopes = tuple(Fraction(y2 - y1) / (x2 - x1) for (x1, y1), (x2, y2) in zip(hull, hull[1:]))
    return NewtonPolygon(tuple(pts), tuple(x for x, _ in hull), slopes)


# Frobenius valuations ------------------------------------------------------------


def frobenius_valuations(datum: TamePairDatum) -> list[Fraction]:
    """The nd eigenvalue valuations, sorted ascending."""
    out = []
    for pr in datum.pairs:
        for k in range(pr.e):
            v = pr.zeta_val / pr.f - (Fraction(pr.e - 1, 2) - k) * datum.val_q
            out.extend([v] * pr.f)
    return sorted(out)


def frobenius_valuation_sums(datum: TamePairDatum) -> list[Fraction]:
    return list(itertools.accumulate(frobenius_valuations(datum)))


# the criterion ---------------------------------------------------------------------


@dataclass
class NewtonWitnessReport:
    verdict: str
    lambda_vals: list
    unit_indices: list[int]
    unit_js: list[int]
    identity_js: list[int]
    vertex_checks: dict = field(default_factory=dict)
    witness: int | None = None
    degenerate: bool = False
    valuation_sums: list = field(default_factory=list)

    @property
    def paths_agree(self) -> bool:
        """The unit criterion and the valuation-sum identity co-occur."""
        return bool(self.unit_js) == bool(self.identity_js)

    def to_json(self) -> dict:
        s = lambda x: None if x is None else str(x)
        return {
            "verdict": self.verdict,
            "lambda_valuations": [s(v) for v in self.lambda_vals],
            "unit_indices": self.unit_indices,
            "unit_js": self.unit_js,
            "identity_js": self.identity_js,
            "vertex_checks": {str(k): v for k, v in self.vertex_checks.items()},
            "witness_j": self.witness,
            "degenerate": self.degenerate,
            "paths_agree": self.paths_agree,
            "valuation_sums": [s(v) for v in self.valuation_sums],
        }


def newton_witness_check(datum: TamePairDatum) -> NewtonWitnessReport:
    n, d, vq = datum.n, datum.d, datum.val_q
    lams = lambda_scalars(datum)
    vals = [lam.val() for lam in lams]
    degenerate = any(v is None for v in vals)
    sums = frobenius_valuation_sums(datum)
    identity_js = [j for j in range(1, n)
                   if sums[j * d - 1] == -Fraction(d * d * j * (n - j), 2) * vq]
    integral = all(v is None or v >= 0 for v in vals) and vals[-1] == 0
    if not integral:
        return NewtonWitnessReport("not integral", vals, [], [], identity_js,
                             degenerate=degenerate, valuation_sums=sums)
    unit_indices = [i for i in range(1, n) if vals[i - 1] == 0]
    unit_js = sorted(n - i for i in unit_indices)
    pts = [(0, Fraction(0))]
    for i in range(1, n + 1):
        if vals[i - 1] is not None:
            pts.append((i, vals[i - 1] + d * d * math.comb(i, 2) * vq))
    poly = newton_polygon(pts)
    vertex_checks = {j: poly.is_vertex(n - j) for j in unit_js}
    witness = next((j for j in unit_js if j in identity_js), None)
    if not unit_js:
        verdict = "supersingular-consistent (no unit)"
    elif witness is not None and all(vertex_checks.values()):
        verdict = "witness"
    else:
        verdict = "identity failed"
    return NewtonWitnessReport(verdict, vals, unit_indices, unit_js, identity_js,
                         vertex_checks, witness, degenerate, sums)


def newton_witness_sweep(p: int = 3, ds=(1, 2), val_qs=(1, 2), signs=(1, -1)):
    """Exhaustive n = 2 instances; yields (datum, report)."""
    halves = [Fraction(k, 2) for k in range(-2, 3)]
    for d in ds:
        divisors = [f for f in range(1, d + 1) if d % f == 0]
        for vq in val_qs:
            for f1, f2 in itertools.product(divisors, repeat=2):
                for z1, z2 in itertools.product(halves, repeat=2):
                    for s1, s2 in itertools.product(signs, repeat=2):
                        pairs = []
                        for f, z, sg in ((f1, z1, s1), (f2, z2, s2)):
                            e = d // f
                            pairs.append(TamePair(f, e, z, PSurd.p_power(p, e * z, sg)))
                        datum = TamePairDatum(2, d, Fraction(vq), tuple(pairs), p)
                        yield datum, newton_witness_check(datum)


# weak admissibility ------------------------------------------------------------------


@dataclass
class WeakAdmissibilityReport:
    verdict: str
    equalities: list[int]
    violations: list[int]
    balanced: bool

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "equalities": self.equalities,
                "violations": self.violations, "balanced": self.balanced}


def weak_admissibility_check(vals, hodge: dict, deg_F0: int) -> WeakAdmissibilityReport:
    """Compare partial sums of Frobenius valuations with Hodge-Tate partial sums.

    ``hodge`` maps each embedding to its sorted weights.  The verdict is
    "not weakly admissible" on a strict violation, "no-verdict" when every
    weight row is constant, "reducible" on an interior equality, and
    "weakly admissible" otherwise.  ``balanced`` records equality at j = n.
    """
    vals = [Fraction(v) for v in vals]
    n = len(vals)
    if deg_F0 <= 0:
        raise ValueError("deg_F0 must be positive")
    if any(a > b for a, b in zip(vals, vals[1:])):
        raise ValueError("vals must be sorted ascending")
    rows = [[Fraction(h) for h in row] for row in hodge.values()]
    for row in rows:
        if len(row) != n:
            raise ValueError("every Hodge-Tate row needs n weights")
        if any(a > b for a, b in zip(row, row[1:])):
            raise ValueError("Hodge-Tate rows must be sorted ascending")
    equalities, violations = [], []
    lhs, rhs = Fraction(0), Fraction(0)
    for j in range(n + 1):
        if j:
            lhs += vals[j - 1]
            rhs += sum(row[j - 1] for row in rows) / deg_F0
        if lhs < rhs:
            violations.append(j)
        elif lhs == rhs:
            equalities.append(j)
    balanced = n in equalities
    if violations:
        verdict = "not weakly admissible"
    elif all(row[0] == row[-1] for row in rows):
        verdict = "no-verdict"
    elif any(0 < j < n for j in equalities):
        verdict = "reducible"
    else:
        verdict = "weakly admissible"
    return WeakAdmissibilityReport(verdict, equalities, violations, balanced)
