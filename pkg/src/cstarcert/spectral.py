"""Group-algebra elements, Kesten norms, and the conjugation-averaging bound.

An :class:`AlgebraElement` is a finitely supported sum ``X = sum z_g L(g)``
of left-translation operators on l2 of the group, with exact rational
real and imaginary coefficient parts.  Trace identities, supports, and
disjointness facts are computed exactly; operator norms are certified
numerically (a compressed lower bound from power iteration and the l1
upper bound).

The inner product convention is fixed once here: ``<x | y>`` is
conjugate-linear in the first slot.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np
import scipy.sparse
from scipy.linalg import eigh_tridiagonal

from . import citations
from .boundary import (
    PowersData,
    _verify_exact,
    in_cylinder,
)
from .errors import DomainError, MalformedInputError, ResourceCapError
from .words import (
    DEFAULT_BALL_CAP,
    FreeGroup,
    FreeProduct,
    GroupSpec,
    IDENTITY,
    INFINITE,
    Word,
    enumerate_ball,
    format_word,
    invert,
    left_translation_table,
    multiply,
    parse_word,
    word_key,
)

Coeff = Tuple[Fraction, Fraction]  # exact (real, imaginary) parts

ZERO: Coeff = (Fraction(0), Fraction(0))
ONE: Coeff = (Fraction(1), Fraction(0))


def coeff(re, im=0) -> Coeff:
    return (Fraction(re), Fraction(im))


def _cadd(a: Coeff, b: Coeff) -> Coeff:
    return (a[0] + b[0], a[1] + b[1])


def _cmul(a: Coeff, b: Coeff) -> Coeff:
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _cconj(a: Coeff) -> Coeff:
    return (a[0], -a[1])


def _cabs2(a: Coeff) -> Fraction:
    return a[0] * a[0] + a[1] * a[1]


def _cfloat(a: Coeff) -> complex:
    return complex(a[0]) + 1j * complex(a[1])


def coeff_to_json(a: Coeff) -> list:
    return [str(a[0]), str(a[1])]


def coeff_from_json(pair) -> Coeff:
    if not isinstance(pair, (list, tuple)) or len(pair) != 2:
        raise MalformedInputError(f"coefficient must be [re, im], got {pair!r}")
    return (Fraction(pair[0]), Fraction(pair[1]))


class AlgebraElement:
    """Finitely supported coefficient map g -> z_g, i.e. X = sum z_g L(g)."""

    __slots__ = ("spec", "coeffs")

    def __init__(self, spec: GroupSpec, coeffs: Mapping[Word, Coeff]):
        self.spec = spec
        self.coeffs: Dict[Word, Coeff] = {
            g: z for g, z in coeffs.items() if z != ZERO
        }

    @staticmethod
    def zero(spec: GroupSpec) -> "AlgebraElement":
        return AlgebraElement(spec, {})

    @staticmethod
    def one(spec: GroupSpec) -> "AlgebraElement":
        return AlgebraElement(spec, {IDENTITY: ONE})

    @staticmethod
    def translation(spec: GroupSpec, g: Word, z: Coeff = ONE) -> "AlgebraElement":
        """z * L(g)."""
        return AlgebraElement(spec, {g: z})

    def support(self) -> Tuple[Word, ...]:
        return tuple(sorted(self.coeffs, key=lambda g: word_key(self.spec, g)))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, AlgebraElement)
            and self.spec == other.spec
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.spec, frozenset(self.coeffs.items())))

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        out = dict(self.coeffs)
        for g, z in other.coeffs.items():
            out[g] = _cadd(out.get(g, ZERO), z)
        return AlgebraElement(self.spec, out)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + other.scale((Fraction(-1), Fraction(0)))

    def scale(self, z: Coeff) -> "AlgebraElement":
        return AlgebraElement(self.spec, {g: _cmul(z, w) for g, w in self.coeffs.items()})

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        out: Dict[Word, Coeff] = {}
        for g, zg in self.coeffs.items():
            for h, zh in other.coeffs.items():
                gh = multiply(self.spec, g, h)
                out[gh] = _cadd(out.get(gh, ZERO), _cmul(zg, zh))
        return AlgebraElement(self.spec, out)

    def adjoint(self) -> "AlgebraElement":
        """Coefficients of X*: z*_g = conj(z_{g^-1})."""
        return AlgebraElement(
            self.spec,
            {invert(self.spec, g): _cconj(z) for g, z in self.coeffs.items()},
        )

    def trace(self) -> Coeff:
        """Canonical trace: the coefficient at the identity."""
        return self.coeffs.get(IDENTITY, ZERO)

    def l1_norm(self) -> float:
        return sum(math.sqrt(float(_cabs2(z))) for z in self.coeffs.values())

    def l1_norm_exact(self) -> Optional[Fraction]:
        """Sum of |z_g| as an exact rational, or None when irrational."""
        total = Fraction(0)
        for re, im in self.coeffs.values():
            if im == 0:
                total += abs(re)
            elif re == 0:
                total += abs(im)
            else:
                return None
        return total

    def to_json(self) -> dict:
        return {
            format_word(g): coeff_to_json(self.coeffs[g]) for g in self.support()
        }

    @staticmethod
    def from_json(spec: GroupSpec, payload: Mapping[str, Sequence]) -> "AlgebraElement":
        coeffs: Dict[Word, Coeff] = {}
        for text, pair in payload.items():
            g = parse_word(spec, text)
            coeffs[g] = _cadd(coeffs.get(g, ZERO), coeff_from_json(pair))
        return AlgebraElement(spec, coeffs)

    def __repr__(self):
        terms = ", ".join(
            f"{format_word(g)}: {z[0]}{'+' if z[1] >= 0 else ''}{z[1]}i"
            for g, z in sorted(self.coeffs.items(), key=lambda kv: word_key(self.spec, kv[0]))
        )
        return f"AlgebraElement({{{terms}}})"


class L2Vector:
    """Finitely supported vector in l2 of the group, exact coefficients."""

    __slots__ = ("spec", "entries")

    def __init__(self, spec: GroupSpec, entries: Mapping[Word, Coeff]):
        self.spec = spec
        self.entries: Dict[Word, Coeff] = {
            g: z for g, z in entries.items() if z != ZERO
        }

    @staticmethod
    def delta(spec: GroupSpec, g: Word, z: Coeff = ONE) -> "L2Vector":
        return L2Vector(spec, {g: z})

    def norm_sq(self) -> Fraction:
        return sum((_cabs2(z) for z in self.entries.values()), Fraction(0))

    def inner(self, other: "L2Vector") -> Coeff:
        """<self | other>, conjugate-linear in self."""
        acc = ZERO
        for g, z in self.entries.items():
            w = other.entries.get(g)
            if w is not None:
                acc = _cadd(acc, _cmul(_cconj(z), w))
        return acc

    def __eq__(self, other):
        return (
            isinstance(other, L2Vector)
            and self.spec == other.spec
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.spec, frozenset(self.entries.items())))


def apply_element(X: AlgebraElement, xi: L2Vector) -> L2Vector:
    """(X xi)(x) = sum_g z_g xi(g^-1 x), exactly."""
    spec = X.spec
    out: Dict[Word, Coeff] = {}
    for g, zg in X.coeffs.items():
        for y, zy in xi.entries.items():
            gy = multiply(spec, g, y)
            out[gy] = _cadd(out.get(gy, ZERO), _cmul(zg, zy))
    return L2Vector(spec, out)


def moment(X: AlgebraElement, n: int, cap: int = DEFAULT_BALL_CAP) -> Fraction:
    """<delta_e, (X*X)^n delta_e> as an exact nonnegative rational.

    The support of the intermediate vector grows with each application;
    exceeding ``cap`` entries raises :class:`ResourceCapError`.
    """
    if n < 0:
        raise DomainError(f"moment order must be >= 0, got {n}")
    adj = X.adjoint()
    v = L2Vector.delta(X.spec, IDENTITY)
    for _ in range(n):
        v = apply_element(adj, apply_element(X, v))
        if len(v.entries) > cap:
            raise ResourceCapError("moment vector support exceeds the cap", cap)
    value = v.entries.get(IDENTITY, ZERO)
    assert value[1] == 0
    return value[0]


def markov_operator(spec: GroupSpec) -> AlgebraElement:
    """h = (1/|S|) sum_{s in S} L(s) for the standard symmetric generators."""
    gens: List[Word] = []
    if isinstance(spec, FreeGroup):
        for i in range(spec.rank):
            gens.append(((i, 1),))
            gens.append(((i, -1),))
    elif isinstance(spec, FreeProduct):
        for i, m in enumerate(spec.orders):
            gens.append(((i, 1),))
            inv = ((i, m - 1),) if m != INFINITE else ((i, -1),)
            if inv != ((i, 1),):
                gens.append(inv)
    else:
        raise DomainError("Markov operator needs a word family")
    w = coeff(Fraction(1, len(gens)))
    return AlgebraElement(spec, {g: w for g in gens})


# ---------------------------------------------------------------------------
# norm bounds


@dataclass(frozen=True)
class NormReport:
    lower: float
    upper: float
    radius: int
    iterations: int
    capped: bool

    def to_json(self) -> dict:
        return {
            "lower": self.lower,
            "upper": self.upper,
            "radius": self.radius,
            "iterations": self.iterations,
            "capped": self.capped,
        }


@functools.lru_cache(maxsize=4)
def _cached_ball(spec: GroupSpec, radius: int, cap: int):
    return enumerate_ball(spec, radius, cap=cap)


def _compression_matrix(X: AlgebraElement, ball) -> scipy.sparse.csr_matrix:
    """Sparse matrix of X restricted to l2(ball) (codomain unrestricted)."""
    spec = X.spec
    real = all(z[1] == 0 for z in X.coeffs.values())
    dtype = np.float64 if real else np.complex128
    row_index: Dict[Word, int] = {}
    rows: List[int] = []
    cols: List[int] = []
    vals: List[complex] = []
    for g, z in sorted(X.coeffs.items(), key=lambda kv: word_key(spec, kv[0])):
        zc = _cfloat(z)
        table = left_translation_table(spec, g, ball)
        for col, target in enumerate(table):
            r = row_index.setdefault(target, len(row_index))
            rows.append(r)
            cols.append(col)
            vals.append(zc.real if real else zc)
    return scipy.sparse.csr_matrix(
        (np.asarray(vals, dtype=dtype), (rows, cols)),
        shape=(max(len(row_index), 1), len(ball)),
    )


def norm_bounds(
    X: AlgebraElement,
    radius: int,
    tol: float = 1e-10,
    max_iterations: int = 10**4,
    cap: int = DEFAULT_BALL_CAP,
) -> NormReport:
    """Certified operator-norm bracket for X.

    ``lower`` is sup ||X xi|| / ||xi|| over xi supported in the ball of
    the given radius (the square root of the top eigenvalue of the
    compression of X*X, via deterministic power iteration started from
    the normalized all-ones vector); ``upper`` is the l1 bound
    sum |z_g|.
    """
    if radius < 0:
        raise MalformedInputError(f"radius must be >= 0, got {radius}")
    upper = X.l1_norm()
    if not X.coeffs:
        return NormReport(0.0, 0.0, radius, 0, False)
    ball = _cached_ball(X.spec, radius, cap)
    A = _compression_matrix(X, ball)
    AH = A.conjugate().transpose().tocsr()
    n = len(ball)
    v = np.full(n, 1.0 / math.sqrt(n), dtype=A.dtype)
    lam_prev = 0.0
    iterations = 0
    capped = True
    for iterations in range(1, max_iterations + 1):
        tv = AH @ (A @ v)
        lam = float(np.linalg.norm(tv))
        if lam == 0.0:
            return NormReport(0.0, upper, radius, iterations, False)
        v = tv / lam
        if abs(lam - lam_prev) <= tol * max(lam, 1e-300):
            capped = False
            break
        lam_prev = lam
    return NormReport(math.sqrt(lam), upper, radius, iterations, capped)


# ---------------------------------------------------------------------------
# radial (spherical) reduction for the free-group Markov operator


def radial_norm(k: int, truncation: int = 10**4) -> float:
    """Norm of the Markov operator on F_k from the radial reduction.

    On radial vectors the operator acts as the symmetric tridiagonal
    matrix with zero diagonal and off-diagonals 1/sqrt(2k),
    sqrt(2k-1)/(2k), ...; the truncated top eigenvalue increases to the
    true norm sqrt(2k-1)/k.
    """
    if k < 1:
        raise DomainError(f"rank must be >= 1, got {k}")
    if truncation < 2:
        raise MalformedInputError("truncation size must be >= 2")
    d = np.zeros(truncation)
    e = np.empty(truncation - 1)
    e[0] = 1.0 / math.sqrt(2 * k)
    e[1:] = math.sqrt(2 * k - 1) / (2 * k)
    top = eigh_tridiagonal(
        d, e, select="i", select_range=(truncation - 1, truncation - 1),
        eigvals_only=True,
    )
    return float(top[0])


def markov_moment(k: int, n: int) -> Fraction:
    """<delta_e, h^(2n) delta_e> on F_k, exactly, via the radial walk.

    Counts closed walks of length 2n at a vertex of the 2k-regular
    tree: from the root all 2k steps go up; from distance m >= 1 there
    are 2k-1 steps up and one step down.
    """
    if k < 1 or n < 0:
        raise DomainError("need k >= 1 and n >= 0")
    counts: Dict[int, int] = {0: 1}
    for _ in range(2 * n):
        nxt: Dict[int, int] = {}
        for m, c in counts.items():
            if m == 0:
                nxt[1] = nxt.get(1, 0) + 2 * k * c
            else:
                nxt[m + 1] = nxt.get(m + 1, 0) + (2 * k - 1) * c
                nxt[m - 1] = nxt.get(m - 1, 0) + c
        counts = nxt
    return Fraction(counts.get(0, 0), (2 * k) ** (2 * n))


# ---------------------------------------------------------------------------
# conjugation averaging


def powers_average(U: AlgebraElement, data: PowersData) -> AlgebraElement:
    """V = (1/N) sum_j L(gamma_j) U L(gamma_j^-1), exact coefficients."""
    spec = U.spec
    n = coeff(Fraction(1, data.N))
    out: Dict[Word, Coeff] = {}
    for g, z in U.coeffs.items():
        zn = _cmul(n, z)
        for gamma in data.gammas:
            target = multiply(
                spec, multiply(spec, gamma, g), invert(spec, gamma)
            )
            out[target] = _cadd(out.get(target, ZERO), zn)
    return AlgebraElement(spec, out)


@dataclass(frozen=True)
class AveragingReport:
    n: int
    radius: int
    lower_y: float
    ceiling: float
    bound_ok: bool
    ranges_disjoint: bool
    overlap_witness: Optional[str]
    passed: bool

    def to_json(self) -> dict:
        return {
            "N": self.n,
            "radius": self.radius,
            "compressed_lower_Y": self.lower_y,
            "ceiling_2_sqrtN_l1": self.ceiling,
            "bound_ok": self.bound_ok,
            "orthogonal_ranges_disjoint": self.ranges_disjoint,
            "overlap_witness": self.overlap_witness,
            "passed": self.passed,
        }


def averaging_inequality_check(
    Xp: AlgebraElement,
    data: PowersData,
    radius: int,
    tol: float = 1e-9,
) -> AveragingReport:
    """Check ||Y'|| <= (2/sqrt N) l1(X') on a finite compression.

    Y' is the conjugation average of X' over the certificate translates.
    Also verifies, exactly at the level of supports, that the ranges of
    the projected summands P_j L(gamma_j) X' L(gamma_j^-1) on l2(ball)
    are pairwise disjoint (P_j restricts to functions supported on
    gamma_j D).
    """
    spec = Xp.spec
    support = set(Xp.coeffs)
    if not support <= set(data.F):
        raise DomainError("X' must be supported inside the certificate's set F")
    if not _verify_exact(spec, data).passed:
        raise DomainError("certificate fails exact verification")

    Y = powers_average(Xp, data)
    lower = norm_bounds(Y, radius).lower if Y.coeffs else 0.0
    ceiling = (2.0 / math.sqrt(data.N)) * Xp.l1_norm()
    bound_ok = lower <= ceiling + tol

    ball = _cached_ball(spec, radius, DEFAULT_BALL_CAP)
    cyl = data.cylinder
    supports: List[frozenset] = []
    for gamma in data.gammas:
        ginv = invert(spec, gamma)
        image = set()
        for f in Xp.coeffs:
            w = multiply(spec, multiply(spec, gamma, f), ginv)
            y_table = left_translation_table(spec, w, ball)
            z_table = left_translation_table(spec, multiply(spec, f, ginv), ball)
            for y, z in zip(y_table, z_table):
                # y lies in gamma_j D  iff  gamma_j^-1 y = f gamma_j^-1 x = z is outside C
                if not in_cylinder(spec, cyl, z):
                    image.add(y)
        supports.append(frozenset(image))
    witness: Optional[Word] = None
    for j in range(data.N):
        for k in range(j + 1, data.N):
            common = supports[j] & supports[k]
            if common:
                witness = min(common, key=lambda w: word_key(spec, w))
                break
        if witness is not None:
            break
    disjoint = witness is None

    return AveragingReport(
        n=data.N,
        radius=radius,
        lower_y=lower,
        ceiling=ceiling,
        bound_ok=bound_ok,
        ranges_disjoint=disjoint,
        overlap_witness=None if witness is None else format_word(witness),
        passed=bound_ok and disjoint,
    )


@dataclass(frozen=True)
class InvertibilityCertificate:
    epsilon: float
    l1: float
    n: int
    bound: float
    data: PowersData
    compressed_lower: float
    trace_v: Coeff
    passed: bool

    def to_json(self) -> dict:
        from .boundary import powers_data_to_json

        return {
            "epsilon": self.epsilon,
            "l1_X": self.l1,
            "N": self.n,
            "certified_bound_on_Y": self.bound,
            "bound_below_one": self.bound < 1.0,
            "compressed_lower_Y": self.compressed_lower,
            "trace_V": coeff_to_json(self.trace_v),
            "certificate": powers_data_to_json(self.data),
            "passed": self.passed,
        }


def _select_averaging_n(X: AlgebraElement, eps: Fraction) -> int:
    """Smallest N with (2/sqrt N) l1(X) < 1 - eps, exactly when possible."""
    l1_exact = X.l1_norm_exact()
    gap = 1 - eps
    if l1_exact is not None:
        if l1_exact == 0:
            return 1
        n = max(1, math.floor(4 * l1_exact * l1_exact / (gap * gap)))
        while 4 * l1_exact * l1_exact >= n * gap * gap:
            n += 1
        return n
    l1 = X.l1_norm()
    n = max(1, math.floor((2 * l1 / float(gap)) ** 2))
    while 2 * l1 / math.sqrt(n) >= float(gap):
        n += 1
    return n


def invertibility_certificate(
    U: AlgebraElement,
    eps: float,
    radius: int,
    n_limit: int = 4096,
) -> InvertibilityCertificate:
    """Averaging certificate that the ideal generated by U contains 1 + Y
    with a certified bound ||Y|| < 1.

    U must have trace exactly 1 (U = 1 + X with no identity coefficient in
    X).  X is already finitely supported, so the truncation step is the
    identity; N is chosen with (2/sqrt N) l1(X) < 1 - eps, a certificate
    for F = supp(X) is constructed, and V = 1 + Y is the conjugation
    average of U.  The bound uses l1(X) >= ||X||, so it is rigorous.
    """
    from .boundary import construct_powers_data

    if not 0 < eps < 1:
        raise DomainError(f"epsilon must lie in (0, 1), got {eps}")
    if U.trace() != ONE:
        raise DomainError("U must have trace exactly 1 (U = 1 + X, X traceless)")
    spec = U.spec
    X = AlgebraElement(
        spec, {g: z for g, z in U.coeffs.items() if g != IDENTITY}
    )
    n = _select_averaging_n(X, Fraction(eps))
    if n > n_limit:
        raise DomainError(
            f"selected N = {n} exceeds the configured limit {n_limit}; "
            "increase epsilon or the limit"
        )
    data = construct_powers_data(spec, X.support(), n)
    V = powers_average(U, data)
    Y = V - AlgebraElement.one(spec)
    bound = (2.0 / math.sqrt(n)) * X.l1_norm()
    lower = norm_bounds(Y, radius).lower if Y.coeffs else 0.0
    trace_v = V.trace()
    passed = bound < 1.0 and trace_v == ONE and lower <= bound + 1e-9
    return InvertibilityCertificate(
        epsilon=eps,
        l1=X.l1_norm(),
        n=n,
        bound=bound,
        data=data,
        compressed_lower=lower,
        trace_v=trace_v,
        passed=passed,
    )


# ---------------------------------------------------------------------------
# coefficient separation and the Kesten bound


def diag_coefficient(xi: L2Vector, g: Word) -> Coeff:
    """phi_{xi,xi}(g) = <xi | L(g) xi> (conjugate-linear in the first slot)."""
    X = AlgebraElement.translation(xi.spec, g)
    return xi.inner(apply_element(X, xi))


@dataclass(frozen=True)
class SeparationReport:
    element: str
    value: Coeff
    distance_sq: Fraction
    passed: bool

    def to_json(self) -> dict:
        return {
            "element": self.element,
            "phi": coeff_to_json(self.value),
            "abs_phi_minus_1": math.sqrt(float(self.distance_sq)),
            "passed": self.passed,
        }


def separation_check(spec: GroupSpec, a: Word) -> SeparationReport:
    """Diagonal coefficients separate a != e from the identity.

    Uses the vector (delta_e + i delta_a)/sqrt(2); the normalization is
    carried as the exact factor 1/2 on the quadratic form, so the value
    of phi at ``a`` is exact.
    """
    if a == IDENTITY:
        raise DomainError("separation is asked for a != e")
    xi = L2Vector(spec, {IDENTITY: ONE, a: (Fraction(0), Fraction(1))})
    raw = diag_coefficient(xi, a)
    value = (raw[0] / 2, raw[1] / 2)
    diff = (value[0] - 1, value[1])
    dist_sq = _cabs2(diff)
    return SeparationReport(
        element=format_word(a),
        value=value,
        distance_sq=dist_sq,
        passed=value != ONE,
    )


@dataclass(frozen=True)
class KestenReport:
    average: Fraction
    bound: float
    epsilon: float
    passed: bool

    def to_json(self) -> dict:
        return {
            "generator_average": str(self.average),
            "average_float": float(self.average),
            "radial_norm_bound": self.bound,
            "epsilon": self.epsilon,
            "passed": self.passed,
        }


def kesten_bound_check(
    spec: GroupSpec, xi: L2Vector, truncation: int = 10**4, tol: float = 1e-9
) -> KestenReport:
    """(1/2k) sum_s Re phi(s) <= radial norm, for the normalized vector.

    The generator average is computed for xi / ||xi|| exactly (dividing
    the quadratic form by ||xi||^2, so no irrational entries arise); a
    zero vector is a domain error.
    """
    if not isinstance(spec, FreeGroup) or spec.rank < 2:
        raise DomainError("the Kesten bound check is for free groups of rank >= 2")
    nsq = xi.norm_sq()
    if nsq == 0:
        raise DomainError("xi must be a nonzero vector")
    total = Fraction(0)
    for i in range(spec.rank):
        for s in (((i, 1),), ((i, -1),)):
            total += diag_coefficient(xi, s)[0]
    average = total / (2 * spec.rank) / nsq
    bound = radial_norm(spec.rank, truncation)
    return KestenReport(
        average=average,
        bound=bound,
        epsilon=1.0 - bound,
        passed=float(average) <= bound + tol,
    )
