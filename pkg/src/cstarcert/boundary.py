"""Tree-boundary dynamics and Powers partition certificates.

Free groups and free products act on the boundary of their Cayley /
Bass-Serre tree.  Boundary points are infinite reduced words; the ones
this module needs are all eventually periodic, written ``prefix *
period^infinity`` in a unique canonical form.  Hyperbolic elements
translate along an axis and fix exactly two boundary points (source and
range); transversality of two hyperbolic elements means their fixed
point pairs are disjoint.

A Powers certificate is a partition of the group into ``C``, a union of
word-prefix cylinders, and its complement ``D``, together with elements
``gamma_1..gamma_N``, such that

* ``f C`` is disjoint from ``C`` for every ``f`` in the prescribed
  finite set ``F``, and
* the translates ``gamma_j D`` are pairwise disjoint.

Both conditions quantify over the whole (infinite) group.  Exact
verification reduces them to finite searches: a membership predicate
only reads a bounded prefix of a word, so any witness can be truncated
to a bounded candidate set (prefixes of the multiplier's inverse,
extended by a ball of radius ``max prefix length + 1``).
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from . import citations
from .errors import (
    ConstructionFailureError,
    DomainError,
    MalformedInputError,
    NotHyperbolicError,
)
from .words import (
    Ball,
    FreeGroup,
    FreeProduct,
    GroupSpec,
    IDENTITY,
    INFINITE,
    Syllable,
    Word,
    _norm_exp,
    enumerate_ball,
    format_word,
    from_letters,
    invert,
    left_translation_table,
    letters,
    multiply,
    parse_word,
    power,
    starts_with,
    word_key,
    word_length,
)

DEFAULT_SEARCH_BOUND = 12


# ---------------------------------------------------------------------------
# boundary points


@dataclass(frozen=True)
class BoundaryPoint:
    """Canonical eventually periodic boundary word ``prefix * period^inf``.

    Canonical means: the period is primitive, and the prefix is the
    shortest one realizing the infinite word (so structural equality
    decides equality of boundary points).
    """

    prefix: Word
    period: Word

    def stream(self, spec: GroupSpec, n: int) -> Tuple[Syllable, ...]:
        """First ``n`` letters of the infinite word."""
        out = list(letters(spec, self.prefix))
        per = letters(spec, self.period)
        while len(out) < n:
            out.extend(per)
        return tuple(out[:n])


def _letters_cancel(spec: GroupSpec, a: Syllable, b: Syllable) -> bool:
    """Would letter ``b`` after letter ``a`` reduce the stream?"""
    if isinstance(spec, FreeGroup):
        return a == (b[0], -b[1])
    # free product streams must alternate factors
    return a[0] == b[0]


def _validate_period(spec: GroupSpec, per: Sequence[Syllable]) -> None:
    if not per:
        raise DomainError("boundary period must be nonempty")
    if _letters_cancel(spec, per[-1], per[0]):
        raise DomainError(
            "period does not define an infinite reduced word "
            "(cancellation at the period/period junction)"
        )


def boundary_point(spec: GroupSpec, prefix: Word, period: Word) -> BoundaryPoint:
    """Canonical boundary point for ``prefix * period^inf``.

    Absorbs cancellation at the prefix/period junction, makes the
    period primitive, and shifts period letters out of the prefix until
    the prefix is shortest.
    """
    per = list(letters(spec, period))
    _validate_period(spec, per)
    pre = list(letters(spec, prefix))

    # resolve the prefix/period junction (cancellation or, for free
    # products, a syllable merge)
    while pre:
        last, first = pre[-1], per[0]
        if isinstance(spec, FreeGroup):
            if last == (first[0], -first[1]):
                pre.pop()
                per = per[1:] + per[:1]
                continue
            break
        if last[0] == first[0]:
            merged = _norm_exp(spec, last[0], last[1] + first[1])
            pre.pop()
            per = per[1:] + per[:1]
            if merged != 0:
                pre.append((last[0], merged))
                break
            continue
        break

    n = len(per)
    for d in range(1, n + 1):
        if n % d == 0 and per == per[:d] * (n // d):
            per = per[:d]
            break

    while pre and pre[-1] == per[-1]:
        pre.pop()
        per = [per[-1]] + per[:-1]

    return BoundaryPoint(from_letters(spec, pre), from_letters(spec, per))


def act_on_boundary(spec: GroupSpec, g: Word, point: BoundaryPoint) -> BoundaryPoint:
    """Left action of the group on boundary points."""
    u, c = point.prefix, point.period
    lc = len(letters(spec, c))
    budget = len(letters(spec, g)) + len(letters(spec, u))
    k = budget // lc + 2
    prev = multiply(spec, g, multiply(spec, u, power(spec, c, k)))
    for _ in range(budget + 4):
        nxt = multiply(spec, prev, c)
        pl, nl = letters(spec, prev), letters(spec, nxt)
        if len(nl) == len(pl) + lc and nl[: len(pl)] == pl:
            return boundary_point(spec, prev, c)
        prev = nxt
    raise AssertionError("boundary action did not stabilize")


# ---------------------------------------------------------------------------
# hyperbolic classification


def _cyclic_reduce(spec: GroupSpec, g: Word) -> Tuple[Word, Word]:
    """Decompose g = u c u^-1 with c cyclically reduced; deterministic."""
    u: Word = IDENTITY
    c = g
    while len(c) >= 2 and c[0][0] == c[-1][0]:
        s: Word = (c[0],)
        c = multiply(spec, multiply(spec, invert(spec, s), c), s)
        u = multiply(spec, u, s)
    return u, c


def _elliptic_reason(spec: GroupSpec, core: Word) -> Optional[str]:
    if core == IDENTITY:
        return "the identity is not hyperbolic"
    if isinstance(spec, FreeProduct) and len(core) == 1:
        i, e = core[0]
        if spec.orders[i] != INFINITE:
            return f"element has finite order (conjugate into factor {i} of order {spec.orders[i]})"
        return f"element is conjugate into the infinite cyclic factor {i} (elliptic on the tree)"
    return None


def is_hyperbolic(spec: GroupSpec, g: Word) -> bool:
    _, c = _cyclic_reduce(spec, g)
    return _elliptic_reason(spec, c) is None


@dataclass(frozen=True)
class HyperbolicData:
    source: BoundaryPoint
    range: BoundaryPoint


def hyperbolic_data(spec: GroupSpec, g: Word) -> HyperbolicData:
    """Attracting (range) and repelling (source) fixed boundary points of g.

    Raises :class:`NotHyperbolicError` for elliptic elements: finite
    order, or conjugate into a single free factor.
    """
    u, c = _cyclic_reduce(spec, g)
    reason = _elliptic_reason(spec, c)
    if reason is not None:
        raise NotHyperbolicError(reason)
    return HyperbolicData(
        source=boundary_point(spec, u, invert(spec, c)),
        range=boundary_point(spec, u, c),
    )


def primitive_root(spec: GroupSpec, g: Word) -> Tuple[Word, int]:
    """Write g = root^power with root not a proper power.

    Torsion elements have no such decomposition and raise
    :class:`DomainError`.
    """
    if g == IDENTITY:
        raise DomainError("the identity has no primitive root")
    u, c = _cyclic_reduce(spec, g)
    if isinstance(spec, FreeProduct) and len(c) == 1:
        i, e = c[0]
        if spec.orders[i] != INFINITE:
            raise DomainError("torsion element has no primitive root")
        s = 1 if e > 0 else -1
        root = multiply(spec, multiply(spec, u, ((i, s),)), invert(spec, u))
        return root, abs(e)
    core = letters(spec, c)
    n = len(core)
    for d in range(1, n + 1):
        if n % d == 0 and list(core) == list(core[:d]) * (n // d):
            root_core = from_letters(spec, core[:d])
            root = multiply(spec, multiply(spec, u, root_core), invert(spec, u))
            return root, n // d
    raise AssertionError("unreachable")


def is_transverse(spec: GroupSpec, g: Word, h: Word) -> bool:
    """True iff g and h have no common fixed boundary point."""
    dg = hyperbolic_data(spec, g)
    dh = hyperbolic_data(spec, h)
    return {dg.source, dg.range}.isdisjoint({dh.source, dh.range})


def make_transverse_family(
    spec: GroupSpec, h1: Word, h2: Word, n: int, bound: int = 0
) -> List[Word]:
    """n pairwise transverse hyperbolic elements of the form h1^j h2 h1^-j."""
    if n < 1:
        raise DomainError(f"family size must be >= 1, got {n}")
    if not is_transverse(spec, h1, h2):
        raise DomainError("h1 and h2 must be transverse hyperbolic elements")
    if bound <= 0:
        bound = 16 * n + 64
    family: List[Word] = []
    j = 0
    while len(family) < n:
        j += 1
        if j > bound:
            raise ConstructionFailureError("transverse family search exhausted", bound)
        candidate = multiply(
            spec, multiply(spec, power(spec, h1, j), h2), power(spec, h1, -j)
        )
        if all(is_transverse(spec, candidate, t) for t in family):
            family.append(candidate)
    return family


# ---------------------------------------------------------------------------
# cylinders


@dataclass(frozen=True)
class Cylinder:
    """Union of word-prefix cylinders: everything starting with a prefix."""

    prefixes: Tuple[Word, ...]


def cylinder(spec: GroupSpec, prefixes: Sequence[Word]) -> Cylinder:
    ps = sorted(set(prefixes), key=lambda p: word_key(spec, p))
    if not ps:
        raise MalformedInputError("a cylinder needs at least one prefix")
    for p in ps:
        if p == IDENTITY:
            raise MalformedInputError("cylinder prefixes must be nonempty words")
    for p in ps:
        for q in ps:
            if p != q and starts_with(spec, q, p):
                raise MalformedInputError(
                    f"nested cylinder prefixes: {format_word(p)} begins {format_word(q)}"
                )
    return Cylinder(tuple(ps))


def in_cylinder(spec: GroupSpec, cyl: Cylinder, g: Word) -> bool:
    return any(starts_with(spec, g, p) for p in cyl.prefixes)


def boundary_in_cylinder(spec: GroupSpec, cyl: Cylinder, point: BoundaryPoint) -> bool:
    need = max(len(letters(spec, p)) for p in cyl.prefixes)
    head = point.stream(spec, need)
    return any(
        head[: len(lp)] == lp
        for lp in (letters(spec, p) for p in cyl.prefixes)
    )


def max_prefix_length(spec: GroupSpec, cyl: Cylinder) -> int:
    return max(len(letters(spec, p)) for p in cyl.prefixes)


# ---------------------------------------------------------------------------
# Powers certificates


@dataclass(frozen=True)
class PowersData:
    """Certificate bundle: finite set F, partition C | D, and translates."""

    F: Tuple[Word, ...]
    N: int
    cylinder: Cylinder
    gammas: Tuple[Word, ...]


def powers_data(
    spec: GroupSpec,
    F: Sequence[Word],
    n: int,
    cyl: Cylinder,
    gammas: Sequence[Word],
) -> PowersData:
    fs = sorted(set(F), key=lambda w: word_key(spec, w))
    if IDENTITY in fs:
        raise DomainError("F must not contain the identity")
    gs = tuple(gammas)
    if n < 1:
        raise MalformedInputError(f"N must be >= 1, got {n}")
    if len(gs) != n:
        raise MalformedInputError(f"expected {n} translates, got {len(gs)}")
    if len(set(gs)) != len(gs):
        raise MalformedInputError("translates gamma_j must be pairwise distinct")
    return PowersData(tuple(fs), n, cyl, gs)


def powers_data_to_json(data: PowersData) -> dict:
    return {
        "F": [format_word(w) for w in data.F],
        "N": data.N,
        "cylinder_prefixes": [format_word(p) for p in data.cylinder.prefixes],
        "gammas": [format_word(g) for g in data.gammas],
    }


def powers_data_from_json(spec: GroupSpec, payload: dict) -> PowersData:
    try:
        fs = [parse_word(spec, w) for w in payload["F"]]
        n = payload["N"]
        prefixes = [parse_word(spec, p) for p in payload["cylinder_prefixes"]]
        gammas = [parse_word(spec, g) for g in payload["gammas"]]
    except KeyError as exc:
        raise MalformedInputError(f"certificate JSON missing key {exc}") from exc
    return powers_data(spec, fs, n, cylinder(spec, prefixes), gammas)


# ---------------------------------------------------------------------------
# verification


@dataclass(frozen=True)
class ConditionResult:
    kind: str  # "separation" or "disjointness"
    label: str
    passed: bool
    witness: Optional[str]
    citation: str


@dataclass(frozen=True)
class VerificationReport:
    mode: str
    radius: Optional[int]
    passed: bool
    conditions: Tuple[ConditionResult, ...]

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "radius": self.radius,
            "passed": self.passed,
            "conditions": [
                {
                    "kind": c.kind,
                    "label": c.label,
                    "passed": c.passed,
                    "witness": c.witness,
                    "citation": c.citation,
                }
                for c in self.conditions
            ],
        }


def _infinite_exponent_cap(spec: GroupSpec, cyl: Cylinder, g: Word) -> Optional[int]:
    """Exponent truncation that preserves all membership predicates.

    Only free products with an infinite cyclic factor need one: a
    syllable exponent beyond every exponent in the cylinder prefixes,
    even after the bounded shift a merge with ``g`` can apply, behaves
    exactly like the capped exponent of the same sign.
    """
    if not (isinstance(spec, FreeProduct) and INFINITE in spec.orders):
        return None
    e_cyl = max((abs(e) for p in cyl.prefixes for _, e in p), default=0)
    e_g = max((abs(e) for _, e in g), default=0)
    return e_cyl + e_g + 1


@functools.lru_cache(maxsize=64)
def _witness_ball(spec: GroupSpec, radius: int, exponent_cap: Optional[int]) -> Ball:
    return enumerate_ball(spec, radius, exponent_cap=exponent_cap)


def _find_witness(spec: GroupSpec, cyl: Cylinder, g: Word, in_region) -> Optional[Word]:
    """Smallest x with in_region(x) and in_region(g*x), or None.

    Complete over the whole group: region membership reads at most
    ``m`` letters (m = longest cylinder prefix), and multiplication by
    ``g`` cancels letters only against a prefix of ``g^-1``, so any
    witness truncates to ``(prefix of g^-1) * (word of length <= m+1)``.
    """
    m = max_prefix_length(spec, cyl)
    cap = _infinite_exponent_cap(spec, cyl, g)
    ball = _witness_ball(spec, m + 1, cap)
    ginv_letters = letters(spec, invert(spec, g))
    seen = set()
    found: List[Word] = []
    for k in range(len(ginv_letters) + 1):
        head = from_letters(spec, ginv_letters[:k])
        for w in ball:
            x = multiply(spec, head, w)
            if x in seen:
                continue
            seen.add(x)
            if in_region(x) and in_region(multiply(spec, g, x)):
                found.append(x)
    if not found:
        return None
    return min(found, key=lambda w: word_key(spec, w))


def _disjoint_by_prefix_geometry(
    spec: GroupSpec, cyl: Cylinder, gj: Word, gk: Word
) -> bool:
    """Fast sufficient test for ``gj D`` and ``gk D`` being disjoint.

    If ``g^-1`` begins with a cylinder prefix, any d outside the
    cylinder shares fewer than m letters with ``g^-1``, so ``g*d``
    keeps the first ``len(g) - m`` letters of ``g``.  Translates whose
    kept prefixes are incompatible can therefore never meet.
    """
    m = max_prefix_length(spec, cyl)
    keeps = []
    for g in (gj, gk):
        if not in_cylinder(spec, cyl, invert(spec, g)):
            return False
        lg = letters(spec, g)
        if len(lg) <= m:
            return False
        keeps.append(lg[: len(lg) - m])
    a, b = keeps
    short = min(len(a), len(b))
    return a[:short] != b[:short]


def verify_powers_data(
    spec: GroupSpec,
    data: PowersData,
    radius: Optional[int] = None,
    mode: str = "exact",
) -> VerificationReport:
    """Check the two partition conditions; failures are reported, not raised.

    ``exact`` mode proves the conditions over the entire group by the
    bounded witness search; ``sampled`` mode checks them on every
    element of the ball of the given radius.
    """
    if mode not in ("exact", "sampled"):
        raise MalformedInputError(f"mode must be 'exact' or 'sampled', got {mode!r}")
    if mode == "sampled":
        if radius is None:
            raise MalformedInputError("sampled verification requires a radius")
        return _verify_sampled(spec, data, radius)
    return _verify_exact(spec, data)


def _verify_exact(spec: GroupSpec, data: PowersData) -> VerificationReport:
    cyl = data.cylinder
    conditions: List[ConditionResult] = []

    def in_c(x: Word) -> bool:
        return in_cylinder(spec, cyl, x)

    def in_d(x: Word) -> bool:
        return not in_cylinder(spec, cyl, x)

    for f in data.F:
        witness = _find_witness(spec, cyl, f, in_c)
        conditions.append(
            ConditionResult(
                kind="separation",
                label=f"{format_word(f)}*C disjoint from C",
                passed=witness is None,
                witness=None if witness is None else format_word(witness),
                citation=citations.POWERS,
            )
        )

    for j in range(data.N):
        for k in range(j + 1, data.N):
            gj, gk = data.gammas[j], data.gammas[k]
            label = (
                f"{format_word(gj)}*D disjoint from {format_word(gk)}*D"
            )
            if _disjoint_by_prefix_geometry(spec, cyl, gj, gk):
                conditions.append(
                    ConditionResult("disjointness", label, True, None, citations.POWERS)
                )
                continue
            g = multiply(spec, invert(spec, gk), gj)
            witness = _find_witness(spec, cyl, g, in_d)
            conditions.append(
                ConditionResult(
                    kind="disjointness",
                    label=label,
                    passed=witness is None,
                    witness=None if witness is None else format_word(witness),
                    citation=citations.POWERS,
                )
            )

    return VerificationReport(
        mode="exact",
        radius=None,
        passed=all(c.passed for c in conditions),
        conditions=tuple(conditions),
    )


def _verify_sampled(spec: GroupSpec, data: PowersData, radius: int) -> VerificationReport:
    cyl = data.cylinder
    ball = enumerate_ball(spec, radius)
    in_c = [in_cylinder(spec, cyl, x) for x in ball]
    conditions: List[ConditionResult] = []

    for f in data.F:
        table = left_translation_table(spec, f, ball)
        witness = None
        for i, x in enumerate(ball.elements):
            if in_c[i] and in_cylinder(spec, cyl, table[i]):
                witness = x
                break
        conditions.append(
            ConditionResult(
                kind="separation",
                label=f"{format_word(f)}*C disjoint from C on B({radius})",
                passed=witness is None,
                witness=None if witness is None else format_word(witness),
                citation=citations.POWERS,
            )
        )

    # y in gamma_j D  iff  gamma_j^-1 y lies outside the cylinder
    in_translate = []
    for g in data.gammas:
        table = left_translation_table(spec, invert(spec, g), ball)
        in_translate.append([not in_cylinder(spec, cyl, y) for y in table])
    for j in range(data.N):
        for k in range(j + 1, data.N):
            witness = None
            for i, y in enumerate(ball.elements):
                if in_translate[j][i] and in_translate[k][i]:
                    witness = y
                    break
            conditions.append(
                ConditionResult(
                    kind="disjointness",
                    label=(
                        f"{format_word(data.gammas[j])}*D disjoint from "
                        f"{format_word(data.gammas[k])}*D on B({radius})"
                    ),
                    passed=witness is None,
                    witness=None if witness is None else format_word(witness),
                    citation=citations.POWERS,
                )
            )

    return VerificationReport(
        mode="sampled",
        radius=radius,
        passed=all(c.passed for c in conditions),
        conditions=tuple(conditions),
    )


# ---------------------------------------------------------------------------
# construction


def _supported_powers_family(spec: GroupSpec) -> None:
    if isinstance(spec, FreeGroup):
        if spec.rank < 2:
            raise DomainError("free group certificates need rank >= 2 (Z is amenable)")
        return
    if isinstance(spec, FreeProduct):
        if spec.orders == (2, 2):
            raise DomainError(
                "Z/2 * Z/2 is the infinite dihedral group; "
                "(|G1|-1)(|G2|-1) >= 2 fails and no certificate exists"
            )
        return
    raise DomainError("Powers certificates are built for free groups and free products")


def _sphere_candidates(spec: GroupSpec, length: int, exponent_cap: Optional[int]):
    ball = enumerate_ball(spec, length, exponent_cap=exponent_cap)
    return [g for g in ball if word_length(spec, g) == length]


def _prefix_compatible(spec: GroupSpec, a: Word, b: Word) -> bool:
    la, lb = letters(spec, a), letters(spec, b)
    short = min(len(la), len(lb))
    return la[:short] == lb[:short]


def _find_separation_cylinder(
    spec: GroupSpec, F: Sequence[Word], bound: int
) -> Cylinder:
    """Search prefixes p with f*cyl(p) disjoint from cyl(p) for all f in F.

    Candidates longer than every f admit a complete O(1) filter: a
    witness exists iff reduce(f*p) is prefix-compatible with p.  The
    winner is still confirmed by the exact witness search.
    """
    max_f = max((len(letters(spec, f)) for f in F), default=0)
    cap = None
    if isinstance(spec, FreeProduct) and INFINITE in spec.orders:
        cap = max((abs(e) for f in F for _, e in f), default=1) + 2
    for length in range(max_f + 1, bound + 1):
        for p in _sphere_candidates(spec, length, cap):
            if any(
                _prefix_compatible(spec, multiply(spec, f, p), p) for f in F
            ):
                continue
            cand = cylinder(spec, [p])
            ok = all(
                _find_witness(
                    spec, cand, f, lambda x: in_cylinder(spec, cand, x)
                )
                is None
                for f in F
            )
            if ok:
                return cand
    raise ConstructionFailureError(
        "no separating cylinder prefix found up to the length bound", bound
    )


def _hyperbolic_candidates(spec: GroupSpec, radius: int) -> List[Word]:
    cap = 1 if isinstance(spec, FreeProduct) and INFINITE in spec.orders else None
    ball = enumerate_ball(spec, radius, exponent_cap=cap)
    return [g for g in ball if g != IDENTITY and is_hyperbolic(spec, g)]


def _small_transverse_pair(spec: GroupSpec) -> Tuple[Word, Word]:
    candidates = _hyperbolic_candidates(spec, 2)
    for i, h1 in enumerate(candidates):
        for h2 in candidates[i + 1 :]:
            if is_transverse(spec, h1, h2):
                return h1, h2
    raise ConstructionFailureError("no transverse hyperbolic pair in B(2)", 2)


def _aux_hyperbolic_into(
    spec: GroupSpec, cyl: Cylinder, family: Sequence[Word]
) -> Word:
    """Hyperbolic g0, transverse to the family, with g0^+inf inside the cylinder."""
    anchor = cyl.prefixes[0]
    for core in _hyperbolic_candidates(spec, 3):
        g0 = multiply(spec, multiply(spec, anchor, core), invert(spec, anchor))
        if not is_hyperbolic(spec, g0):
            continue
        if not boundary_in_cylinder(spec, cyl, hyperbolic_data(spec, g0).range):
            continue
        if all(is_transverse(spec, g0, t) for t in family):
            return g0
    raise ConstructionFailureError("no auxiliary hyperbolic element found", 3)


def construct_powers_data(
    spec: GroupSpec,
    F: Sequence[Word],
    n: int,
    search_bound: int = DEFAULT_SEARCH_BOUND,
) -> PowersData:
    """Build a verified Powers certificate for the set F and size N.

    Mirrors the ping-pong construction: pick a cylinder every f in F
    moves off itself, take N pairwise transverse hyperbolic elements,
    conjugate them by an auxiliary hyperbolic element until their fixed
    points sit inside the cylinder, then raise them to powers until the
    translates of the complement are provably pairwise disjoint.  The
    returned certificate always re-verifies in exact mode.
    """
    _supported_powers_family(spec)
    fs = sorted(set(F), key=lambda w: word_key(spec, w))
    if IDENTITY in fs:
        raise DomainError("F must not contain the identity")
    if n < 1:
        raise DomainError(f"N must be >= 1, got {n}")

    cyl = _find_separation_cylinder(spec, fs, search_bound)
    h1, h2 = _small_transverse_pair(spec)
    family = make_transverse_family(spec, h1, h2, n)
    g0 = _aux_hyperbolic_into(spec, cyl, family)

    conjugated: List[Word] = []
    for m in range(1, search_bound + 1):
        shift = power(spec, g0, m)
        conjugated = [
            multiply(spec, multiply(spec, shift, t), invert(spec, shift))
            for t in family
        ]
        if all(
            boundary_in_cylinder(spec, cyl, d.source)
            and boundary_in_cylinder(spec, cyl, d.range)
            for d in map(lambda t: hyperbolic_data(spec, t), conjugated)
        ):
            break
    else:
        raise ConstructionFailureError(
            "could not conjugate the transverse family into the cylinder",
            search_bound,
        )

    pairs = [(j, k) for j in range(n) for k in range(j + 1, n)]
    for q in range(1, search_bound + 1):
        gammas = [power(spec, t, q) for t in conjugated]
        if len(set(gammas)) != n:
            continue
        if not all(
            _disjoint_by_prefix_geometry(spec, cyl, gammas[j], gammas[k])
            for j, k in pairs
        ):
            continue
        data = powers_data(spec, fs, n, cyl, gammas)
        report = _verify_exact(spec, data)
        if report.passed:
            return data
    raise ConstructionFailureError(
        "translate powers did not separate within the bound", search_bound
    )
