"""Exact word arithmetic for free groups, free products, and Coxeter specs.

Elements are reduced words in normal form, stored as tuples of syllables
``(index, exponent)``:

* free group of rank k: index in [0, k), exponent any nonzero integer,
  adjacent syllables have distinct indices;
* free product with factor orders (m_0, ..., m_r): index selects the
  factor, exponent is a canonical residue 1..m_i-1 for a finite factor
  and any nonzero integer for an infinite cyclic factor (order 0);
  adjacent syllables come from distinct factors.

The empty tuple is the identity.  Word length is the generator count for
free groups and the syllable count for free products (the Bass-Serre
tree metric).  All operations are pure functions of immutable values.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence, Tuple

from .errors import DomainError, MalformedInputError, ResourceCapError

Syllable = Tuple[int, int]
Word = Tuple[Syllable, ...]

IDENTITY: Word = ()

DEFAULT_BALL_CAP = 10**7

INFINITE = 0  # factor-order sentinel for an infinite cyclic factor


@dataclass(frozen=True)
class FreeGroup:
    rank: int

    def __post_init__(self):
        if self.rank < 1:
            raise MalformedInputError(f"free group rank must be >= 1, got {self.rank}")


@dataclass(frozen=True)
class FreeProduct:
    orders: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "orders", tuple(self.orders))
        if len(self.orders) < 2:
            raise MalformedInputError("a free product needs at least 2 factors")
        for m in self.orders:
            if m != INFINITE and m < 2:
                raise MalformedInputError(
                    f"factor orders must be >= 2 or 0 (infinite), got {m}"
                )


@dataclass(frozen=True)
class Coxeter:
    """Coxeter system given by its Coxeter matrix; 0 encodes m_st = infinity.

    Word arithmetic is not provided for this family (only the Tits form
    machinery in :mod:`cstarcert.coxeter` consumes it).
    """

    matrix: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        m = tuple(tuple(row) for row in self.matrix)
        object.__setattr__(self, "matrix", m)
        n = len(m)
        for row in m:
            if len(row) != n:
                raise MalformedInputError("Coxeter matrix must be square")
        for i in range(n):
            if m[i][i] != 1:
                raise MalformedInputError("Coxeter matrix diagonal must be 1")
            for j in range(i + 1, n):
                if m[i][j] != m[j][i]:
                    raise MalformedInputError("Coxeter matrix must be symmetric")
                if m[i][j] != INFINITE and m[i][j] < 2:
                    raise MalformedInputError(
                        f"off-diagonal entries must be >= 2 or 0 (infinity), got {m[i][j]}"
                    )

    @property
    def rank(self) -> int:
        return len(self.matrix)


GroupSpec = FreeGroup | FreeProduct | Coxeter


def _require_word_family(spec: GroupSpec) -> None:
    if isinstance(spec, Coxeter):
        raise DomainError("word arithmetic is not supported for Coxeter specs")


def num_generators(spec: GroupSpec) -> int:
    if isinstance(spec, FreeGroup):
        return spec.rank
    if isinstance(spec, FreeProduct):
        return len(spec.orders)
    return spec.rank


def _norm_exp(spec: GroupSpec, index: int, exp: int) -> int:
    """Canonical exponent for one syllable; 0 means the syllable vanishes."""
    if isinstance(spec, FreeProduct):
        m = spec.orders[index]
        if m != INFINITE:
            return exp % m
    return exp


def _check_index(spec: GroupSpec, index: int) -> None:
    if not 0 <= index < num_generators(spec):
        raise MalformedInputError(
            f"generator index {index} out of range for {spec!r}"
        )


def _push(spec: GroupSpec, out: list, index: int, exp: int) -> None:
    exp = _norm_exp(spec, index, exp)
    if exp == 0:
        return
    if out and out[-1][0] == index:
        _, prev = out.pop()
        merged = _norm_exp(spec, index, prev + exp)
        if merged != 0:
            out.append((index, merged))
    else:
        out.append((index, exp))


def reduce_word(spec: GroupSpec, raw: Iterable[Syllable]) -> Word:
    """Normal form of an arbitrary syllable sequence.

    Idempotent: ``reduce_word(spec, reduce_word(spec, w)) == reduce_word(spec, w)``.
    """
    _require_word_family(spec)
    out: list = []
    for index, exp in raw:
        _check_index(spec, index)
        if not isinstance(exp, int):
            raise MalformedInputError(f"exponent must be an integer, got {exp!r}")
        _push(spec, out, index, exp)
    return tuple(out)


def multiply(spec: GroupSpec, g: Word, h: Word) -> Word:
    _require_word_family(spec)
    out = list(g)
    for index, exp in h:
        _push(spec, out, index, exp)
    return tuple(out)


def invert(spec: GroupSpec, g: Word) -> Word:
    _require_word_family(spec)
    return tuple((i, _norm_exp(spec, i, -e)) for i, e in reversed(g))


def conjugate(spec: GroupSpec, g: Word, t: Word) -> Word:
    """t g t^-1."""
    return multiply(spec, multiply(spec, t, g), invert(spec, t))


def power(spec: GroupSpec, g: Word, n: int) -> Word:
    if n < 0:
        g = invert(spec, g)
        n = -n
    acc = IDENTITY
    base = g
    while n:
        if n & 1:
            acc = multiply(spec, acc, base)
        n >>= 1
        if n:
            base = multiply(spec, base, base)
    return acc


def word_length(spec: GroupSpec, g: Word) -> int:
    """Generator count for free groups, syllable count for free products."""
    if isinstance(spec, FreeGroup):
        return sum(abs(e) for _, e in g)
    return len(g)


# ---------------------------------------------------------------------------
# letter expansion
#
# A "letter" is the unit of word length: a single signed generator for
# free groups, a whole canonical syllable for free products.  Reduced
# words concatenate at letter level without interaction, which is what
# the prefix calculus in cstarcert.boundary relies on.

def letters(spec: GroupSpec, g: Word) -> Tuple[Syllable, ...]:
    if isinstance(spec, FreeGroup):
        out = []
        for i, e in g:
            s = 1 if e > 0 else -1
            out.extend([(i, s)] * abs(e))
        return tuple(out)
    return g


def from_letters(spec: GroupSpec, seq: Sequence[Syllable]) -> Word:
    return reduce_word(spec, seq)


def letter_key(spec: GroupSpec, letter: Syllable) -> Tuple[int, int, int]:
    """Total order on letters: a < a^-1 < b < b^-1 < ... (exponents by |e|, + first)."""
    i, e = letter
    if isinstance(spec, FreeProduct) and spec.orders[i] != INFINITE:
        return (i, e, 0)
    return (i, abs(e), 0 if e > 0 else 1)


def word_key(spec: GroupSpec, g: Word):
    return tuple(letter_key(spec, l) for l in letters(spec, g))


def starts_with(spec: GroupSpec, g: Word, prefix: Word) -> bool:
    lp = letters(spec, prefix)
    return letters(spec, g)[: len(lp)] == lp


def parent_letter(spec: GroupSpec, g: Word) -> Tuple[Word, Syllable]:
    """Split g (non-identity) into (word one letter shorter, final letter)."""
    if not g:
        raise DomainError("identity has no parent")
    i, e = g[-1]
    if isinstance(spec, FreeGroup) and abs(e) > 1:
        s = 1 if e > 0 else -1
        return g[:-1] + ((i, e - s),), (i, s)
    return g[:-1], (i, e)


# ---------------------------------------------------------------------------
# ball enumeration


class Ball:
    """All elements of word length <= radius, in (length, lexicographic) order."""

    def __init__(self, spec: GroupSpec, radius: int, elements: Sequence[Word]):
        self.spec = spec
        self.radius = radius
        self.elements: Tuple[Word, ...] = tuple(elements)
        self.index = {g: i for i, g in enumerate(self.elements)}

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Word]:
        return iter(self.elements)

    def __contains__(self, g: Word) -> bool:
        return g in self.index


def free_ball_size(k: int, radius: int) -> int:
    """|B(R)| in the free group F_k: 1 + 2k((2k-1)^R - 1)/(2k-2) for k >= 2."""
    if radius == 0:
        return 1
    if k == 1:
        return 2 * radius + 1
    return 1 + 2 * k * ((2 * k - 1) ** radius - 1) // (2 * k - 2)


def _letter_alphabet(spec: GroupSpec, exponent_cap: Optional[int]) -> list:
    """Sorted letter alphabet; ``exponent_cap`` bounds infinite-cyclic exponents."""
    alphabet = []
    if isinstance(spec, FreeGroup):
        for i in range(spec.rank):
            alphabet.append((i, 1))
            alphabet.append((i, -1))
    else:
        assert isinstance(spec, FreeProduct)
        for i, m in enumerate(spec.orders):
            if m == INFINITE:
                if exponent_cap is None:
                    raise ResourceCapError(
                        "ball of an infinite cyclic free factor is infinite",
                        DEFAULT_BALL_CAP,
                    )
                for e in range(1, exponent_cap + 1):
                    alphabet.append((i, e))
                    alphabet.append((i, -e))
            else:
                for e in range(1, m):
                    alphabet.append((i, e))
    alphabet.sort(key=lambda l: letter_key(spec, l))
    return alphabet


def _extends(spec: GroupSpec, g: Word, letter: Syllable) -> bool:
    """True if appending ``letter`` yields a word one letter longer."""
    if not g:
        return True
    i, e = letter
    j, f = g[-1]
    if isinstance(spec, FreeGroup):
        return i != j or (e > 0) == (f > 0)
    return i != j


def append_letter(spec: GroupSpec, g: Word, letter: Syllable) -> Word:
    i, e = letter
    if g and g[-1][0] == i and isinstance(spec, FreeGroup):
        return g[:-1] + ((i, g[-1][1] + e),)
    return g + (letter,)


def enumerate_ball(
    spec: GroupSpec,
    radius: int,
    cap: int = DEFAULT_BALL_CAP,
    exponent_cap: Optional[int] = None,
) -> Ball:
    """Every element of word length <= radius, each exactly once.

    Deterministic order: by length, then lexicographically.  Raises
    :class:`ResourceCapError` when the ball would exceed ``cap`` elements
    (in particular for any free product with an infinite cyclic factor,
    whose balls of radius >= 1 are infinite unless ``exponent_cap`` is
    given, a truncation used internally by the certificate machinery).
    """
    _require_word_family(spec)
    if radius < 0:
        raise MalformedInputError(f"radius must be >= 0, got {radius}")
    if isinstance(spec, FreeGroup) and free_ball_size(spec.rank, radius) > cap:
        raise ResourceCapError(
            f"ball of radius {radius} in F_{spec.rank} has "
            f"{free_ball_size(spec.rank, radius)} elements",
            cap,
        )
    alphabet = _letter_alphabet(spec, exponent_cap) if radius > 0 else []
    elements: list = [IDENTITY]
    sphere: list = [IDENTITY]
    for _ in range(radius):
        nxt = []
        for g in sphere:
            for letter in alphabet:
                if _extends(spec, g, letter):
                    nxt.append(append_letter(spec, g, letter))
                    if len(elements) + len(nxt) > cap:
                        raise ResourceCapError(
                            f"ball of radius {radius} exceeds the element cap", cap
                        )
        elements.extend(nxt)
        sphere = nxt
    return Ball(spec, radius, elements)


def left_translation_table(spec: GroupSpec, w: Word, ball: Ball) -> list:
    """[w * x for x in ball.elements], computed incrementally.

    Amortizes the left multiplication over the ball's prefix tree: each
    entry extends its parent's entry by one letter.
    """
    table: list = []
    for x in ball.elements:
        if not x:
            table.append(w)
            continue
        parent, letter = parent_letter(spec, x)
        base = table[ball.index[parent]]
        out = list(base)
        _push(spec, out, *letter)
        table.append(tuple(out))
    return table


# ---------------------------------------------------------------------------
# icc verdicts


@dataclass(frozen=True)
class IccVerdict:
    verdict: str  # "icc" | "not_icc" | "unknown"
    reason: str
    citation: str


def is_icc(spec: GroupSpec) -> IccVerdict:
    """Infinite-conjugacy-class verdict for the built-in families.

    Free products are decided by the classical dichotomy: a free product
    of two nontrivial groups is icc unless it is the infinite dihedral
    group Z/2 * Z/2.  Coxeter specs are deferred to the Tits-form module
    and reported unknown here.
    """
    from . import citations

    if isinstance(spec, FreeGroup):
        if spec.rank >= 2:
            return IccVerdict(
                "icc",
                f"F_{spec.rank} is a non-abelian free group",
                citations.POWERS,
            )
        return IccVerdict("not_icc", "F_1 = Z is abelian", citations.PLUMBING)
    if isinstance(spec, FreeProduct):
        if spec.orders == (2, 2):
            return IccVerdict(
                "not_icc",
                "Z/2 * Z/2 is the infinite dihedral group (virtually abelian)",
                citations.PASCHKE_SALINAS,
            )
        return IccVerdict(
            "icc",
            "free product of nontrivial groups, not infinite dihedral",
            citations.PASCHKE_SALINAS,
        )
    return IccVerdict(
        "unknown",
        "deferred to the Tits form classification for Coxeter systems",
        citations.PLUMBING,
    )


# ---------------------------------------------------------------------------
# word <-> string


def format_word(g: Word) -> str:
    """Render a word like ``a*b^-1``; the identity renders as ``e``."""
    if not g:
        return "e"
    parts = []
    for i, e in g:
        if i >= 26:
            raise MalformedInputError("string format supports generator indices < 26")
        name = chr(ord("a") + i)
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


def parse_word(spec: GroupSpec, text: str) -> Word:
    """Inverse of :func:`format_word`; accepts any product of syllables."""
    _require_word_family(spec)
    text = text.strip()
    if text in ("", "e", "1"):
        return IDENTITY
    raw = []
    for part in text.split("*"):
        part = part.strip()
        if not part:
            raise MalformedInputError(f"empty syllable in word string {text!r}")
        name, _, exp_text = part.partition("^")
        name = name.strip()
        if len(name) != 1 or not ("a" <= name <= "z"):
            raise MalformedInputError(f"bad generator name {name!r} in {text!r}")
        index = ord(name) - ord("a")
        _check_index(spec, index)
        if exp_text:
            try:
                exp = int(exp_text)
            except ValueError:
                raise MalformedInputError(f"bad exponent {exp_text!r} in {text!r}") from None
        else:
            exp = 1
        raw.append((index, exp))
    return reduce_word(spec, raw)


def random_word(spec: GroupSpec, rng, max_length: int) -> Word:
    """Uniformly slopped random reduced word for property sweeps (plumbing)."""
    _require_word_family(spec)
    length = rng.randrange(max_length + 1)
    cap = 3 if _has_infinite_factor(spec) else None
    alphabet = _letter_alphabet(spec, cap)
    g: Word = IDENTITY
    for _ in range(length):
        choices = [l for l in alphabet if _extends(spec, g, l)]
        if not choices:
            break
        g = append_letter(spec, g, rng.choice(choices))
    return g


def _has_infinite_factor(spec: GroupSpec) -> bool:
    return isinstance(spec, FreeProduct) and INFINITE in spec.orders
