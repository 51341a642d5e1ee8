"""Free-group words, free reduction, and free-group endomorphisms.

Generators are plain name strings (letters/digits/underscore, starting
with a letter).  A :class:`Word` is a freely reduced run-length sequence
of ``(generator, exponent)`` syllables; the empty sequence is the
identity.  All values are immutable and all operations are pure.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

GENERATOR_NAME = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


def check_generator_name(name: str) -> str:
    if not isinstance(name, str) or not GENERATOR_NAME.match(name):
        raise ValueError(f"invalid generator name {name!r}")
    return name


@dataclass(frozen=True)
class Word:
    """A freely reduced word in named free-group generators."""

    syllables: tuple[tuple[str, int], ...] = ()

    def __post_init__(self) -> None:
        prev = None
        for gen, exp in self.syllables:
            check_generator_name(gen)
            if exp == 0:
                raise ValueError("zero exponent in reduced word")
            if gen == prev:
                raise ValueError("adjacent syllables share a generator")
            prev = gen

    def is_identity(self) -> bool:
        return not self.syllables

    def __len__(self) -> int:
        """Letter length (sum of |exponents|)."""
        return sum(abs(e) for _, e in self.syllables)

    def __mul__(self, other: "Word") -> "Word":
        return product(self, other)

    def __invert__(self) -> "Word":
        return inverse(self)

    def __pow__(self, n: int) -> "Word":
        return power(self, n)

    def letters(self) -> Iterator[tuple[str, int]]:
        """Yield single-letter syllables ``(gen, +1 or -1)``."""
        for gen, exp in self.syllables:
            sign = 1 if exp > 0 else -1
            for _ in range(abs(exp)):
                yield gen, sign

    def generators(self) -> set[str]:
        return {gen for gen, _ in self.syllables}

    def __str__(self) -> str:
        return " ".join(
            gen if exp == 1 else f"{gen}^{exp}" for gen, exp in self.syllables
        )


IDENTITY = Word()


def normalize(raw: Iterable[tuple[str, int]]) -> Word:
    """Freely reduce a raw syllable sequence.

    Zero exponents are dropped; adjacent syllables with equal generators
    merge (and vanish when their exponents cancel).  Idempotent.
    """
    stack: list[tuple[str, int]] = []
    for gen, exp in raw:
        if exp == 0:
            continue
        if stack and stack[-1][0] == gen:
            merged = stack[-1][1] + exp
            stack.pop()
            if merged != 0:
                stack.append((gen, merged))
        else:
            stack.append((gen, exp))
    return Word(tuple(stack))


def word(*syllables: tuple[str, int]) -> Word:
    """Convenience constructor: ``word(("x", 2), ("y", -1))``."""
    return normalize(syllables)


def gen(name: str, exp: int = 1) -> Word:
    return normalize([(name, exp)])


def product(*words: Word) -> Word:
    out: list[tuple[str, int]] = []
    for w in words:
        out.extend(w.syllables)
    return normalize(out)


def inverse(a: Word) -> Word:
    return Word(tuple((gen, -exp) for gen, exp in reversed(a.syllables)))


def power(a: Word, n: int) -> Word:
    if n < 0:
        return power(inverse(a), -n)
    out = IDENTITY
    for _ in range(n):
        out = product(out, a)
    return out


def conjugate(a: Word, by: Word) -> Word:
    """``by . a . by^-1``, freely reduced."""
    return product(by, a, inverse(by))


def cyclic_reduce(a: Word) -> tuple[Word, Word]:
    """Split ``a = conjugator . core . conjugator^-1`` with a cyclically
    reduced core (first and last syllables do not cancel)."""
    core = a
    prefix: list[tuple[str, int]] = []
    while len(core.syllables) >= 2 and core.syllables[0][0] == core.syllables[-1][0]:
        (g, e0), (_, e1) = core.syllables[0], core.syllables[-1]
        if e0 + e1 == 0:
            prefix.append((g, e0))
            core = normalize(core.syllables[1:-1])
        else:
            # Merge the wrap-around syllable into the front, peeling the tail.
            prefix.append((g, -e1))
            core = normalize([(g, e0 + e1)] + list(core.syllables[1:-1]))
    return core, normalize(prefix)


def exponent_sums(w: Word, over: Sequence[str]) -> tuple[int, ...]:
    """Abelianized exponent vector of ``w`` over the listed generators."""
    index = {g: i for i, g in enumerate(over)}
    out = [0] * len(over)
    for g, e in w.syllables:
        if g not in index:
            raise ValueError(f"generator {g!r} not among {list(over)}")
        out[index[g]] += e
    return tuple(out)


@dataclass(frozen=True)
class FreeEndo:
    """Endomorphism of a free group, given by generator images."""

    domain: tuple[str, ...]
    images: tuple[Word, ...]

    def __post_init__(self) -> None:
        if len(self.domain) != len(self.images):
            raise ValueError("one image per domain generator required")
        if len(set(self.domain)) != len(self.domain):
            raise ValueError("duplicate domain generator")
        for g in self.domain:
            check_generator_name(g)

    @property
    def rank(self) -> int:
        return len(self.domain)

    def image_of(self, name: str) -> Word:
        try:
            return self.images[self.domain.index(name)]
        except ValueError:
            raise ValueError(f"generator {name!r} not in endomorphism domain")

    def abelianization_matrix(self) -> tuple[tuple[int, ...], ...]:
        """Row i = exponent sums of the image of the i-th generator."""
        return tuple(exponent_sums(img, self.domain) for img in self.images)


def identity_endo(domain: Sequence[str]) -> FreeEndo:
    return FreeEndo(tuple(domain), tuple(gen(g) for g in domain))


def apply_endo(f: FreeEndo, w: Word) -> Word:
    """Substitute generator images and freely reduce."""
    out: list[tuple[str, int]] = []
    for g, e in w.syllables:
        img = f.image_of(g)
        if e < 0:
            img = inverse(img)
        for _ in range(abs(e)):
            out.extend(img.syllables)
    return normalize(out)


def compose_endo(f: FreeEndo, g: FreeEndo) -> FreeEndo:
    """The endomorphism ``x -> f(g(x))`` on a common domain."""
    if f.domain != g.domain:
        raise ValueError("endomorphism domains differ")
    return FreeEndo(f.domain, tuple(apply_endo(f, img) for img in g.images))


def parse_word(text: str) -> Word:
    """Parse whitespace-separated ``name`` / ``name^k`` tokens.

    The empty token list is the identity.
    """
    raw: list[tuple[str, int]] = []
    for token in text.split():
        if "^" in token:
            name, _, exp_text = token.partition("^")
            try:
                exp = int(exp_text)
            except ValueError:
                raise ValueError(f"bad exponent in token {token!r}")
        else:
            name, exp = token, 1
        check_generator_name(name)
        if exp == 0:
            raise ValueError(f"zero exponent in token {token!r}")
        raw.append((name, exp))
    return normalize(raw)
