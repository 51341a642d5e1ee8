"""Finite group presentations, Tietze moves, and Wirtinger/LOT structure.

A relator ``w`` means ``w = 1``; equations ``u = v`` are stored as
``u v^-1``.  Relators are kept freely reduced; consumers that need
cyclic reduction (Wirtinger recognition, AC moves) apply it themselves,
since it never changes the group.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

from .intlinalg import (
    AbelianGroupInvariants,
    cokernel_invariants,
    diagonal_of,
    int_matrix,
    smith_normal_form,
)
from .words import (
    Word,
    check_generator_name,
    cyclic_reduce,
    exponent_sums,
    gen,
    inverse,
    normalize,
    parse_word,
    product,
)


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    def __post_init__(self) -> None:
        seen = set()
        for g in self.generators:
            check_generator_name(g)
            if g in seen:
                raise ValueError(f"duplicate generator {g!r}")
            seen.add(g)
        for r in self.relators:
            unknown = r.generators() - seen
            if unknown:
                raise ValueError(f"relator uses unknown generators {sorted(unknown)}")


def presentation(generators: Sequence[str], relators: Sequence[Word]) -> Presentation:
    return Presentation(tuple(generators), tuple(relators))


@dataclass(frozen=True)
class LOGEdge:
    origin: str
    terminus: str
    label: Word


@dataclass(frozen=True)
class LOG:
    """Labeled oriented graph extracted from a Wirtinger presentation."""

    vertices: tuple[str, ...]
    edges: tuple[LOGEdge, ...]
    is_tree: bool


@dataclass(frozen=True)
class NotWirtinger:
    """Rejection value for :func:`is_wirtinger`."""

    reason: str


def deficiency(p: Presentation) -> int:
    return len(p.generators) - len(p.relators)


def exponent_matrix(p: Presentation):
    """Relator exponent sums: rows = relators, columns = generators."""
    return int_matrix(
        [exponent_sums(r, p.generators) for r in p.relators],
        cols=len(p.generators),
    )


def abelianization(p: Presentation) -> AbelianGroupInvariants:
    return cokernel_invariants(exponent_matrix(p))


def weight_vector(p: Presentation) -> tuple[int, ...]:
    """Images of the generators under the projection to the infinite
    cyclic quotient; requires abelianization = Z.

    Sign-normalized so the first generator with nonzero weight maps
    to +1.
    """
    inv = abelianization(p)
    if inv != AbelianGroupInvariants(1):
        raise ValueError(f"abelianization is {inv}, not Z")
    e = exponent_matrix(p)
    _, s, v = smith_normal_form(e)
    diag = diagonal_of(s)
    # The free coordinate of Z^gens / rowspan, in the V-changed basis.
    free = [j for j in range(e.cols) if j >= len(diag) or diag[j] == 0]
    assert len(free) == 1
    k = free[0]
    weights = [v.entries[j][k] for j in range(e.cols)]
    lead = next(w for w in weights if w != 0)
    if lead < 0:
        weights = [-w for w in weights]
    return tuple(weights)


def _cyclic_letters(r: Word) -> list[tuple[str, int]]:
    core, _ = cyclic_reduce(r)
    return list(core.letters())


def _match_wirtinger(letters: list[tuple[str, int]]) -> Optional[tuple[str, str, Word]]:
    """Find the pattern g_j . w . g_i^-1 . w^-1 in a cyclic word.

    Returns the lexicographically least (origin, terminus, label-text)
    match over all rotations and both orientations, or None.
    """
    n = len(letters)
    if n < 2 or n % 2 != 0:
        return None
    half = (n - 2) // 2
    best = None
    for oriented in (letters, [(g, -s) for g, s in reversed(letters)]):
        for shift in range(n):
            rot = oriented[shift:] + oriented[:shift]
            if rot[0][1] != 1 or rot[half + 1][1] != -1:
                continue
            w = rot[1 : half + 1]
            w_inv = [(g, -s) for g, s in reversed(w)]
            if rot[half + 2 :] != w_inv:
                continue
            terminus, origin = rot[0][0], rot[half + 1][0]
            label = normalize(w)
            key = (origin, terminus, str(label))
            if best is None or key < best:
                best = key
    if best is None:
        return None
    origin, terminus, label_text = best
    return origin, terminus, parse_word(label_text)


def is_wirtinger(p: Presentation) -> Union[LOG, NotWirtinger]:
    """Recognize a Wirtinger presentation and extract its LOG.

    Succeeds iff every relator, up to cyclic rotation and inversion, has
    the form ``g_j w g_i^-1 w^-1`` with g_i, g_j generators.
    """
    edges = []
    for idx, r in enumerate(p.relators):
        letters = _cyclic_letters(r)
        match = _match_wirtinger(letters)
        if match is None:
            return NotWirtinger(f"relator {idx} ({r}) is not a conjugation relation")
        origin, terminus, label = match
        edges.append(LOGEdge(origin, terminus, label))
    is_tree = deficiency(p) == 1 and _spans_tree(p.generators, edges)
    return LOG(tuple(p.generators), tuple(edges), is_tree)


def _spans_tree(vertices: Sequence[str], edges: Sequence[LOGEdge]) -> bool:
    if len(edges) != len(vertices) - 1:
        return False
    parent = {v: v for v in vertices}

    def find(x: str) -> str:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in edges:
        a, b = find(e.origin), find(e.terminus)
        if a == b:
            return False  # undirected cycle
        parent[a] = b
    return True


def expand_length1(p: Presentation) -> Presentation:
    """Tietze-expand a Wirtinger presentation until every edge label is a
    single generator with exponent +1.

    Fresh generators are named ``v1, v2, ...``; negative single-letter
    labels are handled by reversing the edge instead of expanding.
    """
    log = is_wirtinger(p)
    if isinstance(log, NotWirtinger):
        raise ValueError(f"not a Wirtinger presentation: {log.reason}")
    generators = list(p.generators)
    fresh = _fresh_names("v", generators)
    queue = [(e.origin, e.terminus, list(e.label.letters())) for e in log.edges]
    done: list[tuple[str, str, Word]] = []
    while queue:
        origin, terminus, letters = queue.pop(0)
        if len(letters) <= 1:
            if letters and letters[0][1] == -1:
                # terminus = a^-1 origin a  becomes  origin = a terminus a^-1.
                g = letters[0][0]
                done.append((terminus, origin, gen(g)))
            else:
                done.append((origin, terminus, normalize(letters)))
            continue
        head, rest = letters[0], letters[1:]
        v = next(fresh)
        generators.append(v)
        queue.append((origin, v, rest))
        queue.append((v, terminus, [head]))
    relators = tuple(
        product(gen(terminus), label, gen(origin, -1), inverse(label))
        for origin, terminus, label in done
    )
    return Presentation(tuple(generators), relators)


def _fresh_names(prefix: str, taken: Iterable[str]):
    used = set(taken)
    i = 1
    while True:
        name = f"{prefix}{i}"
        if name in used:
            raise ValueError(f"fresh-name collision on {name!r}")
        used.add(name)
        yield name
        i += 1


def introduce_generator(p: Presentation, name: str, defining: Word) -> Presentation:
    """Tietze introduction: new generator ``name`` with relator
    ``name . defining^-1``."""
    check_generator_name(name)
    if name in p.generators:
        raise ValueError(f"generator {name!r} already present")
    unknown = defining.generators() - set(p.generators)
    if unknown:
        raise ValueError(f"defining word uses unknown generators {sorted(unknown)}")
    relator = product(gen(name), inverse(defining))
    return Presentation(p.generators + (name,), p.relators + (relator,))


def substitute(w: Word, target: str, replacement: Word) -> Word:
    out: list[tuple[str, int]] = []
    for g, e in w.syllables:
        if g == target:
            img = replacement if e > 0 else inverse(replacement)
            for _ in range(abs(e)):
                out.extend(img.syllables)
        else:
            out.append((g, e))
    return normalize(out)


def eliminate_generator(
    p: Presentation, target: str, replacement: Word, relator_index: int
) -> Presentation:
    """Tietze elimination: substitute ``replacement`` for ``target`` in
    every relator and drop the designated defining relator.

    The designated relator is taken on trust as asserting
    ``target = replacement`` (derivability is undecidable in general);
    the substitution then yields a presentation of the same group.
    """
    if target not in p.generators:
        raise ValueError(f"no generator {target!r}")
    if target in replacement.generators():
        raise ValueError("replacement word mentions the eliminated generator")
    if not 0 <= relator_index < len(p.relators):
        raise ValueError(f"relator index {relator_index} out of range")
    unknown = replacement.generators() - set(p.generators)
    if unknown:
        raise ValueError(f"replacement uses unknown generators {sorted(unknown)}")
    generators = tuple(g for g in p.generators if g != target)
    relators = tuple(
        substitute(r, target, replacement)
        for i, r in enumerate(p.relators)
        if i != relator_index
    )
    return Presentation(generators, relators)


def defining_relator_matches(p: Presentation, target: str, replacement: Word, relator_index: int) -> bool:
    """Whether the designated relator is freely equal, up to cyclic
    rotation and inversion, to ``target . replacement^-1``."""
    wanted, _ = cyclic_reduce(product(gen(target), inverse(replacement)))
    got, _ = cyclic_reduce(p.relators[relator_index])
    for candidate in (got, inverse(got)):
        letters = list(candidate.letters())
        if len(letters) != len(list(wanted.letters())):
            continue
        for shift in range(max(1, len(letters))):
            rotated = normalize(letters[shift:] + letters[:shift])
            if rotated == wanted:
                return True
    return False


def dot_export(g: LOG) -> str:
    """Render the LOG as a DOT digraph; edge labels are word text."""
    lines = ["digraph {"]
    for v in g.vertices:
        lines.append(f"  {v};")
    for e in g.edges:
        lines.append(f'  {e.origin} -> {e.terminus} [label="{e.label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def parse_presentation(text: str) -> Presentation:
    """Parse the presentation file format.

    Comment lines start with ``#``; one ``gens`` line lists generator
    names; each ``rel`` line is a word, or ``<word> = <word>`` stored as
    ``u v^-1``.
    """
    generators: Optional[tuple[str, ...]] = None
    relators: list[Word] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        if head == "gens":
            if generators is not None:
                raise ValueError("multiple gens lines")
            generators = tuple(rest.split())
        elif head == "rel":
            if "=" in rest:
                left, _, right = rest.partition("=")
                relators.append(product(parse_word(left), inverse(parse_word(right))))
            else:
                relators.append(parse_word(rest))
        else:
            raise ValueError(f"unrecognized line {line!r}")
    if generators is None:
        raise ValueError("missing gens line")
    return Presentation(generators, tuple(relators))


def format_presentation(p: Presentation) -> str:
    lines = ["gens " + " ".join(p.generators)]
    lines.extend(f"rel {r}".rstrip() for r in p.relators)
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class TietzeStep:
    kind: str  # "intro" | "elim"
    name: str
    word: Word
    relator_index: int = -1


def parse_tietze_script(text: str) -> tuple[TietzeStep, ...]:
    """Parse Tietze script lines: ``intro <name> <word>`` and
    ``elim <name> <word> <relator-index>``."""
    steps = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == "intro":
            if len(tokens) < 2:
                raise ValueError(f"bad intro line {line!r}")
            steps.append(TietzeStep("intro", tokens[1], parse_word(" ".join(tokens[2:]))))
        elif tokens[0] == "elim":
            if len(tokens) < 4:
                raise ValueError(f"bad elim line {line!r}")
            try:
                index = int(tokens[-1])
            except ValueError:
                raise ValueError(f"bad relator index in {line!r}")
            steps.append(
                TietzeStep("elim", tokens[1], parse_word(" ".join(tokens[2:-1])), index)
            )
        else:
            raise ValueError(f"unrecognized script line {line!r}")
    return tuple(steps)


def apply_tietze_script(p: Presentation, steps: Sequence[TietzeStep]) -> Presentation:
    for step in steps:
        if step.kind == "intro":
            p = introduce_generator(p, step.name, step.word)
        else:
            p = eliminate_generator(p, step.name, step.word, step.relator_index)
    return p
