import random

import pytest

from ribbonknots.words import (
    FreeEndo,
    IDENTITY,
    Word,
    apply_endo,
    compose_endo,
    conjugate,
    cyclic_reduce,
    exponent_sums,
    gen,
    identity_endo,
    inverse,
    normalize,
    parse_word,
    power,
    product,
    word,
)


def random_word(rng, gens, max_len):
    return normalize(
        (rng.choice(gens), rng.choice([-2, -1, 1, 2]))
        for _ in range(rng.randrange(max_len + 1))
    )


def test_normalize_reduces():
    assert word(("x", 2), ("x", -2)) == IDENTITY
    assert word(("x", 1), ("x", 1)) == Word((("x", 2),))
    assert word(("x", 1), ("y", 0), ("x", -1)) == IDENTITY


def test_invalid_words_rejected():
    with pytest.raises(ValueError):
        Word((("x", 0),))
    with pytest.raises(ValueError):
        Word((("x", 1), ("x", 1)))
    with pytest.raises(ValueError):
        Word((("1bad", 1),))


def test_group_axioms_randomized():
    rng = random.Random(7)
    gens = ["a", "b", "c"]
    for _ in range(200):
        u, v, w = (random_word(rng, gens, 8) for _ in range(3))
        assert product(product(u, v), w) == product(u, product(v, w))
        assert product(u, inverse(u)) == IDENTITY
        assert inverse(inverse(u)) == u
        assert inverse(product(u, v)) == product(inverse(v), inverse(u))


def test_power_and_len():
    x = gen("x")
    assert power(x, 5) == gen("x", 5)
    assert power(product(x, gen("y")), -1) == parse_word("y^-1 x^-1")
    assert len(parse_word("x^3 y^-2")) == 5


def test_cyclic_reduce_roundtrip():
    rng = random.Random(11)
    for _ in range(300):
        w = random_word(rng, ["x", "y"], 10)
        core, conj = cyclic_reduce(w)
        assert conjugate(core, conj) == w
        syl = core.syllables
        if len(syl) >= 2:
            assert syl[0][0] != syl[-1][0] or syl[0][1] + syl[-1][1] != 0
    core, conj = cyclic_reduce(parse_word("x y x^-2"))
    assert core.syllables[0][0] != core.syllables[-1][0]


def test_parse_and_str_roundtrip():
    for text in ("", "x", "x^-3 y x", "a_1^2 B"):
        w = parse_word(text)
        assert parse_word(str(w)) == w
    with pytest.raises(ValueError):
        parse_word("x^0")
    with pytest.raises(ValueError):
        parse_word("x^a")


def test_exponent_sums():
    assert exponent_sums(parse_word("x y x^-3"), ["x", "y"]) == (-2, 1)
    with pytest.raises(ValueError):
        exponent_sums(gen("z"), ["x"])


def test_endo_apply_and_compose():
    f = FreeEndo(("x", "y"), (parse_word("x y"), gen("y")))
    g = FreeEndo(("x", "y"), (gen("y"), gen("x")))
    assert apply_endo(f, parse_word("x^-1")) == parse_word("y^-1 x^-1")
    fg = compose_endo(f, g)  # x -> f(g(x))
    assert fg.images == (gen("y"), parse_word("x y"))
    assert compose_endo(f, identity_endo(("x", "y"))).images == f.images


def test_abelianization_matrix_contravariance():
    rng = random.Random(3)
    dom = ("x", "y")
    for _ in range(50):
        f = FreeEndo(dom, (random_word(rng, list(dom), 5), random_word(rng, list(dom), 5)))
        g = FreeEndo(dom, (random_word(rng, list(dom), 5), random_word(rng, list(dom), 5)))
        af, ag = f.abelianization_matrix(), g.abelianization_matrix()
        comp = compose_endo(f, g).abelianization_matrix()
        expected = tuple(
            tuple(sum(ag[i][k] * af[k][j] for k in range(2)) for j in range(2))
            for i in range(2)
        )
        assert comp == expected
