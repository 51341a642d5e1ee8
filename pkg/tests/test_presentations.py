import pytest

from ribbonknots.intlinalg import AbelianGroupInvariants
from ribbonknots.presentations import (
    LOG,
    NotWirtinger,
    Presentation,
    abelianization,
    apply_tietze_script,
    deficiency,
    defining_relator_matches,
    dot_export,
    eliminate_generator,
    expand_length1,
    format_presentation,
    introduce_generator,
    is_wirtinger,
    parse_presentation,
    parse_tietze_script,
    weight_vector,
)
from ribbonknots.words import gen, parse_word

TREFOIL = parse_presentation(
    """
gens a b c
rel a = b c b^-1
rel b = c a c^-1
"""
)


def test_validation():
    with pytest.raises(ValueError):
        Presentation(("x", "x"), ())
    with pytest.raises(ValueError):
        Presentation(("x",), (gen("y"),))


def test_deficiency_and_abelianization():
    assert deficiency(TREFOIL) == 1
    assert abelianization(TREFOIL) == AbelianGroupInvariants(1)
    klein = parse_presentation("gens a b\nrel a b a b^-1")
    assert abelianization(klein) == AbelianGroupInvariants(1, (2,))


def test_weight_vector():
    assert weight_vector(TREFOIL) == (1, 1, 1)
    p = parse_presentation("gens t u\nrel u^-1 t u t u^-1 t^-1")
    assert weight_vector(p) == (1, 1)
    yoshikawa = parse_presentation(
        "gens b t\nrel b^-3 t^-1 b^4 t b^-3 t^-1 b^4 t b^-3"
    )
    assert weight_vector(yoshikawa) == (0, 1)
    with pytest.raises(ValueError):
        weight_vector(parse_presentation("gens a b\nrel a b a b^-1"))


def test_wirtinger_recognition():
    log = is_wirtinger(TREFOIL)
    assert isinstance(log, LOG)
    assert log.is_tree
    assert len(log.edges) == 2
    bad = parse_presentation("gens x y\nrel x y")
    assert isinstance(is_wirtinger(bad), NotWirtinger)
    p1 = parse_presentation("gens a b\nrel a^2 b^-2")
    assert isinstance(is_wirtinger(p1), NotWirtinger)


def test_wirtinger_deterministic_edge_choice():
    p = parse_presentation("gens a b\nrel a b a^-1 b^-1")
    log1 = is_wirtinger(p)
    log2 = is_wirtinger(parse_presentation("gens a b\nrel b^-1 a b a^-1"))
    assert isinstance(log1, LOG) and isinstance(log2, LOG)
    assert log1.edges == log2.edges


def test_expand_length1():
    q = expand_length1(TREFOIL)
    log = is_wirtinger(q)
    assert isinstance(log, LOG)
    assert log.is_tree
    assert all(len(e.label) <= 1 for e in log.edges)
    assert abelianization(q) == abelianization(TREFOIL)


def test_expand_handles_negative_single_letter_labels():
    # a = c^-1 b c: the label may surface as a single negative letter.
    p = parse_presentation("gens a b c\nrel a c^-1 b^-1 c\nrel b c a^-1 c^-1")
    log = is_wirtinger(p)
    assert isinstance(log, LOG)
    q = expand_length1(p)
    qlog = is_wirtinger(q)
    assert isinstance(qlog, LOG)
    assert all(len(e.label) <= 1 for e in qlog.edges)
    assert all(
        e.label.is_identity() or e.label.syllables[0][1] == 1 for e in qlog.edges
    )
    assert abelianization(q) == abelianization(p)


def test_tietze_roundtrip_preserves_invariants():
    p = TREFOIL
    q = introduce_generator(p, "d", parse_word("a b"))
    assert abelianization(q) == abelianization(p)
    assert deficiency(q) == deficiency(p)
    back = eliminate_generator(q, "d", parse_word("a b"), len(q.relators) - 1)
    assert back == p


def test_eliminate_trusted_semantics():
    p = parse_presentation("gens x y\nrel y x^-2\nrel y^3")
    q = eliminate_generator(p, "y", parse_word("x^2"), 0)
    assert q.generators == ("x",)
    assert q.relators == (gen("x", 6),)
    with pytest.raises(ValueError):
        eliminate_generator(p, "y", parse_word("y"), 0)
    with pytest.raises(ValueError):
        eliminate_generator(p, "z", parse_word("x"), 0)


def test_tietze_preserves_coset_enumeration():
    from ribbonknots.cosets import todd_coxeter

    p = introduce_generator(TREFOIL, "d", parse_word("a b"))
    for q in (TREFOIL, p, eliminate_generator(p, "d", parse_word("a b"), 2)):
        killed = Presentation(q.generators, q.relators + (parse_word("a"),))
        t = todd_coxeter(killed, (), 100)
        assert t.closed and t.n_cosets == 1


def test_defining_relator_matches():
    p = parse_presentation("gens x y\nrel y x^-2")
    assert defining_relator_matches(p, "y", parse_word("x^2"), 0)
    assert not defining_relator_matches(p, "y", parse_word("x"), 0)


def test_parse_format_roundtrip():
    text = format_presentation(TREFOIL)
    assert parse_presentation(text) == TREFOIL
    with pytest.raises(ValueError):
        parse_presentation("rel x")
    with pytest.raises(ValueError):
        parse_presentation("gens x\nbogus y")


def test_dot_export():
    log = is_wirtinger(TREFOIL)
    dot = dot_export(log)
    assert dot.startswith("digraph {")
    assert "->" in dot


def test_tietze_script_parsing():
    steps = parse_tietze_script("intro d a b\nelim d a b 2\n# comment\n")
    assert steps[0].kind == "intro" and steps[1].relator_index == 2
    p = apply_tietze_script(TREFOIL, steps[:1])
    assert "d" in p.generators
    with pytest.raises(ValueError):
        parse_tietze_script("elim d a\n")
