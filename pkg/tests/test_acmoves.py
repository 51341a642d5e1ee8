import random

import pytest

from ribbonknots.acmoves import (
    ACPresentation,
    AddPair,
    Budget,
    Conjugate,
    Exhausted,
    Found,
    Invert,
    Multiply,
    RemovePair,
    ac_trivialize_search,
    apply_move,
    apply_moves,
    canonical_form,
    format_moves,
    kill_meridian,
    parse_moves,
    removal_plan,
    verify_move_sequence,
)
from ribbonknots.intlinalg import cokernel_invariants, int_matrix
from ribbonknots.presentations import parse_presentation
from ribbonknots.words import exponent_sums, gen, normalize, parse_word

SPUN = parse_presentation("gens t u\nrel u^-1 t u t u^-1 t^-1")


def ab_invariants(p: ACPresentation):
    rows = [exponent_sums(r, p.generators) for r in p.relators]
    return cokernel_invariants(int_matrix(rows, cols=len(p.generators)))


def test_balanced_invariant():
    with pytest.raises(ValueError):
        ACPresentation(("x",), ())
    with pytest.raises(ValueError):
        ACPresentation(("x",), (gen("y"),))


def test_kill_meridian():
    killed = kill_meridian(SPUN, "t")
    assert killed.relators[-1] == gen("t")
    with pytest.raises(ValueError):
        kill_meridian(parse_presentation("gens x"), "y")
    with pytest.raises(ValueError):
        kill_meridian(parse_presentation("gens x\nrel x"), "x")


def test_apply_move_examples():
    p = ACPresentation(("x", "y"), (parse_word("x y"), gen("y")))
    assert apply_move(p, Invert(0)).relators[0] == parse_word("y^-1 x^-1")
    assert apply_move(p, Multiply(0, 1)).relators[0] == parse_word("x y^2")
    q = apply_move(p, Conjugate(1, "x", 1))
    assert q.relators[1] == parse_word("x y x^-1")
    q = apply_move(ACPresentation(("x",), (gen("x"),)), AddPair("y", gen("x", 2)))
    assert q.generators == ("x", "y") and q.relators[1] == parse_word("y x^2")


def test_move_validation():
    p = ACPresentation(("x",), (gen("x"),))
    with pytest.raises(ValueError):
        apply_move(p, Invert(3))
    with pytest.raises(ValueError):
        apply_move(p, Multiply(0, 0))
    with pytest.raises(ValueError):
        apply_move(p, AddPair("x", gen("x")))
    with pytest.raises(ValueError):
        apply_move(p, Conjugate(0, "z", 1))


def test_remove_pair_strict_pattern():
    p = ACPresentation(("x", "y"), (parse_word("x y"), gen("y")))
    # x occurs once, relator starts with x: removable
    q = apply_move(p, RemovePair("x"))
    assert q.generators == ("y",)
    # y occurs in both relators: not removable
    with pytest.raises(ValueError):
        apply_move(p, RemovePair("y"))
    # pattern must start with the generator, exponent +1
    r = ACPresentation(("x", "y"), (parse_word("y x"), gen("y")))
    with pytest.raises(ValueError):
        apply_move(r, RemovePair("x"))


def test_moves_preserve_abelianization():
    rng = random.Random(51)
    gens = ("a", "b", "c")
    for _ in range(100):
        rels = tuple(
            normalize((rng.choice(gens), rng.choice([-1, 1])) for _ in range(rng.randrange(6)))
            for _ in range(3)
        )
        p = ACPresentation(gens, rels)
        before = ab_invariants(p)
        n = len(p.relators)
        moves = [Invert(rng.randrange(n)),
                 Conjugate(rng.randrange(n), rng.choice(gens), rng.choice([-1, 1]))]
        i, j = rng.sample(range(n), 2)
        moves.append(Multiply(i, j))
        q = apply_moves(p, moves)
        assert ab_invariants(q) == before


def test_moves_preserve_coset_enumeration():
    from ribbonknots.cosets import todd_coxeter
    from ribbonknots.presentations import Presentation

    p = ACPresentation(("a", "b"), (gen("a", 2), parse_word("a b^-1")))

    def index(q):
        t = todd_coxeter(Presentation(q.generators, q.relators), (), 100)
        assert t.closed
        return t.n_cosets

    before = index(p)
    rng = random.Random(52)
    q = p
    for _ in range(20):
        kind = rng.randrange(3)
        if kind == 0:
            q = apply_move(q, Invert(rng.randrange(2)))
        elif kind == 1:
            q = apply_move(q, Conjugate(rng.randrange(2), rng.choice(("a", "b")), rng.choice([-1, 1])))
        else:
            i, j = rng.sample(range(2), 2)
            q = apply_move(q, Multiply(i, j))
        assert index(q) == before


def test_canonical_form_invariances():
    p = ACPresentation(("x", "y"), (parse_word("x y"), gen("y")))
    assert canonical_form(p) == canonical_form(apply_move(p, Invert(0)))
    assert canonical_form(p) == canonical_form(apply_move(p, Conjugate(0, "y", 1)))
    a = ACPresentation(("x",), (gen("x"),))
    b = ACPresentation(("z",), (gen("z", -1),))
    assert canonical_form(a) == canonical_form(b)
    rot1 = ACPresentation(("x", "y"), (parse_word("x y"), gen("x")))
    rot2 = ACPresentation(("x", "y"), (parse_word("y x"), gen("x")))
    assert canonical_form(rot1) == canonical_form(rot2)


def test_removal_plan_trivial_cases():
    p = ACPresentation(("x",), (gen("x"),))
    plan = removal_plan(p)
    assert plan is not None and verify_move_sequence(p, plan)
    stuck = ACPresentation(("x",), (gen("x", 2),))
    assert removal_plan(stuck) is None


def test_search_found_cases():
    r = ac_trivialize_search(ACPresentation(("x",), (gen("x"),)), 8, 1)
    assert isinstance(r, Found) and len(r.moves) == 1

    p = ACPresentation(("x", "y"), (parse_word("x y"), gen("y")))
    r = ac_trivialize_search(p, 32, 4)
    assert isinstance(r, Found)
    assert verify_move_sequence(p, r.moves)

    killed = kill_meridian(SPUN, "t")
    r = ac_trivialize_search(killed, 32, 12)
    assert isinstance(r, Found)
    assert verify_move_sequence(killed, r.moves)


def test_search_outcomes_budget_exhausted():
    # Z (x with empty-ish relator x^2 gives Z/2, never trivializable):
    stuck = ACPresentation(("x",), (gen("x", 2),))
    out = ac_trivialize_search(stuck, 4, 3)
    assert isinstance(out, (Budget, Exhausted))
    # oversized start is a budget outcome
    assert isinstance(ac_trivialize_search(stuck, 1, 3), Budget)


def test_search_deterministic_and_worker_independent():
    killed = kill_meridian(SPUN, "t")
    base = ac_trivialize_search(killed, 32, 12)
    for workers in (1, 2, 3):
        assert ac_trivialize_search(killed, 32, 12, workers=workers) == base


def test_verify_move_sequence_negative():
    p = ACPresentation(("x", "y"), (parse_word("x y x"), parse_word("y x")))
    assert not verify_move_sequence(p, ())
    assert not verify_move_sequence(p, (Invert(9),))


def test_move_text_roundtrip():
    moves = (
        Invert(0),
        Conjugate(0, "t", -1),
        Multiply(0, 1),
        AddPair("y", parse_word("x^2")),
        RemovePair("y"),
    )
    text = format_moves(moves)
    assert text.splitlines() == [
        "inv 1",
        "conj 1 t -1",
        "mul 1 2",
        "add y x^2",
        "rm y",
    ]
    assert parse_moves(text) == moves
    with pytest.raises(ValueError):
        parse_moves("bogus 1")
