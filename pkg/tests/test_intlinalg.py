import random

import pytest

from ribbonknots.intlinalg import (
    AbelianGroupInvariants,
    AddMultiple,
    Negate,
    Swap,
    cokernel_invariants,
    det_int,
    diagonal_of,
    factor_glnz,
    format_matrix,
    identity_matrix,
    int_matrix,
    parse_matrix,
    replay_elementary,
    smith_normal_form,
)


def random_matrix(rng, rows, cols, bound=9):
    return int_matrix([[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)])


def random_unimodular(rng, n, n_ops=10):
    ops = []
    for _ in range(rng.randrange(n_ops + 1)):
        kind = rng.randrange(3)
        if kind == 0 and n >= 2:
            i, j = rng.sample(range(n), 2)
            ops.append(AddMultiple(i, j, rng.choice([-2, -1, 1, 2])))
        elif kind == 1 and n >= 2:
            i, j = rng.sample(range(n), 2)
            ops.append(Swap(i, j))
        else:
            ops.append(Negate(rng.randrange(n)))
    return replay_elementary(ops, n)


def test_det_int_basics():
    assert det_int(identity_matrix(3)) == 1
    assert det_int(int_matrix([[2, 0], [0, 3]])) == 6
    assert det_int(int_matrix([[1, 2], [2, 4]])) == 0
    assert det_int(int_matrix([], cols=0)) == 1


def test_det_int_multiplicative():
    rng = random.Random(21)
    for _ in range(50):
        n = rng.randint(1, 4)
        a, b = random_matrix(rng, n, n, 5), random_matrix(rng, n, n, 5)
        assert det_int(a @ b) == det_int(a) * det_int(b)


def test_elementary_inverses():
    rng = random.Random(22)
    for _ in range(50):
        n = rng.randint(2, 4)
        m = random_unimodular(rng, n)
        ops = factor_glnz(m)
        undo = tuple(op.inverse() for op in reversed(ops))
        assert replay_elementary(tuple(ops) + undo, n) == identity_matrix(n)


def test_factor_glnz_replay_exact():
    rng = random.Random(23)
    for _ in range(100):
        n = rng.randint(1, 4)
        m = random_unimodular(rng, n)
        assert replay_elementary(factor_glnz(m), n) == m
    with pytest.raises(ValueError):
        factor_glnz(int_matrix([[2]]))


def test_snf_contract():
    rng = random.Random(24)
    for _ in range(100):
        rows, cols = rng.randint(1, 5), rng.randint(1, 5)
        m = random_matrix(rng, rows, cols)
        u, s, v = smith_normal_form(m)
        assert u @ m @ v == s
        assert abs(det_int(u)) == 1 and abs(det_int(v)) == 1
        diag = diagonal_of(s)
        assert all(d >= 0 for d in diag)
        for a, b in zip(diag, diag[1:]):
            assert b == 0 or (a != 0 and b % a == 0) or (a == 0 and b == 0)
        # off-diagonal zero
        for i in range(s.rows):
            for j in range(s.cols):
                if i != j:
                    assert s[i, j] == 0
        if rows == cols:
            prod = 1
            for d in diag:
                prod *= d
            assert prod == abs(det_int(m))


def test_snf_deterministic():
    rng = random.Random(25)
    m = random_matrix(rng, 4, 4)
    assert smith_normal_form(m) == smith_normal_form(m)


def test_cokernel_invariants():
    assert cokernel_invariants(int_matrix([[2, 0], [0, 3]])) == AbelianGroupInvariants(0, (6,))
    assert cokernel_invariants(int_matrix([[0, 0]], cols=2)) == AbelianGroupInvariants(2)
    assert cokernel_invariants(int_matrix([], cols=3)) == AbelianGroupInvariants(3)
    assert str(AbelianGroupInvariants(1, (3,))) == "Z + Z/3"
    assert str(AbelianGroupInvariants(0)) == "0"


def test_invariants_validation():
    with pytest.raises(ValueError):
        AbelianGroupInvariants(0, (3, 2))
    with pytest.raises(ValueError):
        AbelianGroupInvariants(0, (1,))


def test_matrix_file_roundtrip():
    m = int_matrix([[1, -2], [0, 7]])
    assert parse_matrix(format_matrix(m)) == m
    assert parse_matrix("# c\n2 2\n1 -2 # tail\n0 7\n") == m
    with pytest.raises(ValueError):
        parse_matrix("1 2\n1\n")
    with pytest.raises(ValueError):
        parse_matrix("")
