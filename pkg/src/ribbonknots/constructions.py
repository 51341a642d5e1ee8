"""Realization of knot modules by group presentations.

Four constructions, each taking exact module data and producing a
deficiency-1 presentation (plus a Wirtinger rewriting where one exists):

* ``realize_trotter``  -- square integer matrix M with det(M) != 0 and
  det(M - I) != 0, presenting the module with matrix t M + (I - M);
* ``realize_cyclic``   -- a single polynomial a(t) with augmentation 1,
  presenting the cyclic module Z[t, 1/t] / (a);
* ``realize_sum``      -- a direct sum of cyclic modules;
* ``realize_lemma4``   -- M in GL(r, Z) describing the (t - 1)-action,
  realized as an ascending HNN extension of a free group;
* ``realize_lemma3_group`` -- T in GL(r, Z) describing the t-action,
  realized as a free-by-cyclic group (no Wirtinger form claimed).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .intlinalg import (
    AddMultiple,
    ElementaryOp,
    IntMatrix,
    Negate,
    Swap,
    det_int,
    factor_glnz,
    int_matrix,
    parse_matrix,
)
from .laurent import (
    LambdaMatrix,
    LaurentPoly,
    ONE,
    augmentation,
    div_exact_t_minus_1,
    lambda_matrix,
    laurent,
    parse_poly_line,
)
from .presentations import Presentation
from .words import (
    FreeEndo,
    IDENTITY,
    Word,
    compose_endo,
    gen,
    identity_endo,
    inverse,
    normalize,
    power,
    product,
)


class AdmissibilityError(ValueError):
    """Module data violating the preconditions of a construction."""


@dataclass(frozen=True)
class KnotModuleSpec:
    """Input module data in one of the supported forms.

    ``kind`` is one of ``cyclic``, ``trotter``, ``tminus1``, ``taction``,
    ``sum``; ``polys`` is used by cyclic/sum, ``matrix`` by the rest.
    """

    kind: str
    polys: tuple[LaurentPoly, ...] = ()
    matrix: Optional[IntMatrix] = None

    def presentation_matrix(self) -> LambdaMatrix:
        """The square matrix presenting the module over Z[t, 1/t]."""
        if self.kind == "cyclic":
            return lambda_matrix([[self.polys[0]]])
        if self.kind == "sum":
            n = len(self.polys)
            return lambda_matrix(
                [
                    [self.polys[i] if i == j else laurent({}) for j in range(n)]
                    for i in range(n)
                ]
            )
        m = self.matrix
        assert m is not None
        if self.kind == "trotter":
            # t M + (I - M)
            return lambda_matrix(
                [
                    [
                        laurent({1: m[i, j], 0: (1 if i == j else 0) - m[i, j]})
                        for j in range(m.cols)
                    ]
                    for i in range(m.rows)
                ]
            )
        if self.kind == "tminus1":
            # t I - (I + M): t acts by I + M.
            return lambda_matrix(
                [
                    [
                        laurent({1: 1 if i == j else 0, 0: -((1 if i == j else 0) + m[i, j])})
                        for j in range(m.cols)
                    ]
                    for i in range(m.rows)
                ]
            )
        if self.kind == "taction":
            # t I - T
            return lambda_matrix(
                [
                    [
                        laurent({1: 1 if i == j else 0, 0: -m[i, j]})
                        for j in range(m.cols)
                    ]
                    for i in range(m.rows)
                ]
            )
        raise ValueError(f"unknown module kind {self.kind!r}")


def cyclic_module(alpha: LaurentPoly) -> KnotModuleSpec:
    alpha = _shift_low_to_zero(alpha)
    if augmentation(alpha) != 1:
        raise AdmissibilityError(
            f"augmentation is {augmentation(alpha)}, must be 1"
        )
    return KnotModuleSpec("cyclic", polys=(alpha,))


def sum_module(polys: Sequence[LaurentPoly]) -> KnotModuleSpec:
    if not polys:
        raise AdmissibilityError("direct sum needs at least one summand")
    shifted = tuple(_shift_low_to_zero(p) for p in polys)
    for p in shifted:
        if augmentation(p) != 1:
            raise AdmissibilityError(f"summand {p} has augmentation != 1")
    return KnotModuleSpec("sum", polys=shifted)


def trotter_module(m: IntMatrix) -> KnotModuleSpec:
    _require_square(m)
    d = det_int(m)
    if d == 0:
        raise AdmissibilityError("det(M) = 0")
    d1 = det_int(_minus_identity(m))
    if d1 == 0:
        raise AdmissibilityError("det(M - I) = 0")
    return KnotModuleSpec("trotter", matrix=m)


def tminus1_module(m: IntMatrix) -> KnotModuleSpec:
    _require_square(m)
    d = det_int(m)
    if abs(d) != 1:
        raise AdmissibilityError(f"|det(M)| = {abs(d)}, must be 1")
    d1 = det_int(_plus_identity(m))
    if abs(d1) != 1:
        raise AdmissibilityError(f"|det(I + M)| = {abs(d1)}, must be 1")
    return KnotModuleSpec("tminus1", matrix=m)


def taction_module(t: IntMatrix) -> KnotModuleSpec:
    _require_square(t)
    d = det_int(t)
    if abs(d) != 1:
        raise AdmissibilityError(f"|det(T)| = {abs(d)}, must be 1")
    d1 = det_int(_minus_identity(t))
    if abs(d1) != 1:
        raise AdmissibilityError(f"|det(T - I)| = {abs(d1)}, must be 1")
    return KnotModuleSpec("taction", matrix=t)


def _require_square(m: IntMatrix) -> None:
    if m.rows != m.cols or m.rows == 0:
        raise AdmissibilityError(f"matrix must be square and nonempty, got {m.rows}x{m.cols}")


def _minus_identity(m: IntMatrix) -> IntMatrix:
    return int_matrix(
        [
            [m[i, j] - (1 if i == j else 0) for j in range(m.cols)]
            for i in range(m.rows)
        ]
    )


def _plus_identity(m: IntMatrix) -> IntMatrix:
    return int_matrix(
        [
            [m[i, j] + (1 if i == j else 0) for j in range(m.cols)]
            for i in range(m.rows)
        ]
    )


def _shift_low_to_zero(p: LaurentPoly) -> LaurentPoly:
    """Multiply by the unit t^-low (does not change the cyclic module)."""
    if p.is_zero():
        return p
    return LaurentPoly(0, p.coeffs)


@dataclass(frozen=True)
class RealizationResult:
    primary_presentation: Presentation
    wirtinger_presentation: Optional[Presentation]
    meridian: str
    module_spec: KnotModuleSpec
    fg_commutator: Optional[bool] = None
    is_ascending_hnn: bool = False

    @property
    def wirtinger_available(self) -> bool:
        return self.wirtinger_presentation is not None

    def verification_presentation(self) -> Presentation:
        return self.wirtinger_presentation or self.primary_presentation


def realize_cyclic(alpha: LaurentPoly) -> RealizationResult:
    """Realize the cyclic module with polynomial ``alpha``.

    Builds ``< t, x | x = w t w^-1 t^-1 >`` with
    ``w = prod_i t^i x^(b_i) t^-i`` for ``b = (alpha - 1)/(t - 1)``, and
    the one-relator Wirtinger rewriting ``< t, u | u = W t W^-1 >``
    obtained from ``u = x t``.
    """
    spec = cyclic_module(alpha)
    alpha = spec.polys[0]
    x, u, w, fg = _cyclic_data(alpha, "x", "u")
    primary_rel = product(gen(x, -1), w, gen("t"), inverse(w), gen("t", -1))
    primary = Presentation(("t", x), (primary_rel,))
    w_sub = _substitute_xt(w, x, u)
    wirt_rel = product(gen(u, -1), w_sub, gen("t"), inverse(w_sub))
    wirtinger = Presentation(("t", u), (wirt_rel,))
    return RealizationResult(primary, wirtinger, "t", spec, fg_commutator=fg)


def _cyclic_data(alpha: LaurentPoly, x: str, u: str) -> tuple[str, str, Word, bool]:
    """The commutator word w and the finite-generation flag for alpha."""
    beta = div_exact_t_minus_1(alpha - ONE)
    pieces = []
    for i, b in beta.terms():
        pieces.append(product(gen("t", i) if i else IDENTITY, gen(x, b), gen("t", -i) if i else IDENTITY))
    w = product(*pieces) if pieces else IDENTITY
    # Finitely generated commutator subgroup needs extremal coefficients
    # of alpha equal to +-1.
    fg = abs(alpha.coeffs[0]) == 1 and abs(alpha.coeffs[-1]) == 1
    return x, u, w, fg


def _substitute_xt(w: Word, x: str, u: str) -> Word:
    """Rewrite w under x = u t^-1."""
    out: list[tuple[str, int]] = []
    for g, e in w.syllables:
        if g == x:
            img = product(gen(u), gen("t", -1))
            if e < 0:
                img = inverse(img)
            for _ in range(abs(e)):
                out.extend(img.syllables)
        else:
            out.append((g, e))
    return normalize(out)


def realize_sum(polys: Sequence[LaurentPoly]) -> RealizationResult:
    """Realize a direct sum of cyclic modules with a shared meridian.

    One generator ``u<k>`` and one Wirtinger relator per summand; the
    primary presentation uses commutator generators ``x<k>``.
    """
    spec = sum_module(polys)
    primary_gens: list[str] = ["t"]
    wirt_gens: list[str] = ["t"]
    primary_rels: list[Word] = []
    wirt_rels: list[Word] = []
    fg_all = True
    for k, alpha in enumerate(spec.polys, start=1):
        x, u = f"x{k}", f"u{k}"
        _, _, w, fg = _cyclic_data(alpha, x, u)
        fg_all = fg_all and fg
        primary_gens.append(x)
        wirt_gens.append(u)
        primary_rels.append(product(gen(x, -1), w, gen("t"), inverse(w), gen("t", -1)))
        w_sub = _substitute_xt(w, x, u)
        wirt_rels.append(product(gen(u, -1), w_sub, gen("t"), inverse(w_sub)))
    primary = Presentation(tuple(primary_gens), tuple(primary_rels))
    wirtinger = Presentation(tuple(wirt_gens), tuple(wirt_rels))
    return RealizationResult(primary, wirtinger, "t", spec, fg_commutator=fg_all)


def realize_trotter(m: IntMatrix) -> RealizationResult:
    """Realize the module with matrix t M + (I - M).

    Primary presentation (an HNN extension of a free group):
    ``< t, x_1..x_r, y_1..y_r | y_i = prod_j x_j^(m_ij),
    t y_i t^-1 y_i^-1 = x_i^-1 >``.  The Wirtinger rewriting sets
    ``s_i = y_i t y_i^-1``, so ``x_i = s_i t^-1`` and each relator says
    ``s_i = Y_i t Y_i^-1`` with ``Y_i = prod_j (s_j t^-1)^(m_ij)``.
    """
    spec = trotter_module(m)
    r = m.rows
    xs = [f"x{i}" for i in range(1, r + 1)]
    ys = [f"y{i}" for i in range(1, r + 1)]
    ss = [f"s{i}" for i in range(1, r + 1)]
    primary_rels: list[Word] = []
    for i in range(r):
        prod_x = product(*(gen(xs[j], m[i, j]) for j in range(r) if m[i, j]))
        primary_rels.append(product(gen(ys[i], -1), prod_x))
    for i in range(r):
        primary_rels.append(
            product(gen("t"), gen(ys[i]), gen("t", -1), gen(ys[i], -1), gen(xs[i]))
        )
    primary = Presentation(("t", *xs, *ys), tuple(primary_rels))
    wirt_rels = []
    for i in range(r):
        y_i = product(
            *(power(product(gen(ss[j]), gen("t", -1)), m[i, j]) for j in range(r) if m[i, j])
        )
        wirt_rels.append(product(gen(ss[i], -1), y_i, gen("t"), inverse(y_i)))
    wirtinger = Presentation(("t", *ss), tuple(wirt_rels))
    return RealizationResult(primary, wirtinger, "t", spec)


def lift_elementary(
    ops: Sequence[ElementaryOp], rank: int
) -> tuple[FreeEndo, FreeEndo]:
    """Lift elementary row operations to a free-group automorphism.

    Returns the lift and its inverse.  The lift's abelianization matrix
    equals the replayed product of the operations.
    """
    domain = tuple(f"x{i}" for i in range(1, rank + 1))
    endo = identity_endo(domain)
    inv = identity_endo(domain)
    for op in ops:
        endo = compose_endo(endo, _lift_one(op, domain))
        inv = compose_endo(_lift_one(op.inverse(), domain), inv)
    return endo, inv


def _lift_one(op: ElementaryOp, domain: tuple[str, ...]) -> FreeEndo:
    images = [gen(g) for g in domain]
    if isinstance(op, AddMultiple):
        _check_index(op.i, len(domain))
        _check_index(op.j, len(domain))
        images[op.i] = product(gen(domain[op.i]), gen(domain[op.j], op.c))
    elif isinstance(op, Swap):
        _check_index(op.i, len(domain))
        _check_index(op.j, len(domain))
        images[op.i], images[op.j] = images[op.j], images[op.i]
    elif isinstance(op, Negate):
        _check_index(op.i, len(domain))
        images[op.i] = gen(domain[op.i], -1)
    else:
        raise TypeError(f"unknown elementary operation {op!r}")
    return FreeEndo(domain, tuple(images))


def _check_index(i: int, rank: int) -> None:
    if not 0 <= i < rank:
        raise ValueError(f"row index {i} out of range for rank {rank}")


def realize_lemma4(m: IntMatrix) -> RealizationResult:
    """Realize a module, given the matrix of the (t - 1)-action, as an
    ascending HNN extension ``< t, x_1..x_r | t x_i t^-1 = x_i mu(x_i) >``
    where mu lifts M.

    Wirtinger rewriting: ``s_i = x_i^-1 t x_i`` turns the relation into
    ``mu(x_i) = s_i t^-1``; applying the inverse automorphism expresses
    each ``x_j`` in the ``s_k t^-1`` and yields
    ``< t, s_1..s_r | s_i = X_i^-1 t X_i >``.
    """
    spec = tminus1_module(m)
    r = m.rows
    mu, nu = lift_elementary(factor_glnz(m), r)
    xs = list(mu.domain)
    primary_rels = tuple(
        product(
            gen("t"), gen(xs[i]), gen("t", -1),
            inverse(product(gen(xs[i]), mu.images[i])),
        )
        for i in range(r)
    )
    primary = Presentation(("t", *xs), primary_rels)
    ss = [f"s{i}" for i in range(1, r + 1)]
    # x_j = nu(x_j) evaluated at x_k -> mu(x_k) = s_k t^-1.
    def to_s(word: Word) -> Word:
        out: list[tuple[str, int]] = []
        for g, e in word.syllables:
            k = xs.index(g)
            img = product(gen(ss[k]), gen("t", -1))
            if e < 0:
                img = inverse(img)
            for _ in range(abs(e)):
                out.extend(img.syllables)
        return normalize(out)

    wirt_rels = []
    for i in range(r):
        x_i = to_s(nu.images[i])
        wirt_rels.append(
            product(gen(ss[i], -1), inverse(x_i), gen("t"), x_i)
        )
    wirtinger = Presentation(("t", *ss), tuple(wirt_rels))
    return RealizationResult(
        primary, wirtinger, "t", spec, is_ascending_hnn=True
    )


def realize_lemma3_group(t_matrix: IntMatrix) -> RealizationResult:
    """The free-by-cyclic group ``F(r) x|_tau Z`` for a t-action T.

    Presentation ``< t, x_1..x_r | t x_i t^-1 = tau(x_i) >`` with tau a
    lift of T.  No Wirtinger form is claimed for this construction.
    """
    spec = taction_module(t_matrix)
    r = t_matrix.rows
    tau, _ = lift_elementary(factor_glnz(t_matrix), r)
    xs = list(tau.domain)
    rels = tuple(
        product(gen("t"), gen(xs[i]), gen("t", -1), inverse(tau.images[i]))
        for i in range(r)
    )
    primary = Presentation(("t", *xs), rels)
    return RealizationResult(primary, None, "t", spec)


def is_ascending_hnn_shape(p: Presentation, stable: str = "t") -> bool:
    """Syntactic check: every relator is
    ``t x_i t^-1 . (word in the x's)^-1``."""
    base = set(p.generators) - {stable}
    for r in p.relators:
        syl = r.syllables
        if len(syl) < 3:
            return False
        if syl[0] != (stable, 1):
            return False
        if syl[1][0] not in base or syl[1][1] != 1:
            return False
        if syl[2] != (stable, -1):
            return False
        if any(g == stable for g, _ in syl[3:]):
            return False
    return True


def parse_module_spec(text: str, read_file) -> KnotModuleSpec:
    """Parse a module-spec file.

    Lines: ``module cyclic <poly-line>``, ``module sum <poly>;<poly>``,
    or ``module {trotter|tminus1|taction} <matrix-file>`` where the
    matrix file is resolved by the ``read_file`` callback.
    """
    lines = [
        ln for ln in (raw.split("#", 1)[0].strip() for raw in text.splitlines()) if ln
    ]
    if len(lines) != 1:
        raise ValueError("module-spec file must contain exactly one module line")
    tokens = lines[0].split(None, 2)
    if len(tokens) != 3 or tokens[0] != "module":
        raise ValueError(f"bad module line {lines[0]!r}")
    kind, payload = tokens[1], tokens[2]
    if kind == "cyclic":
        return cyclic_module(parse_poly_line(payload))
    if kind == "sum":
        return sum_module([parse_poly_line(part.strip()) for part in payload.split(";")])
    if kind in ("trotter", "tminus1", "taction"):
        m = parse_matrix(read_file(payload.strip()))
        return {
            "trotter": trotter_module,
            "tminus1": tminus1_module,
            "taction": taction_module,
        }[kind](m)
    raise ValueError(f"unknown module kind {kind!r}")


def realize(spec: KnotModuleSpec) -> RealizationResult:
    """Dispatch a module spec to its construction."""
    if spec.kind == "cyclic":
        return realize_cyclic(spec.polys[0])
    if spec.kind == "sum":
        return realize_sum(spec.polys)
    if spec.kind == "trotter":
        return realize_trotter(spec.matrix)
    if spec.kind == "tminus1":
        return realize_lemma4(spec.matrix)
    if spec.kind == "taction":
        return realize_lemma3_group(spec.matrix)
    raise ValueError(f"unknown module kind {spec.kind!r}")
