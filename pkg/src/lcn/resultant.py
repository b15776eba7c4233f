"""Resultant matrices certifying common factors, and two-layer ideals.

Several nonzero binary forms ``q_1, ..., q_s`` of degrees ``n_1, ..., n_s``
share a factor of degree at least ``m`` exactly when the coefficient matrix
``R_l`` with ``l = n_max + n_min - m`` drops below rank
``n_min + n_max - 2m + 2``.  ``R_l`` has ``l + 1`` columns and, for each
``q_i``, the ``max(0, l - n_i + 1)`` shifted copies of its coefficient row.

For a reduced two-layer architecture the end-to-end filters are exactly the
forms whose stride decomposition slots share a factor of degree
``k_2 - 1``, so the minors of the matching resultant matrices cut out the
architecture's filter variety.  Two matrices are needed in general: one for
all slots, and (when only some slots attain the top degree) one for the top
ones alone, which handles the points where the lower-degree slots vanish.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .decomp import DecompProfile, profile, s_decompose
from .polyring import (
    MultiPoly,
    PolyMatrix,
    coefficient_symbols,
    dedup_key,
    minor_expansion,
)


@dataclass(frozen=True)
class ResultantMatrix:
    """R_l for a list of coefficient rows, with per-row provenance.

    ``row_provenance[t] = (input index, shift)``: the row holds the
    coefficients of input polynomial ``input index`` placed in columns
    ``shift .. shift + degree``.
    """

    shift_cap: int
    matrix: PolyMatrix
    row_provenance: tuple
    has_degree_zero_rows: bool


def resultant_rows(polys: Sequence[Sequence], l: int, zero=0):
    """Generic row construction shared by symbolic and numeric callers.

    ``polys`` are coefficient sequences (empty = zero polynomial, excluded).
    Returns (rows, provenance, degree-zero flag).
    """
    if l < 0:
        raise ValueError("shift cap l must be nonnegative")
    if all(len(q) == 0 for q in polys):
        raise ValueError("all input polynomials are zero")
    cols = l + 1
    rows = []
    provenance = []
    has_const = False
    for idx, q in enumerate(polys):
        if not len(q):
            continue
        n = len(q) - 1
        if n == 0:
            has_const = True
        for shift in range(l - n + 1):
            row = [zero] * cols
            row[shift : shift + n + 1] = list(q)
            rows.append(row)
            provenance.append((idx, shift))
    return rows, tuple(provenance), has_const


def build_resultant(polys: Sequence[Sequence[MultiPoly]], l: int) -> ResultantMatrix:
    """Symbolic R_l from coefficient sequences of MultiPoly entries."""
    vars_ = None
    for q in polys:
        for c in q:
            vars_ = c.vars
            break
        if vars_ is not None:
            break
    if vars_ is None:
        raise ValueError("all input polynomials are zero")
    zero = MultiPoly.zero(vars_)
    rows, provenance, has_const = resultant_rows(polys, l, zero=zero)
    flat = tuple(e for row in rows for e in row)
    return ResultantMatrix(
        l, PolyMatrix(len(rows), l + 1, flat), provenance, has_const
    )


@dataclass(frozen=True)
class TwoLayerIdealRecipe:
    """Matrix/minor sizes cutting out a reduced two-layer filter variety.

    The first matrix uses all nonzero slots with the shift cap and minor
    size given by the actual top/bottom slot degrees.  The second matrix
    (top-degree slots only) is needed exactly when the top degree is
    attained by more than one but not all nonzero slots.
    """

    k1: int
    k2: int
    s1: int
    out_size: int
    profile: DecompProfile
    l1: int
    size1: int
    l2: "int | None"
    size2: "int | None"
    i2_active: bool
    has_constant_slots: bool


def plan_two_layer(k1: int, k2: int, s1: int) -> TwoLayerIdealRecipe:
    if min(k1, k2) < 2 or s1 < 2:
        raise ValueError(
            f"({k1},{k2}) with stride {s1} is not a reduced two-layer "
            "architecture; apply reduce_arch first"
        )
    k = k1 + s1 * (k2 - 1)
    prof = profile(k, s1)
    m = k2 - 1
    l1 = prof.n_min + prof.n_max - m
    size1 = prof.n_min + prof.n_max - 2 * m + 2
    i2_active = 1 < prof.r < prof.nonzero_slots
    l2 = 2 * prof.n_max - m if i2_active else None
    size2 = 2 * prof.n_max - 2 * m + 2 if i2_active else None
    return TwoLayerIdealRecipe(
        k1,
        k2,
        s1,
        k,
        prof,
        l1,
        size1,
        l2,
        size2,
        i2_active,
        any(d == 0 for d in prof.degrees),
    )


@dataclass(frozen=True)
class IdealGenerators:
    """Deduplicated generator list with per-generator provenance.

    ``raw_counts`` records, per construction step, how many minors were
    enumerated before dropping zero determinants and duplicates; the
    emitted ``generators`` are sign-normalized and pairwise distinct up to
    sign and integer content.
    """

    variables: tuple
    generators: tuple
    provenance: tuple
    raw_counts: tuple

    @property
    def total_raw_count(self) -> int:
        return sum(n for _, n in self.raw_counts)

    def texts(self) -> list:
        return [g.text() for g in self.generators]


def _emit(candidates, variables):
    """Sign-normalize, drop zeros, dedup up to sign and content."""
    gens = []
    provs = []
    seen = set()
    for prov, poly in candidates:
        if not poly.terms:
            continue
        poly = poly.sign_normalized()
        key = dedup_key(poly)
        if key in seen:
            continue
        seen.add(key)
        gens.append(poly)
        provs.append(prov)
    return IdealGenerators(tuple(variables), tuple(gens), tuple(provs), ())


def two_layer_ideal(k1: int, k2: int, s1: int) -> IdealGenerators:
    """Generators whose zero locus is the two-layer filter variety.

    Slots are the stride decomposition of generic symbols ``c0..c{k-1}``;
    zero slots contribute no rows.  Minors come from the recipe in
    :func:`plan_two_layer`; the returned list is sign-normalized and
    deduplicated, while ``raw_counts`` keeps the pre-pruning minor counts.
    """
    recipe = plan_two_layer(k1, k2, s1)
    syms = coefficient_symbols(recipe.out_size)
    vars_ = syms[0].vars
    slots = s_decompose(syms, s1)
    nonzero = [q for q in slots if q]
    label = f"two_layer({k1},{k2};{s1})"

    candidates = []
    raw = []
    r1 = build_resultant(nonzero, recipe.l1)
    count = 0
    for ri, ci, det in minor_expansion(r1.matrix, recipe.size1):
        candidates.append((f"{label}:I1[r={ri};c={ci}]", det))
        count += 1
    raw.append((f"{label}:I1", count))

    if recipe.i2_active:
        top = slots[: recipe.profile.r]
        r2 = build_resultant(top, recipe.l2)
        count = 0
        for ri, ci, det in minor_expansion(r2.matrix, recipe.size2):
            candidates.append((f"{label}:I2[r={ri};c={ci}]", det))
            count += 1
        raw.append((f"{label}:I2", count))

    out = _emit(candidates, vars_)
    return IdealGenerators(out.variables, out.generators, out.provenance, tuple(raw))


def two_layer_matrices(k1: int, k2: int, s1: int) -> list:
    """The labeled resultant matrices behind :func:`two_layer_ideal`."""
    recipe = plan_two_layer(k1, k2, s1)
    syms = coefficient_symbols(recipe.out_size)
    slots = s_decompose(syms, s1)
    nonzero = [q for q in slots if q]
    out = [("I1", recipe.size1, build_resultant(nonzero, recipe.l1))]
    if recipe.i2_active:
        out.append(
            ("I2", recipe.size2, build_resultant(slots[: recipe.profile.r], recipe.l2))
        )
    return out
