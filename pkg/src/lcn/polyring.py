"""Exact sparse polynomial arithmetic in several named variables.

A :class:`MultiPoly` maps exponent tuples (one entry per variable in an
ordered ambient variable list) to nonzero coefficients.  Coefficients are
Python ints or :class:`fractions.Fraction`, so every operation is exact.
Two polynomials are equal iff they share the same variable list and the
same term map; zero-coefficient terms are never stored.

The term order used for printing, leading terms and sign normalization is
graded lexicographic: higher total degree first, ties broken by comparing
exponent tuples left to right.  Variable lists of the form ``c0, c1, ...``
with at most 26 entries print as the letters ``A, B, ...`` so that small
generators stay readable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Iterable, Iterator, Mapping, Sequence

Coeff = int | Fraction
Exponents = tuple[int, ...]

_LETTERS = "ABCDEFGHIJKLMNOPQRSTUVWXYZ"


def _grlex(exps):
    return (sum(exps), exps)


class MultiPoly:
    """Sparse exact polynomial over an ordered tuple of variable names."""

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, variables, terms=()):
        vars_ = tuple(variables)
        nv = len(vars_)
        acc = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for exps, coeff in items:
            exps = tuple(int(e) for e in exps)
            if len(exps) != nv:
                raise ValueError(
                    f"exponent tuple of length {len(exps)} in a ring with {nv} variables"
                )
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            if coeff:
                total = acc.get(exps, 0) + coeff
                if total:
                    acc[exps] = total
                elif exps in acc:
                    del acc[exps]
        self.vars = vars_
        self.terms = acc
        self._hash = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, variables) -> "MultiPoly":
        return cls(variables)

    @classmethod
    def constant(cls, variables, value) -> "MultiPoly":
        vars_ = tuple(variables)
        return cls(vars_, {(0,) * len(vars_): value})

    @classmethod
    def variable(cls, variables, name: str) -> "MultiPoly":
        vars_ = tuple(variables)
        idx = vars_.index(name)
        exps = [0] * len(vars_)
        exps[idx] = 1
        return cls(vars_, {tuple(exps): 1})

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def total_degree(self) -> int:
        """Max term degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def leading_term(self):
        """(exponents, coefficient) of the graded-lex maximal term."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exps = max(self.terms, key=_grlex)
        return exps, self.terms[exps]

    def sign_normalized(self) -> "MultiPoly":
        """Flip the sign if needed so the leading coefficient is positive."""
        if not self.terms:
            return self
        _, coeff = self.leading_term()
        return -self if coeff < 0 else self

    def content(self) -> int:
        """Positive gcd of the integer coefficients (1 if any is fractional)."""
        g = 0
        for c in self.terms.values():
            if isinstance(c, Fraction):
                if c.denominator != 1:
                    return 1
                c = c.numerator
            g = gcd(g, abs(c))
        return g or 1

    def primitive_part(self) -> "MultiPoly":
        g = self.content()
        if g == 1:
            return self
        return MultiPoly(self.vars, {e: c // g for e, c in self.terms.items()})

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.vars != self.vars:
                raise ValueError(
                    f"mixed variable lists: {self.vars} vs {other.vars}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.constant(self.vars, other)
        return NotImplemented

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            total = out.get(e, 0) + c
            if total:
                out[e] = total
            elif e in out:
                del out[e]
        res = MultiPoly(self.vars)
        res.terms = out
        return res

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                total = out.get(e, 0) + c1 * c2
                if total:
                    out[e] = total
                elif e in out:
                    del out[e]
        res = MultiPoly(self.vars)
        res.terms = out
        return res

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MultiPoly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers")
        result = MultiPoly.constant(self.vars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- evaluation and calculus -------------------------------------------

    def evaluate(self, assignment: Mapping) -> Fraction:
        """Exact value at a point given as ``{variable name: rational}``.

        Every variable of the ring must be assigned.
        """
        values = []
        for v in self.vars:
            if v not in assignment:
                raise ValueError(f"no value assigned to variable {v!r}")
            values.append(Fraction(assignment[v]))
        total = Fraction(0)
        for exps, coeff in self.terms.items():
            term = Fraction(coeff)
            for val, e in zip(values, exps):
                if e:
                    term *= val**e
            total += term
        return total

    def evaluate_vector(self, point: Sequence) -> Fraction:
        """Exact value at a point aligned with the variable list."""
        if len(point) != len(self.vars):
            raise ValueError(
                f"point of length {len(point)} for {len(self.vars)} variables"
            )
        return self.evaluate(dict(zip(self.vars, point)))

    def differentiate(self, name: str) -> "MultiPoly":
        idx = self.vars.index(name)
        out = {}
        for exps, coeff in self.terms.items():
            e = exps[idx]
            if e:
                lowered = exps[:idx] + (e - 1,) + exps[idx + 1 :]
                out[lowered] = out.get(lowered, 0) + coeff * e
        return MultiPoly(self.vars, out)

    # -- comparison / hashing ------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(self.vars, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    # -- rendering -----------------------------------------------------------

    def text(self, letters: "bool | None" = None) -> str:
        """Human-readable form, e.g. ``A*D^2 + B^2*E - B*C*D``."""
        if not self.terms:
            return "0"
        if letters is None:
            letters = len(self.vars) <= 26 and all(
                v == f"c{i}" for i, v in enumerate(self.vars)
            )
        names = [_LETTERS[i] for i in range(len(self.vars))] if letters else list(self.vars)
        pieces = []
        for exps in sorted(self.terms, key=_grlex, reverse=True):
            coeff = self.terms[exps]
            mono = "*".join(
                n if e == 1 else f"{n}^{e}" for n, e in zip(names, exps) if e
            )
            mag = abs(coeff)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            pieces.append(("-" if coeff < 0 else "+", body))
        sign0, body0 = pieces[0]
        out = body0 if sign0 == "+" else "-" + body0
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    __str__ = text

    def __repr__(self):
        return f"MultiPoly({self.text()!r})"

    # -- serialization ---------------------------------------------------------

    def to_json(self) -> dict:
        """``{"vars": [...], "terms": [{"coeff": "...", "exps": [...]}]}``.

        Coefficients are emitted as decimal strings so arbitrary precision
        survives any JSON reader.
        """
        terms = []
        for exps in sorted(self.terms, key=_grlex, reverse=True):
            coeff = self.terms[exps]
            if isinstance(coeff, Fraction):
                if coeff.denominator != 1:
                    raise ValueError("JSON form supports integer coefficients only")
                coeff = coeff.numerator
            terms.append({"coeff": str(coeff), "exps": list(exps)})
        return {"vars": list(self.vars), "terms": terms}

    @classmethod
    def from_json(cls, data: Mapping) -> "MultiPoly":
        return cls(
            data["vars"],
            {tuple(t["exps"]): int(t["coeff"]) for t in data["terms"]},
        )


def symbols(names: Iterable[str]) -> tuple:
    """Atoms of a shared polynomial ring, one per name."""
    vars_ = tuple(names)
    return tuple(MultiPoly.variable(vars_, n) for n in vars_)


def coefficient_symbols(k: int) -> tuple:
    """Symbols ``c0 .. c{k-1}`` for the entries of an end-to-end filter."""
    return symbols(f"c{i}" for i in range(k))


def term_key(p: MultiPoly) -> tuple:
    """Canonical hashable form of the term map (used for dedup)."""
    return tuple(sorted(p.terms.items()))


def dedup_key(p: MultiPoly) -> tuple:
    """Canonical form identifying polynomials up to sign and integer content."""
    return term_key(p.sign_normalized().primitive_part())


# -- polynomial matrices -------------------------------------------------------


@dataclass(frozen=True)
class PolyMatrix:
    """Row-major matrix of polynomials from one shared ring."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix dimensions")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix"
            )
        vars_ = {e.vars for e in self.entries}
        if len(vars_) > 1:
            raise ValueError("matrix entries come from different rings")

    @property
    def variables(self) -> tuple:
        return self.entries[0].vars if self.entries else ()

    def entry(self, i: int, j: int) -> MultiPoly:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "PolyMatrix":
        ents = tuple(self.entry(i, j) for i in row_idx for j in col_idx)
        return PolyMatrix(len(row_idx), len(col_idx), ents)

    def text(self) -> str:
        cells = [[self.entry(i, j).text() for j in range(self.cols)] for i in range(self.rows)]
        widths = [max(len(cells[i][j]) for i in range(self.rows)) for j in range(self.cols)] if self.rows else []
        lines = []
        for r in cells:
            lines.append("[ " + "  ".join(c.rjust(w) for c, w in zip(r, widths)) + " ]")
        return "\n".join(lines)


def determinant(m: PolyMatrix) -> MultiPoly:
    """Exact symbolic determinant via Laplace expansion.

    The expansion is memoized on the set of still-unused columns, which keeps
    the work at O(2^n) polynomial operations instead of n!.
    """
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    vars_ = m.variables
    one = MultiPoly.constant(vars_, 1)
    if n == 0:
        return one
    memo = {}

    def expand(mask: int) -> MultiPoly:
        if mask == 0:
            return one
        cached = memo.get(mask)
        if cached is not None:
            return cached
        row = n - bin(mask).count("1")
        total = MultiPoly.zero(vars_)
        sign = 1
        rest = mask
        while rest:
            low = rest & -rest
            j = low.bit_length() - 1
            e = m.entry(row, j)
            if e.terms:
                piece = e * expand(mask ^ low)
                total = total + piece if sign > 0 else total - piece
            sign = -sign
            rest ^= low
        memo[mask] = total
        return total

    return expand((1 << n) - 1)


def minor_expansion(m: PolyMatrix, size: int) -> Iterator:
    """All (row-set, col-set, determinant) triples of the given minor size.

    Enumeration is lexicographic in (row-set, col-set).  Zero and duplicate
    determinants are NOT filtered here; see :func:`minors` for the pruned
    variant.
    """
    if size < 1:
        raise ValueError("minor size must be at least 1")
    if size > min(m.rows, m.cols):
        return
    for ri in combinations(range(m.rows), size):
        for ci in combinations(range(m.cols), size):
            yield ri, ci, determinant(m.submatrix(ri, ci))


def minors(m: PolyMatrix, size: int) -> list:
    """Nonzero size x size minors, sign-normalized and deduplicated.

    A size exceeding the matrix dimensions yields the empty list (the caller
    may legitimately ask for minors of a matrix that is too small).
    """
    out = []
    seen = set()
    for _, _, det in minor_expansion(m, size):
        if not det.terms:
            continue
        det = det.sign_normalized()
        key = term_key(det)
        if key in seen:
            continue
        seen.add(key)
        out.append(det)
    return out
