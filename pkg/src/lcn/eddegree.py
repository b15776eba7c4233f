"""Generic Euclidean distance degree of rank-one tensor varieties.

For filter sizes ``k_1, ..., k_L`` (all at least 2) the count of complex
critical points of a generically weighted squared distance on the variety of
rank-one ``k_1 x ... x k_L`` tensors is

    C_k = sum_{t=0}^{kbar} (-1)^t (2^{kbar+1-t} - 1) (kbar - t)!
          sum_{i_1+...+i_L = t, i_j <= n_j}
              prod_j  binom(n_j + 1, i_j) / (n_j - i_j)!

with ``n_j = k_j - 1`` and ``kbar = sum n_j`` (the dimension of the
projectivized variety).  The count depends only on the multiset of filter
sizes; strides play no role.  The same number governs the training loss of
the matching convolutional network, which is what the rest of the package
checks numerically.

Everything here is exact big-integer arithmetic; each ``t``-term is an
integer because ``(kbar - t)! / prod (n_j - i_j)!`` is a multinomial
coefficient.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Iterator, Sequence

from .arch import Architecture, reduce_arch


def _check_sizes(filter_sizes: Sequence[int]) -> tuple:
    sizes = tuple(int(v) for v in filter_sizes)
    if not sizes:
        raise ValueError("need at least one filter size")
    if any(v < 2 for v in sizes):
        raise ValueError(f"filter sizes must be at least 2, got {sizes}")
    return sizes


def _bounded_compositions(total: int, bounds: Sequence[int]) -> Iterator[tuple]:
    """All tuples with entry j in [0, bounds[j]] summing to ``total``."""
    n = len(bounds)

    def rec(j: int, remaining: int, acc: list):
        if j == n - 1:
            if remaining <= bounds[j]:
                yield tuple(acc + [remaining])
            return
        cap = sum(bounds[j + 1 :])
        lo = max(0, remaining - cap)
        for i in range(lo, min(bounds[j], remaining) + 1):
            yield from rec(j + 1, remaining - i, acc + [i])

    yield from rec(0, total, [])


def generic_ed_degree(filter_sizes: Sequence[int]) -> int:
    """Exact critical-point count for the given multiset of filter sizes."""
    sizes = _check_sizes(filter_sizes)
    dims = tuple(k - 1 for k in sizes)
    kbar = sum(dims)
    total = 0
    for t in range(kbar + 1):
        inner = Fraction(0)
        for combo in _bounded_compositions(t, dims):
            num = 1
            den = 1
            for n_j, i_j in zip(dims, combo):
                num *= comb(n_j + 1, i_j)
                den *= factorial(n_j - i_j)
            inner += Fraction(num, den)
        term = inner * factorial(kbar - t)
        assert term.denominator == 1, "each t-term must clear its denominators"
        total += (-1) ** t * (2 ** (kbar + 1 - t) - 1) * term.numerator
    return total


@dataclass(frozen=True)
class EDReport:
    """Value of the count together with the inputs that determine it."""

    filter_sizes: tuple
    k_bar: int
    value: int


def ed_report(filter_sizes: Sequence[int]) -> EDReport:
    sizes = _check_sizes(filter_sizes)
    return EDReport(sizes, sum(k - 1 for k in sizes), generic_ed_degree(sizes))


def arch_ed_degree(arch: Architecture) -> int:
    """Critical-point count of an architecture (strides are irrelevant)."""
    reduced = reduce_arch(arch)
    return generic_ed_degree(reduced.filter_sizes)


def fully_connected_count(m: int, n: int, r: int) -> int:
    """Critical points when training a fully connected linear network.

    The bounded-rank matrix variety has exactly ``binom(min(m, n), r)``
    critical points for the (possibly weighted) Frobenius distance, far
    fewer than the convolutional count with the same parameter budget.
    """
    if not 1 <= r <= min(m, n):
        raise ValueError(f"rank {r} out of range for a {m}x{n} matrix")
    return comb(min(m, n), r)


@dataclass(frozen=True)
class MergeNode:
    """One node of the layer-merge tree, with children for each merge."""

    report: EDReport
    children: tuple

    @property
    def value(self) -> int:
        return self.report.value

    @property
    def filter_sizes(self) -> tuple:
        return self.report.filter_sizes


def merge_tree(filter_sizes: Sequence[int]) -> MergeNode:
    """Tree of counts under dimension-preserving pairwise layer merges.

    Merging sizes ``k_i, k_j -> k_i + k_j - 1`` keeps ``kbar`` fixed.
    Children enumerate the distinct merged multisets (the merged size takes
    the first slot of the pair); recursion stops at two layers.
    """
    sizes = _check_sizes(filter_sizes)
    if len(sizes) < 2:
        raise ValueError("merge tree needs at least two layers")
    children = []
    if len(sizes) > 2:
        seen = set()
        for i in range(len(sizes)):
            for j in range(i + 1, len(sizes)):
                merged = (
                    sizes[:i]
                    + (sizes[i] + sizes[j] - 1,)
                    + sizes[i + 1 : j]
                    + sizes[j + 1 :]
                )
                key = tuple(sorted(merged))
                if key in seen:
                    continue
                seen.add(key)
                children.append(merge_tree(merged))
    return MergeNode(ed_report(sizes), tuple(children))


def tree_lines(node: MergeNode, indent: int = 0) -> list:
    label = ",".join(map(str, node.filter_sizes))
    lines = [f"{'  ' * indent}C[{label}] = {node.value}"]
    for child in node.children:
        lines.extend(tree_lines(child, indent + 1))
    return lines


def two_layer_table(max_k1: int = 9, max_k2: int = 9) -> list:
    """Rows ``k1 = 2..max_k1`` of counts for two-layer networks."""
    return [
        [generic_ed_degree((k1, k2)) for k2 in range(2, max_k2 + 1)]
        for k1 in range(2, max_k1 + 1)
    ]
