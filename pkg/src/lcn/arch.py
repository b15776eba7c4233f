"""Architectures of 1D linear convolutional networks and their filters.

An architecture is a tuple of per-layer filter sizes and strides.  Composing
the layers gives a single convolution whose end-to-end filter has size
``k = k_1 + sum_{l>=2} (k_l - 1) * S_l`` where ``S_l`` is the product of the
strides before layer ``l``.  The last stride never influences the end-to-end
filter, so it is stored as 1.

Filters are plain sequences (ints, Fractions, floats or complex); all the
helpers here are generic over the entry type so exact and numeric callers
share one code path.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Sequence

from .polyring import MultiPoly


@dataclass(frozen=True)
class Architecture:
    """Filter sizes and strides of a 1D linear convolutional network."""

    filter_sizes: tuple
    strides: tuple

    def __post_init__(self):
        ks = tuple(int(v) for v in self.filter_sizes)
        ss = tuple(int(v) for v in self.strides)
        if not ks:
            raise ValueError("architecture needs at least one layer")
        if len(ks) != len(ss):
            raise ValueError(
                f"{len(ks)} filter sizes but {len(ss)} strides"
            )
        if any(v < 1 for v in ks) or any(v < 1 for v in ss):
            raise ValueError("filter sizes and strides must be positive")
        # the final stride has no effect on the end-to-end filter
        ss = ss[:-1] + (1,)
        object.__setattr__(self, "filter_sizes", ks)
        object.__setattr__(self, "strides", ss)

    @classmethod
    def parse(cls, sizes: str, strides: str) -> "Architecture":
        """Build from comma-separated literals, e.g. ``("3,2,2", "2,2,1")``."""
        return cls(
            tuple(int(v) for v in sizes.split(",")),
            tuple(int(v) for v in strides.split(",")),
        )

    @property
    def depth(self) -> int:
        return len(self.filter_sizes)

    @property
    def dilations(self) -> tuple:
        """S_l = s_1 * ... * s_{l-1}, the monomial spacing of layer l."""
        out = []
        acc = 1
        for s in self.strides:
            out.append(acc)
            acc *= s
        return tuple(out)

    @property
    def out_size(self) -> int:
        """Size of the end-to-end filter."""
        ks, dil = self.filter_sizes, self.dilations
        return ks[0] + sum((k - 1) * d for k, d in zip(ks[1:], dil[1:]))

    @property
    def stride_product(self) -> int:
        return prod(self.strides)

    @property
    def is_reduced(self) -> bool:
        """All filter sizes > 1 and all strides before the last layer > 1."""
        return all(k > 1 for k in self.filter_sizes) and all(
            s > 1 for s in self.strides[:-1]
        )

    def describe(self) -> str:
        return f"k={','.join(map(str, self.filter_sizes))} s={','.join(map(str, self.strides))}"


def reduce_arch(arch: Architecture) -> Architecture:
    """Merge away unit strides and unit filter sizes.

    Layers ``i`` and ``i+1`` merge to filter size ``k_i + s_i (k_{i+1} - 1)``
    and stride ``s_i * s_{i+1}`` whenever ``s_i = 1`` or ``k_i = 1``; a
    trailing size-1 layer is absorbed into its predecessor.  The result is
    reduced or a single layer, and the end-to-end filter size is unchanged.
    Every filter realizable by the input architecture is realizable by the
    reduced one.
    """
    ks = list(arch.filter_sizes)
    ss = list(arch.strides)
    out_size = arch.out_size

    def merge(i: int) -> None:
        ks[i] = ks[i] + ss[i] * (ks[i + 1] - 1)
        ss[i] = ss[i] * ss[i + 1]
        del ks[i + 1], ss[i + 1]

    while len(ks) > 1:
        for i in range(len(ks) - 1):
            if ss[i] == 1 or ks[i] == 1:
                merge(i)
                break
        else:
            if ks[-1] == 1:
                merge(len(ks) - 2)
            else:
                break
    reduced = Architecture(tuple(ks), tuple(ss))
    assert reduced.out_size == out_size, "layer merging must preserve the filter size"
    return reduced


def pi_s(w: Sequence, stride: int) -> MultiPoly:
    """Homogeneous bivariate polynomial of a filter at a given stride.

    ``w`` of size k maps to ``sum_j w[j] x^{s(k-1-j)} y^{s j}``; the map is
    linear and injective for fixed (k, s).
    """
    if stride < 1:
        raise ValueError("stride must be positive")
    k = len(w)
    return MultiPoly(
        ("x", "y"),
        {(stride * (k - 1 - j), stride * j): w[j] for j in range(k)},
    )


def _convolve(a: Sequence, b: Sequence) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, av in enumerate(a):
        if not av:
            continue
        for j, bv in enumerate(b):
            if bv:
                out[i + j] = out[i + j] + av * bv
    return out


def _spaced(w: Sequence, gap: int) -> list:
    out = [0] * ((len(w) - 1) * gap + 1)
    for j, v in enumerate(w):
        out[j * gap] = v
    return out


def compose_filters(arch: Architecture, layer_filters: Sequence[Sequence]) -> tuple:
    """End-to-end filter of the composed convolution.

    Index ``j`` of the result is the coefficient of ``x^{k-1-j} y^j`` in the
    product of the per-layer polynomials, i.e. the coefficient list and the
    filter agree entry-wise.
    """
    if len(layer_filters) != arch.depth:
        raise ValueError(f"{arch.depth} layers but {len(layer_filters)} filters")
    for w, k in zip(layer_filters, arch.filter_sizes):
        if len(w) != k:
            raise ValueError(f"layer filter of length {len(w)}, expected {k}")
    acc = list(layer_filters[0])
    for w, gap in zip(layer_filters[1:], arch.dilations[1:]):
        acc = _convolve(acc, _spaced(w, gap))
    assert len(acc) == arch.out_size
    return tuple(acc)


@dataclass(frozen=True)
class ConvMatrix:
    """Dense matrix of a strided convolution.

    Entry (i, j) is ``w[j - i*s]`` when that index lands inside the filter,
    else 0; the input dimension satisfies ``d_in = k + (d_out - 1) * s``.
    """

    filter: tuple
    stride: int
    d_out: int
    d_in: int
    matrix: tuple

    def as_lists(self) -> list:
        return [list(r) for r in self.matrix]


def conv_matrix(w: Sequence, stride: int, d_out: int) -> ConvMatrix:
    if d_out < 1:
        raise ValueError("d_out must be positive")
    if stride < 1:
        raise ValueError("stride must be positive")
    k = len(w)
    d_in = k + (d_out - 1) * stride
    rows = []
    for i in range(d_out):
        row = [0] * d_in
        for j in range(k):
            row[i * stride + j] = w[j]
        rows.append(tuple(row))
    return ConvMatrix(tuple(w), stride, d_out, d_in, tuple(rows))


def apply_filter(w: Sequence, stride: int, x: Sequence, d_out: int) -> list:
    """Apply the convolution to an input vector (or matrix given row-wise)."""
    k = len(w)
    out = []
    for i in range(d_out):
        acc = None
        for j in range(k):
            contrib = w[j] * x[i * stride + j]
            acc = contrib if acc is None else acc + contrib
        out.append(acc)
    return out


def sample_neuromanifold(arch: Architecture, rng_seed: int):
    """Random rational layer filters together with their composed filter.

    Entries are Fractions with numerator uniform in [-10, 10] and denominator
    uniform in [1, 10], so membership checks downstream stay exact.  The same
    seed always returns the same sample.
    """
    rng = random.Random(rng_seed)
    layers = [
        tuple(
            Fraction(rng.randint(-10, 10), rng.randint(1, 10)) for _ in range(k)
        )
        for k in arch.filter_sizes
    ]
    return layers, compose_filters(arch, layers)
