"""Transition functions: push a dimension histogram through one ReLU layer.

phi(g, n', v) sends each count v_n to v_n copies of the clipped collection
value at (min(n, n'), n'). Composing phi over all layers starting from a
single count at the input dimension yields a histogram whose total mass
bounds the number of attainable multi-signatures.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .gamma import GammaCollection, gamma_value
from .histogram import Histogram, add, clip, scale, unit, zero

MultiSignature = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Architecture:
    """Input dimension n0 plus the widths (n1, ..., nL) of the layers."""

    n0: int
    widths: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "widths", tuple(int(w) for w in self.widths))
        if self.n0 < 1:
            raise ValueError("input dimension must be at least 1")
        if not self.widths or any(w < 1 for w in self.widths):
            raise ValueError("layer widths must be at least 1")

    @property
    def depth(self) -> int:
        return len(self.widths)

    def dims(self) -> tuple[int, ...]:
        """All dimensions (n0, n1, ..., nL) in order."""
        return (self.n0,) + self.widths


def phi(g: GammaCollection, n_prime: int, v: Histogram) -> Histogram:
    """Apply the width-n' transition for collection g to histogram v.

    Input indices above n' are clamped to n', mirroring the connector
    semantics; the result has support within [0, n'].
    """
    if n_prime < 1:
        raise ValueError("dimension out of range")
    out = zero()
    for n, count in enumerate(v.counts):
        if count:
            k = min(n, n_prime)
            out = add(out, scale(count, clip(gamma_value(g, k, n_prime), k)))
    return out


def compose_bound_histogram(g: GammaCollection, arch: Architecture) -> Histogram:
    """Fold phi over all layers starting from a unit count at index n0.

    The l1 norm of the result is the histogram-path bound on the number of
    attainable multi-signatures.
    """
    v = unit(arch.n0)
    for width in arch.widths:
        v = phi(g, width, v)
    return v


def dimension_histogram(multisigs: Iterable[MultiSignature], n0: int) -> Histogram:
    """Histogram of min(n0, |s_1|, ..., |s_l|) over a set of multi-signatures.

    The minimum is the dimension cap on the affine image of the region the
    multi-signature labels.
    """
    if n0 < 1:
        raise ValueError("input dimension must be at least 1")
    out = [0] * (n0 + 1)
    for ms in multisigs:
        d = min([n0] + [sum(s) for s in ms])
        out[d] += 1
    return Histogram(tuple(out))
