"""Bound matrices, connector matrices, and the closed-form reference bounds.

The matrix path evaluates the same layer-by-layer bound as the histogram
path: columns of a bound matrix are clipped collection values, connector
matrices adapt vector length between widths, and the bound is the l1 norm
of the matrices' action on a basis vector. The closed-form bounds from the
literature (naive product, per-layer binomial-sum product, the recursive
double sum, a Stirling weakening, and a constructive lower bound) are
implemented next to it for comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .gamma import GammaCollection
from .histogram import unit
from .transition import Architecture, phi

Row = tuple[int, ...]


@dataclass(frozen=True)
class BoundMatrix:
    """(n'+1) x (n'+1) upper-triangular matrix of exact nonnegative ints.

    Column j (0-indexed) holds the clipped collection value for input
    dimension j; the diagonal entries are the eigenvalues.
    """

    n_prime: int
    rows: tuple[Row, ...]


@dataclass(frozen=True)
class ConnectorMatrix:
    """(n'+1) x (n+1) 0/1 matrix folding indices above n' down onto n'."""

    n: int
    n_prime: int
    rows: tuple[Row, ...]


def build_bound_matrix(g: GammaCollection, n_prime: int) -> BoundMatrix:
    if n_prime < 1:
        raise ValueError("dimension out of range")
    size = n_prime + 1
    cols = [phi(g, n_prime, unit(j)) for j in range(size)]
    rows = tuple(
        tuple(cols[j].entry(i) for j in range(size)) for i in range(size)
    )
    return BoundMatrix(n_prime, rows)


def build_connector(n: int, n_prime: int) -> ConnectorMatrix:
    if n < 0 or n_prime < 0:
        raise ValueError("dimension out of range")
    rows = tuple(
        tuple(1 if i == min(j, n_prime) else 0 for j in range(n + 1))
        for i in range(n_prime + 1)
    )
    return ConnectorMatrix(n, n_prime, rows)


def _connect(vec: list[int], n_prime: int) -> list[int]:
    # Action of the connector matrix without materializing it.
    out = [0] * (n_prime + 1)
    for j, val in enumerate(vec):
        if val:
            out[min(j, n_prime)] += val
    return out


def _apply(rows: Sequence[Row], vec: Sequence[int]) -> list[int]:
    return [sum(r[j] * vec[j] for j in range(len(vec)) if vec[j]) for r in rows]


def evaluate_bound(g: GammaCollection, arch: Architecture) -> int:
    """l1 norm of B_{nL} M ... B_{n1} M applied to the basis vector e_{n0+1}.

    Computed right to left as matrix-vector actions; full matrix products
    are never formed.
    """
    vec = [0] * (arch.n0 + 1)
    vec[arch.n0] = 1
    cache: dict[int, BoundMatrix] = {}
    for width in arch.widths:
        vec = _connect(vec, width)
        if width not in cache:
            cache[width] = build_bound_matrix(g, width)
        vec = _apply(cache[width].rows, vec)
    return sum(vec)


def naive_bound(arch: Architecture) -> int:
    """2 to the total number of units: every unit on or off independently."""
    return 2 ** sum(arch.widths)


def montufar_bound(arch: Architecture) -> int:
    """Product over layers of sum_{j<=min(n0..n_{l-1})} C(n_l, j)."""
    dims = arch.dims()
    out = 1
    for l in range(1, len(dims)):
        m = min(dims[:l])
        out *= sum(math.comb(dims[l], j) for j in range(m + 1))
    return out


def serra_sum(arch: Architecture) -> int:
    """Recursive double-sum bound over per-layer activation counts.

    Enumerates tuples (j_1..j_L) with j_l <= min(n0, n_1 - j_1, ...,
    n_{l-1} - j_{l-1}, n_l) by depth-first search carrying the running
    minimum, summing the product of C(n_l, j_l).
    """
    widths = arch.widths
    depth = len(widths)
    total = 0

    def rec(l: int, run_min: int, prod: int) -> None:
        nonlocal total
        if l == depth:
            total += prod
            return
        w = widths[l]
        for j in range(min(run_min, w) + 1):
            rec(l + 1, min(run_min, w - j), prod * math.comb(w, j))

    rec(0, arch.n0, 1)
    return total


def stirling_weakened(n: int, L: int) -> float:
    """Stirling-weakened closed form 2^(Ln) (1/2 + 1/(2 sqrt(pi n)))^(L/2) sqrt(2).

    The only floating-point quantity in the package; approximate by
    construction and flagged as such wherever it is printed.
    """
    if n < 1 or L < 1:
        raise ValueError("dimension out of range")
    return 2.0 ** (L * n) * (0.5 + 1.0 / (2.0 * math.sqrt(math.pi * n))) ** (L / 2) * math.sqrt(2.0)


def montufar_lower_bound(arch: Architecture) -> int:
    """Constructive lower bound: prod_{l<L} floor(n_l/n0)^n0 times sum_{j<=n0} C(n_L, j)."""
    widths = arch.widths
    prod = 1
    for w in widths[:-1]:
        prod *= (w // arch.n0) ** arch.n0
    return prod * sum(math.comb(widths[-1], j) for j in range(arch.n0 + 1))


def width_increases_somewhere(arch: Architecture) -> bool:
    """True iff some layer is wider than its input (n_{l-1} < n_l).

    Exactly when this holds, the per-layer product bound beats the naive
    bound strictly.
    """
    dims = arch.dims()
    return any(dims[l - 1] < dims[l] for l in range(1, len(dims)))


def narrow_layer_somewhere(arch: Architecture) -> bool:
    """True iff n_l < min(n0..n_l) + min(n0..n_{l+1}) for some 0 < l < L.

    Exactly when this holds, the matrix-path bound with the binomial
    collection beats the per-layer product bound strictly.
    """
    dims = arch.dims()
    for l in range(1, len(dims) - 1):
        if dims[l] < min(dims[: l + 1]) + min(dims[: l + 2]):
            return True
    return False


def format_matrix(rows: Sequence[Sequence[object]]) -> str:
    """Right-aligned grid of the entries' str() forms, one row per line."""
    cells = [[str(x) for x in row] for row in rows]
    if not cells:
        return ""
    widths = [max(len(cells[i][j]) for i in range(len(cells))) for j in range(len(cells[0]))]
    return "\n".join(
        "  ".join(cell.rjust(w) for cell, w in zip(row, widths)) for row in cells
    )


def matrix_to_json(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row-major nested lists, entries as exact ints."""
    return [list(row) for row in rows]
