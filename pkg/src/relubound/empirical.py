"""Exact region enumeration for small ReLU networks with rational weights.

This is the ground-truth side of the package: networks are evaluated in
exact rational arithmetic, a region is nonempty iff an exact LP says so,
and the enumerator walks layers breadth-first keeping one record per
attained signature prefix. Regions where some inactive unit sits exactly
on its hyperplane are lower-dimensional but nonempty, and they count.

Everything is restricted to a box [-R, R]^n0 (default R = 10^6) so every
LP is bounded; regions lying entirely outside the box are missed, which is
an accepted and documented limitation of the counter, not of the bounds.
"""

from __future__ import annotations

import json
import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from . import bound_matrices
from .gamma import BINOMIAL, NAIVE, ZASLAVSKY, GammaCollection
from .histogram import leq, unit
from .simplex import INFEASIBLE, OPTIMAL, solve_max
from .transition import Architecture, dimension_histogram, phi

Signature = tuple[int, ...]
MultiSignature = tuple[Signature, ...]
Vector = tuple[Fraction, ...]
Matrix = tuple[Vector, ...]

DEFAULT_BOX_RADIUS = Fraction(10 ** 6)

# Everything beyond these sizes needs an explicit override; the enumerator
# is exponential in the widths by design.
GUARD_N0 = 3
GUARD_WIDTH = 5
GUARD_DEPTH = 3


def thread_cap() -> int:
    """Worker cap from RELUBOUND_THREADS (default 1, i.e. sequential)."""
    raw = os.environ.get("RELUBOUND_THREADS", "")
    try:
        value = int(raw)
    except ValueError:
        return 1
    return max(1, min(value, 64))


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise ValueError(f"not an exact rational: {x!r}")


@dataclass(frozen=True)
class ReluLayer:
    """One layer: unit i computes max(0, <weights[i], x> + biases[i])."""

    weights: Matrix
    biases: Vector

    def __post_init__(self) -> None:
        w = tuple(tuple(_frac(x) for x in row) for row in self.weights)
        b = tuple(_frac(x) for x in self.biases)
        if not w or len(w) != len(b):
            raise ValueError("weight and bias dimensions disagree")
        if any(len(row) != len(w[0]) for row in w) or not w[0]:
            raise ValueError("ragged weight matrix")
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "biases", b)

    @property
    def in_dim(self) -> int:
        return len(self.weights[0])

    @property
    def out_dim(self) -> int:
        return len(self.weights)


@dataclass(frozen=True)
class ReluNetwork:
    n0: int
    layers: tuple[ReluLayer, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "layers", tuple(self.layers))
        if self.n0 < 1 or not self.layers:
            raise ValueError("network needs an input dimension and a layer")
        expect = self.n0
        for layer in self.layers:
            if layer.in_dim != expect:
                raise ValueError("layer input dimension mismatch")
            expect = layer.out_dim

    @property
    def architecture(self) -> Architecture:
        return Architecture(self.n0, tuple(l.out_dim for l in self.layers))


@dataclass(frozen=True)
class Constraint:
    """Halfspace condition on the input: coeffs.x + offset > 0 if strict,
    else coeffs.x + offset <= 0."""

    coeffs: Vector
    offset: Fraction
    strict: bool


@dataclass(frozen=True)
class RegionRecord:
    """One attained signature prefix with its restriction data.

    ``linear``/``offset`` give the affine map the truncated network
    computes on this region; ``constraints`` are the accumulated halfspace
    conditions in input space; ``witness`` is a point of the region inside
    the box (from the feasibility LP).
    """

    prefix: MultiSignature
    linear: Matrix
    offset: Vector
    constraints: tuple[Constraint, ...]
    witness: Vector


def signature_at(net: ReluNetwork, x: Sequence) -> MultiSignature:
    """Exact forward pass; bit = 1 iff the pre-activation is strictly positive."""
    vec = [_frac(v) for v in x]
    if len(vec) != net.n0:
        raise ValueError("dimension mismatch")
    sigs = []
    for layer in net.layers:
        pre = [
            sum(w * v for w, v in zip(row, vec)) + b
            for row, b in zip(layer.weights, layer.biases)
        ]
        bits = tuple(int(p > 0) for p in pre)
        sigs.append(bits)
        vec = [p if s else Fraction(0) for p, s in zip(pre, bits)]
    return tuple(sigs)


def _region_lp(
    constraints: Sequence[Constraint], box_radius: Fraction, n_vars: int, exact: bool
):
    """Maximize t with strict rows >= t, nonstrict rows <= 0, x in the box, t <= 1.

    Returns (t_star, witness_x) or (None, None) when even the nonstrict
    system is empty inside the box. The region is nonempty iff t_star > 0.
    Variables are shifted by +R to stay nonnegative and t is split in two.
    """
    radius = _frac(box_radius)
    if radius <= 0:
        raise ValueError("box radius must be positive")
    d = n_vars
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for con in constraints:
        shift = radius * sum(con.coeffs)
        if con.strict:
            rows.append([-a for a in con.coeffs] + [Fraction(1), Fraction(-1)])
            rhs.append(con.offset - shift)
        else:
            rows.append(list(con.coeffs) + [Fraction(0), Fraction(0)])
            rhs.append(shift - con.offset)
    for i in range(d):
        row = [Fraction(0)] * (d + 2)
        row[i] = Fraction(1)
        rows.append(row)
        rhs.append(2 * radius)
    rows.append([Fraction(0)] * d + [Fraction(1), Fraction(-1)])
    rhs.append(Fraction(1))
    objective = [Fraction(0)] * d + [Fraction(1), Fraction(-1)]
    status, value, sol = solve_max(objective, rows, rhs, exact=exact)
    if status == INFEASIBLE:
        return None, None
    if status != OPTIMAL:
        raise RuntimeError("region feasibility solve failed")
    witness = tuple(Fraction(sol[i]) - radius for i in range(d))
    return value, witness


def feasible(
    constraints: Sequence[Constraint],
    box_radius=DEFAULT_BOX_RADIUS,
    *,
    exact: bool = True,
) -> bool:
    """True iff some x in the box satisfies all constraints (strict ones strictly)."""
    n_vars = len(constraints[0].coeffs) if constraints else 1
    t_star, _ = _region_lp(constraints, box_radius, n_vars, exact)
    if t_star is None:
        return False
    threshold = 0 if exact else 1e-9
    return t_star > threshold


@dataclass(frozen=True)
class EnumerationResult:
    """Exact enumeration output: per-layer prefix sets plus final records."""

    prefixes_per_layer: tuple[frozenset[MultiSignature], ...]
    records: tuple[RegionRecord, ...]

    @property
    def multisignatures(self) -> frozenset[MultiSignature]:
        return self.prefixes_per_layer[-1]

    @property
    def count(self) -> int:
        return len(self.prefixes_per_layer[-1])


def _check_guard(net: ReluNetwork, allow_large: bool) -> None:
    arch = net.architecture
    if allow_large:
        return
    if (
        arch.n0 > GUARD_N0
        or arch.depth > GUARD_DEPTH
        or any(w > GUARD_WIDTH for w in arch.widths)
    ):
        raise ValueError("instance too large")


def _expand_region(
    region: RegionRecord,
    layer: ReluLayer,
    box_radius: Fraction,
    n0: int,
    exact: bool,
) -> list[RegionRecord]:
    """All feasible extensions of one region by one layer.

    Walks the units depth-first, appending each unit's halfspace before
    descending so infeasible bit prefixes are pruned early.
    """
    funcs = []
    for w_row, b in zip(layer.weights, layer.biases):
        coeffs = tuple(
            sum(w * region.linear[k][j] for k, w in enumerate(w_row))
            for j in range(n0)
        )
        offset = sum(w * c for w, c in zip(w_row, region.offset)) + b
        funcs.append((coeffs, offset))
    out: list[RegionRecord] = []
    width = layer.out_dim

    def descend(i: int, bits: tuple[int, ...], cons: tuple[Constraint, ...]) -> None:
        t_star, witness = _region_lp(cons, box_radius, n0, exact)
        threshold = 0 if exact else 1e-9
        if t_star is None or t_star <= threshold:
            return
        if i == width:
            new_linear = tuple(
                funcs[k][0] if bit else tuple(Fraction(0) for _ in range(n0))
                for k, bit in enumerate(bits)
            )
            new_offset = tuple(
                funcs[k][1] if bit else Fraction(0) for k, bit in enumerate(bits)
            )
            out.append(
                RegionRecord(
                    prefix=region.prefix + (bits,),
                    linear=new_linear,
                    offset=new_offset,
                    constraints=cons,
                    witness=witness,
                )
            )
            return
        coeffs, offset = funcs[i]
        for bit in (0, 1):
            con = Constraint(coeffs, offset, strict=bool(bit))
            descend(i + 1, bits + (bit,), cons + (con,))

    descend(0, (), region.constraints)
    return out


def enumerate_regions(
    net: ReluNetwork,
    box_radius=DEFAULT_BOX_RADIUS,
    *,
    allow_large: bool = False,
    exact: bool = True,
) -> EnumerationResult:
    """Breadth-first exact enumeration of attained multi-signatures in the box."""
    _check_guard(net, allow_large)
    radius = _frac(box_radius)
    n0 = net.n0
    identity = tuple(
        tuple(Fraction(1) if i == j else Fraction(0) for j in range(n0))
        for i in range(n0)
    )
    root = RegionRecord(
        prefix=(),
        linear=identity,
        offset=tuple(Fraction(0) for _ in range(n0)),
        constraints=(),
        witness=tuple(Fraction(0) for _ in range(n0)),
    )
    regions = [root]
    layer_sets: list[frozenset[MultiSignature]] = []
    workers = thread_cap()
    for layer in net.layers:
        if workers > 1 and len(regions) > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                chunks = list(
                    pool.map(
                        lambda r: _expand_region(r, layer, radius, n0, exact),
                        regions,
                    )
                )
        else:
            chunks = [_expand_region(r, layer, radius, n0, exact) for r in regions]
        regions = [rec for chunk in chunks for rec in chunk]
        layer_sets.append(frozenset(r.prefix for r in regions))
    return EnumerationResult(tuple(layer_sets), tuple(regions))


def exact_count(
    net: ReluNetwork,
    box_radius=DEFAULT_BOX_RADIUS,
    *,
    allow_large: bool = False,
    exact: bool = True,
) -> tuple[int, frozenset[MultiSignature]]:
    """Number of attained multi-signatures in the box, plus the set itself."""
    result = enumerate_regions(
        net, box_radius, allow_large=allow_large, exact=exact
    )
    return result.count, result.multisignatures


def sample_count(
    net: ReluNetwork,
    samples: int,
    box_radius=DEFAULT_BOX_RADIUS,
    seed: int = 0,
) -> int:
    """Distinct multi-signatures among uniform rational samples from the box.

    Deterministic for a given seed; always a lower bound on the exact count.
    """
    if samples < 1:
        raise ValueError("need at least one sample")
    radius = _frac(box_radius)
    rng = random.Random(seed)
    grid = 10 ** 9
    seen: set[MultiSignature] = set()
    for _ in range(samples):
        x = tuple(
            radius * Fraction(rng.randint(-grid, grid), grid) for _ in range(net.n0)
        )
        seen.add(signature_at(net, x))
    return len(seen)


def random_network(arch: Architecture, seed: int, scale: int = 1000) -> ReluNetwork:
    """Network with weights and biases p/scale, p uniform in [-scale, scale]."""
    if scale < 1:
        raise ValueError("scale must be at least 1")
    rng = random.Random(seed)
    layers = []
    fan_in = arch.n0
    for width in arch.widths:
        weights = tuple(
            tuple(Fraction(rng.randint(-scale, scale), scale) for _ in range(fan_in))
            for _ in range(width)
        )
        biases = tuple(
            Fraction(rng.randint(-scale, scale), scale) for _ in range(width)
        )
        layers.append(ReluLayer(weights, biases))
        fan_in = width
    return ReluNetwork(arch.n0, tuple(layers))


@dataclass(frozen=True)
class VerificationReport:
    """Exact count against the bound chain, with per-layer recursion checks."""

    architecture: Architecture
    exact: int
    binomial: int
    zaslavsky: int
    naive: int
    chain_ok: bool
    recursion_ok: bool
    recursion_detail: tuple[tuple[str, int, bool], ...]  # (gamma, layer, ok)

    def values(self) -> tuple[int, int, int, int]:
        return (self.exact, self.binomial, self.zaslavsky, self.naive)

    def to_dict(self) -> dict:
        return {
            "n0": self.architecture.n0,
            "widths": list(self.architecture.widths),
            "exact_count": self.exact,
            "binomial_bound": self.binomial,
            "zaslavsky_bound": self.zaslavsky,
            "naive_bound": self.naive,
            "chain_ok": self.chain_ok,
            "recursion_ok": self.recursion_ok,
            "recursion_detail": [
                {"gamma": g, "layer": l, "ok": ok}
                for (g, l, ok) in self.recursion_detail
            ],
        }


def recursion_checks(
    net: ReluNetwork,
    enumeration: EnumerationResult,
    collections: Iterable[GammaCollection] = (NAIVE, ZASLAVSKY, BINOMIAL),
) -> tuple[tuple[str, int, bool], ...]:
    """Layer-by-layer dominance of enumerated dimension histograms.

    For each collection g: the layer-1 dimension histogram must be
    dominated by phi(g, n1, e_{n0}), and each later layer's by phi applied
    to the previous layer's.
    """
    arch = net.architecture
    detail = []
    for g in collections:
        prev = unit(arch.n0)
        for l, width in enumerate(arch.widths, start=1):
            bound_hist = phi(g, width, prev)
            observed = dimension_histogram(enumeration.prefixes_per_layer[l - 1], arch.n0)
            detail.append((g.name, l, leq(observed, bound_hist)))
            prev = observed
    return tuple(detail)


def verify_network(
    net: ReluNetwork,
    box_radius=DEFAULT_BOX_RADIUS,
    *,
    allow_large: bool = False,
    exact: bool = True,
) -> VerificationReport:
    """Enumerate, bound, and check the whole chain for one network."""
    enumeration = enumerate_regions(
        net, box_radius, allow_large=allow_large, exact=exact
    )
    arch = net.architecture
    exact = enumeration.count
    binom = bound_matrices.evaluate_bound(BINOMIAL, arch)
    zasl = bound_matrices.evaluate_bound(ZASLAVSKY, arch)
    naive = bound_matrices.naive_bound(arch)
    detail = recursion_checks(net, enumeration)
    return VerificationReport(
        architecture=arch,
        exact=exact,
        binomial=binom,
        zaslavsky=zasl,
        naive=naive,
        chain_ok=exact <= binom <= zasl <= naive,
        recursion_ok=all(ok for (_, _, ok) in detail),
        recursion_detail=detail,
    )


def network_to_dict(net: ReluNetwork) -> dict:
    return {
        "n0": net.n0,
        "layers": [
            {
                "W": [[str(w) for w in row] for row in layer.weights],
                "b": [str(b) for b in layer.biases],
            }
            for layer in net.layers
        ],
    }


def network_from_dict(data: Mapping) -> ReluNetwork:
    layers = tuple(
        ReluLayer(
            tuple(tuple(_frac(w) for w in row) for row in entry["W"]),
            tuple(_frac(b) for b in entry["b"]),
        )
        for entry in data["layers"]
    )
    return ReluNetwork(int(data["n0"]), layers)


def save_network(net: ReluNetwork, path: str | Path) -> None:
    Path(path).write_text(
        json.dumps(network_to_dict(net), indent=2, sort_keys=True) + "\n",
        encoding="utf-8",
    )


def load_network(path: str | Path) -> ReluNetwork:
    return network_from_dict(json.loads(Path(path).read_text(encoding="utf-8")))
