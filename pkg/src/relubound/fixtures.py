"""Hand-built networks with known exact region counts, used in tests and docs.

The triangle layer reproduces a classic three-hyperplane arrangement whose
unit normals involve 1/sqrt(2). Exact arithmetic needs rationals, so the
coefficient is replaced by 29/41 (~0.7073). Scaling one unit's weights and
bias by a common positive constant never changes the sign of its
pre-activation, hence never changes any signature, so the substituted
network attains exactly the same signature set and the region count 7 is
preserved.
"""

from __future__ import annotations

from fractions import Fraction

from .empirical import ReluLayer, ReluNetwork

SQRT_HALF = Fraction(29, 41)


def triangle_network(third_unit_up: bool = False) -> ReluNetwork:
    """Single layer of three units whose zero sets bound a triangle.

    The first two units activate above the lines x + y = 1 and -x + y = 1.
    By default the third activates below y = 0, which leaves the
    all-active signature unattained (7 of the 8 signatures occur). With
    ``third_unit_up`` the third unit activates above y = 0 instead; the
    count is still 7 but the attained set includes the all-active
    signature.
    """
    c = SQRT_HALF
    third = Fraction(1) if third_unit_up else Fraction(-1)
    layer = ReluLayer(
        weights=((c, c), (-c, c), (Fraction(0), third)),
        biases=(-c, -c, Fraction(0)),
    )
    return ReluNetwork(2, (layer,))


TRIANGLE_REGION_COUNT = 7

# Attained signature sets for both variants, frozen from a grid sweep of
# the arrangement (each signature is one bit per unit).
TRIANGLE_SIGNATURES_DOWN = frozenset(
    {
        (0, 0, 0),
        (0, 0, 1),
        (0, 1, 0),
        (0, 1, 1),
        (1, 0, 0),
        (1, 0, 1),
        (1, 1, 0),
    }
)
TRIANGLE_SIGNATURES_UP = frozenset(
    {
        (0, 0, 0),
        (0, 0, 1),
        (0, 1, 0),
        (1, 0, 0),
        (1, 0, 1),
        (0, 1, 1),
        (1, 1, 1),
    }
)
