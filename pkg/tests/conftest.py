"""Shared fixtures: the two worked quivers and their standard representations.

a2 is the two-vertex quiver 1 --alpha--> 2; star is the four-vertex
inward star with arrows b1: 1->3, b2: 2->3, b3: 4->3.  The reps pinned
here are reused across the rep, nrep, and CLI suites.
"""

import pytest

from nquiver.linalg import FieldSpec
from nquiver.quiver import Quiver
from nquiver.rep import Rep

QQ = FieldSpec.rationals()
GF2 = FieldSpec.gf(2)
GF5 = FieldSpec.gf(5)


@pytest.fixture
def a2() -> Quiver:
    return Quiver(["1", "2"], [("alpha", "1", "2")])


@pytest.fixture
def star() -> Quiver:
    return Quiver(
        ["1", "2", "3", "4"],
        [("b1", "1", "3"), ("b2", "2", "3"), ("b3", "4", "3")],
    )


@pytest.fixture
def v_line(a2) -> Rep:
    """One-dimensional spaces joined by the identity."""
    return Rep(a2, QQ, {"1": 1, "2": 1}, {"alpha": [[1]]})


@pytest.fixture
def w_line0(a2) -> Rep:
    """One-dimensional spaces joined by the zero map."""
    return Rep(a2, QQ, {"1": 1, "2": 1}, {"alpha": [[0]]})


@pytest.fixture
def v_star(star) -> Rep:
    return Rep(
        star,
        QQ,
        {"1": 1, "2": 1, "3": 2, "4": 1},
        {"b1": [[1], [0]], "b2": [[0], [1]], "b3": [[1], [1]]},
    )


@pytest.fixture
def w_star(star) -> Rep:
    return Rep(
        star,
        QQ,
        {"1": 1, "2": 1, "3": 1, "4": 1},
        {"b1": [[1]], "b2": [[1]], "b3": [[1]]},
    )


@pytest.fixture
def vbar(a2, star, v_line, v_star):
    """Two-level object: identity line under the star, all connectors 1."""
    from nquiver.nrep import NRep

    return NRep(
        (a2, star),
        (v_line, v_star),
        [
            {
                ("alpha", "b1"): [[1]],
                ("alpha", "b2"): [[1]],
                ("alpha", "b3"): [[1]],
            }
        ],
    )


@pytest.fixture
def wbar(a2, star, w_line0, w_star):
    """Two-level object: zero-map line under the all-ones star; only the
    (alpha, b3) connector is nonzero."""
    from nquiver.nrep import NRep

    return NRep(
        (a2, star),
        (w_line0, w_star),
        [{("alpha", "b3"): [[1]]}],
    )
