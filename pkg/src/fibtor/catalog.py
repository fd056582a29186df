"""Built-in knots.

Two genus-one fibered knots run the full pipeline (cohomology plus the
trace-coordinate Jacobian cross-check):

  trefoil       monodromy a -> a b^-1 a^-1, b -> a b;   trace map (x2, x3, x1)
  figure_eight  monodromy a -> a b, b -> b a b;         trace map
                (x3, x2 x3 - x1, x2 x3^2 - x1 x3 - x2)

Torus knots are served by the closed-form value only (their fibered
presentations have genus (p-1)(q-1)/2 and are out of catalog scope beyond
the trefoil = torus(2, 3)).
"""

import math

import numpy as np

from .errors import InvalidInputError
from .fibered import FiberedKnot, TraceCoordMap, lift_character_to_rep, torus_closed_form
from .rep import SL2C, sl2_inverse


def trefoil():
    return FiberedKnot(
        "trefoil", 1, ["a", "b"],
        {"a": "a B A", "b": "a b"},
        trace_map=TraceCoordMap(["x2", "x3", "x1"]),
    )


def figure_eight():
    return FiberedKnot(
        "figure_eight", 1, ["a", "b"],
        {"a": "a b", "b": "b a b"},
        trace_map=TraceCoordMap(["x3", "x2*x3 - x1", "x2*x3**2 - x1*x3 - x2"]),
    )


class TorusKnotEntry:
    """Closed-form-only catalog entry for the (p, q) torus knot."""

    def __init__(self, p=None, q=None):
        self.name = "torus" if p is None else "torus(%d,%d)" % (p, q)
        self.p = p
        self.q = q
        self.genus = None if p is None else (p - 1) * (q - 1) // 2

    def value(self, a, b):
        if self.p is None:
            raise InvalidInputError("torus entry needs (p, q); use torus(p,q)")
        return torus_closed_form(self.p, self.q, a, b)


class CatalogEntry:
    def __init__(self, name, knot=None, torus=None):
        self.name = name
        self.knot = knot
        self.torus = torus

    @property
    def genus(self):
        return self.knot.genus if self.knot is not None else self.torus.genus

    @property
    def methods(self):
        if self.torus is not None:
            return ["closed_form"]
        out = ["cohomology"]
        if self.knot.trace_map is not None:
            out.append("jacobian")
        return out


def catalog():
    """All built-in entries."""
    return [
        CatalogEntry("trefoil", knot=trefoil()),
        CatalogEntry("figure_eight", knot=figure_eight()),
        CatalogEntry("torus", torus=TorusKnotEntry()),
    ]


def get_entry(name):
    name = name.strip()
    if name.startswith("torus(") and name.endswith(")"):
        try:
            p, q = (int(v) for v in name[len("torus("):-1].split(","))
        except ValueError as exc:
            raise InvalidInputError("bad torus knot spec %r" % name) from exc
        return CatalogEntry(name, torus=TorusKnotEntry(p, q))
    for entry in catalog():
        if entry.name == name:
            return entry
    raise InvalidInputError("unknown knot %r (try: %s)" % (
        name, ", ".join(e.name for e in catalog())))


# -- the figure-eight holonomy lifts -------------------------------------------
#
# The discrete faithful representation of the figure-eight knot restricts on
# the fiber to the character (x1, x2, x3) = ((3 + i sqrt 3)/2, (3 - i sqrt 3)/2,
# (3 + i sqrt 3)/2): the unique fixed-locus point (up to complex conjugation)
# where the meridian intertwiner is parabolic.  The two lifts differ by the
# sign of the meridian image, which is normalized here to [[1, 1], [0, 1]]
# and [[-1, 1], [0, -1]] respectively.

HOLONOMY_FIBER_CHARACTER = (
    complex(1.5, 0.5 * math.sqrt(3.0)),
    complex(1.5, -0.5 * math.sqrt(3.0)),
    complex(1.5, 0.5 * math.sqrt(3.0)),
)


def holonomy_representation(sign=1, tol=None):
    """A lift of the figure-eight holonomy in the fibered presentation.

    The meridian image is [[1, 1], [0, 1]] for sign +1 and [[-1, 1], [0, -1]]
    for sign -1 (the two lifts of the same PSL2(C) representation).  The
    longitude, i.e. the fiber boundary [a, b], evaluates to
    [[-1, -2i sqrt 3], [0, -1]]: trace -2.
    """
    fk = figure_eight()
    rep = lift_character_to_rep(fk, HOLONOMY_FIBER_CHARACTER, flavor=SL2C,
                                meridian_sign=1, tol=tol)
    T = rep.image(fk.meridian)
    # move the fixed line of the parabolic T to the first coordinate axis
    N = T - np.eye(2)
    _, _, vh = np.linalg.svd(N)
    u = vh[-1].conj()
    w, *_ = np.linalg.lstsq(N, u, rcond=None)
    P = np.column_stack([u, w])
    P = P / np.sqrt(np.linalg.det(P))
    rep = rep.conjugate(sl2_inverse(P))
    # scale the off-diagonal entry to exactly 1 with diag(s, 1/s)
    c = rep.image(fk.meridian)[0, 1]
    s = c ** (-0.5)
    rep = rep.conjugate(np.diag([s, 1.0 / s]))
    if sign == -1:
        images = {g: rep.image(g) for g in fk.fiber_generators}
        images[fk.meridian] = -rep.image(fk.meridian)
        # conjugate by diag(i, -i) to flip the off-diagonal sign back to +1
        from .rep import Representation
        rep = Representation(fk.presentation(), images, flavor=SL2C,
                             tol=rep.tol).conjugate(np.diag([1j, -1j]))
    return fk, rep
