"""SL2(C) and SU(2) representations, the adjoint action, and the Killing form.

The Lie algebra sl2(C) is the traceless 2x2 matrices, with ordered basis

    H = [[1, 0], [0, -1]],  E = [[0, 1], [0, 0]],  F = [[0, 0], [1, 0]];

su(2) is identified with the pure quaternions with ordered basis (i, j, k).
Adjoint matrices and twisted cochain complexes are always expressed in the
(H, E, F) coordinates; the su(2) basis only enters the Killing form and
reporting of su(2)-flavored Lie vectors.
"""

import numpy as np

from .errors import RelatorViolationError
from .linalg import DEFAULT_TOL
from .torsion import BasedChainComplex
from .words import GroupRingElement, Word, fox_derivative

SL2C = "SL2C"
SU2 = "SU2"

_H = np.array([[1, 0], [0, -1]], dtype=complex)
_E = np.array([[0, 1], [0, 0]], dtype=complex)
_F = np.array([[0, 0], [1, 0]], dtype=complex)
SL2_BASIS = (_H, _E, _F)

# pure quaternions as 2x2 matrices: i, j, k
_QI = np.array([[1j, 0], [0, -1j]], dtype=complex)
_QJ = np.array([[0, 1], [-1, 0]], dtype=complex)
_QK = np.array([[0, 1j], [1j, 0]], dtype=complex)
SU2_BASIS = (_QI, _QJ, _QK)


def is_unimodular(m, tol=DEFAULT_TOL):
    return abs(np.linalg.det(m) - 1.0) <= 1e-8


def is_special_unitary(m, tol=DEFAULT_TOL):
    return (is_unimodular(m, tol)
            and np.linalg.norm(m @ m.conj().T - np.eye(2)) <= 1e-8)


def sl2_inverse(m):
    """Inverse of a determinant-1 matrix, by the adjugate."""
    return np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]], dtype=complex)


def lie_coordinates(m, flavor=SL2C):
    """Coordinates of a traceless matrix in the flavor's ordered basis."""
    m = np.asarray(m, dtype=complex)
    if flavor == SL2C:
        return np.array([m[0, 0], m[0, 1], m[1, 0]], dtype=complex)
    # q = a i + b j + c k  <->  [[ia, b + ic], [-b + ic, -ia]]
    return np.array([m[0, 0] / 1j, m[0, 1].real, m[0, 1].imag], dtype=complex)


def lie_matrix(v, flavor=SL2C):
    basis = SL2_BASIS if flavor == SL2C else SU2_BASIS
    return sum(c * b for c, b in zip(np.asarray(v, dtype=complex), basis))


def adjoint(g, flavor=SL2C):
    """Matrix of Ad_g : v -> g v g^-1 in the flavor's Lie-algebra basis.

    For g in SL2(C) this is a 3x3 matrix of determinant 1; for g in SU(2)
    in the quaternion basis it is the familiar SO(3) rotation.
    """
    g = np.asarray(g, dtype=complex)
    gi = sl2_inverse(g)
    basis = SL2_BASIS if flavor == SL2C else SU2_BASIS
    cols = [lie_coordinates(g @ b @ gi, flavor) for b in basis]
    out = np.column_stack(cols)
    if flavor == SU2:
        out = out.real
    return out


def killing_form(u, v, flavor=SL2C):
    """Killing form in the fixed coordinates.

    sl2(C): for matrices [[a, b], [c, -a]] the value is 8aa' + 4(bc' + cb').
    su(2): -2 times the Euclidean scalar product of quaternion coordinates.
    """
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    if u.shape != (3,) or v.shape != (3,):
        raise ValueError("Lie vectors have three coordinates")
    if flavor == SL2C:
        return complex(8 * u[0] * v[0] + 4 * (u[1] * v[2] + u[2] * v[1]))
    return complex(-2 * np.dot(u, v))


def commutator_trace(x1, x2, x3):
    """tr(ABA^-1B^-1) from (tr A, tr B, tr AB), by the trace identity

    tr[A,B] = -2 - trA trB trAB + tr^2 A + tr^2 B + tr^2 AB.

    Equals 2 exactly when the pair (A, B) is reducible.
    """
    return -2 - x1 * x2 * x3 + x1 ** 2 + x2 ** 2 + x3 ** 2


class Representation:
    """Assignment of unimodular 2x2 matrices to the generators of a
    presentation, acting on words and on the group ring through Ad.

    `images` may be a list (indexed like the presentation generators) or a
    dict keyed by generator name.
    """

    def __init__(self, presentation, images, flavor=SL2C, tol=DEFAULT_TOL,
                 check=True):
        self.presentation = presentation
        if isinstance(images, dict):
            images = [images[name] for name in presentation.generators]
        self.images = [np.asarray(m, dtype=complex) for m in images]
        if len(self.images) != presentation.generator_count:
            raise ValueError("one image per generator required")
        self.flavor = flavor
        self.tol = tol
        self._inverses = [sl2_inverse(m) for m in self.images]
        self._adjoints = {}
        if check:
            for m in self.images:
                if not is_unimodular(m, tol):
                    raise ValueError("generator image is not unimodular")
                if flavor == SU2 and not is_special_unitary(m, tol):
                    raise ValueError("generator image is not in SU(2)")
            self.check_relators()

    def image(self, name):
        return self.images[self.presentation.generators.index(name)]

    def evaluate_word(self, w):
        """Ordered product of generator images along the word."""
        if not isinstance(w, Word):
            w = self.presentation.word(w)
        m = np.eye(2, dtype=complex)
        for g, e in w:
            m = m @ (self.images[g] if e == 1 else self._inverses[g])
        return m

    def adjoint_of_word(self, w):
        if not isinstance(w, Word):
            w = self.presentation.word(w)
        w = w.reduce()
        key = w.letters
        if key not in self._adjoints:
            self._adjoints[key] = adjoint(self.evaluate_word(w))
        return self._adjoints[key]

    def evaluate_group_ring(self, elem):
        """Linear extension of Ad o rho over the group ring: a 3x3 matrix."""
        if not isinstance(elem, GroupRingElement):
            raise TypeError("expected a GroupRingElement")
        out = np.zeros((3, 3), dtype=complex)
        for c, w in elem.terms:
            out = out + c * self.adjoint_of_word(w)
        return out

    def relator_defect(self):
        """Largest ||rho(r) - 1|| over the presentation's relators."""
        worst = 0.0
        for r in self.presentation.relators:
            worst = max(worst, np.linalg.norm(
                self.evaluate_word(r) - np.eye(2)))
        return worst

    def check_relators(self):
        defect = self.relator_defect()
        if defect > self.tol.relator:
            raise RelatorViolationError(
                "representation violates a relator (defect %.3e)" % defect)
        return defect

    def conjugate(self, g):
        """The conjugated representation g rho g^-1."""
        g = np.asarray(g, dtype=complex)
        gi = sl2_inverse(g)
        return Representation(
            self.presentation, [g @ m @ gi for m in self.images],
            flavor=self.flavor, tol=self.tol, check=False)

    def is_irreducible(self, tol=None):
        """True when the image has no Ad-fixed Lie-algebra vector.

        This is the operational criterion the torsion pipeline needs (H^0
        with adjoint coefficients vanishes); it holds for all irreducible
        representations and fails for abelian and binary dihedral ones.
        """
        tol = tol or self.tol
        fixed = fixed_lie_subspace(self.images, tol)
        return fixed.shape[1] == 0


def fixed_lie_subspace(matrices, tol=DEFAULT_TOL):
    """Basis of the common Ad-fixed subspace of sl2 for a family of matrices.

    Zero precisely when the family has no common eigenvector with diagonal
    character squared trivial; for a subgroup this is H^0 with adjoint
    coefficients.
    """
    from .linalg import nullspace
    rows = [adjoint(m) - np.eye(3) for m in matrices]
    if not rows:
        return np.eye(3, dtype=complex)
    return nullspace(np.vstack(rows), tol)


def twisted_cochain_complex(presentation, rep, tol=None):
    """The adjoint-twisted cochain complex of the presentation 2-complex.

    Degrees 0, 1, 2 have dimensions 3, 3g, 3r for g generators and r
    relators.  With the left cocycle convention h(uv) = h(u) + Ad_{rho(u)} h(v),

        d0(v)(g)  = Ad_{rho(g)} v - v,
        d1(h)(r)  = sum_g Phi(dr/dg) h(g),

    where Phi is the Ad o rho extension over the group ring and dr/dg the
    Fox derivative.  d1 o d0 = 0 is the fundamental Fox identity and is
    verified at construction.
    """
    tol = tol or rep.tol
    rep.check_relators()
    ng = presentation.generator_count
    nr = len(presentation.relators)
    d0 = np.zeros((3 * ng, 3), dtype=complex)
    for i in range(ng):
        d0[3 * i:3 * i + 3, :] = adjoint(rep.images[i]) - np.eye(3)
    d1 = np.zeros((3 * nr, 3 * ng), dtype=complex)
    for k, r in enumerate(presentation.relators):
        for i in range(ng):
            block = rep.evaluate_group_ring(fox_derivative(r, i))
            d1[3 * k:3 * k + 3, 3 * i:3 * i + 3] = block
    return BasedChainComplex([3, 3 * ng, 3 * nr], [d0, d1],
                             direction="cochain", tol=tol)


# -- explicit SU(2) elements --------------------------------------------------

def su2_element(trace, axis):
    """The SU(2) element cos(t) + sin(t) (n . (i,j,k)) with 2cos(t) = trace."""
    t = np.arccos(np.clip(trace / 2.0, -1.0, 1.0))
    n = np.asarray(axis, dtype=float)
    n = n / np.linalg.norm(n)
    a = np.cos(t)
    b, c, d = np.sin(t) * n
    return np.array([[a + 1j * b, c + 1j * d], [-c + 1j * d, a - 1j * b]])


def su2_pair(x1, x2, x3):
    """A pair (A, B) in SU(2) with tr A = x1, tr B = x2, tr AB = x3.

    Exists iff the angle between the rotation axes can be chosen to match
    x3; raises ValueError outside the realizable range.
    """
    a1 = np.arccos(np.clip(x1 / 2.0, -1.0, 1.0))
    a2 = np.arccos(np.clip(x2 / 2.0, -1.0, 1.0))
    s = np.sin(a1) * np.sin(a2)
    if s == 0:
        raise ValueError("central element: traces +-2 give no free axis")
    cos_psi = (np.cos(a1) * np.cos(a2) - x3 / 2.0) / s
    if abs(cos_psi) > 1.0 + 1e-12:
        raise ValueError("character (%.4g, %.4g, %.4g) is not SU(2)-realizable"
                         % (x1, x2, x3))
    psi = np.arccos(np.clip(cos_psi, -1.0, 1.0))
    A = su2_element(x1, [1.0, 0.0, 0.0])
    B = su2_element(x2, [np.cos(psi), np.sin(psi), 0.0])
    return A, B
