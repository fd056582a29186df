"""Reidemeister torsion of finite based (and homology based) chain complexes.

A complex C_* over R or C with reference bases c^i for the chain groups and
h^i for the homology carries the torsion

    tor(C_*) = prod_i [ d_{i+1}(b^{i+1})  h~^i  b^i / c^i ] ^ ((-1)^(i+1)),

where b^i is any family in C_i whose image under d_i is a basis of the
boundary space B_{i-1}, and h~^i is any lift of h^i into the cycle space
Z_i.  The value does not depend on the choices of b^i and h~^i; the
sign-determined refinement multiplies by (-1)^{|C_*|} with

    |C_*| = sum_k alpha_k beta_k,
    alpha_k = sum_{j<=k} dim C_j  (mod 2),   beta_k = sum_{j<=k} dim H_j (mod 2).

Complexes may be stored homologically (differential lowers degree) or
cohomologically (differential raises degree); they are normalized to the
homological convention, reversing at the complex's own top degree, before
any torsion or sign bookkeeping happens.
"""

import json

import numpy as np

from .linalg import (
    DEFAULT_TOL,
    column_space,
    nullspace,
    numerical_rank,
    pivot_columns,
    solve_in_span,
)


class ChainComplexError(ValueError):
    """Malformed complex: shape mismatch, d.d != 0, bad homology basis."""


def change_of_basis_det(a, b):
    """Determinant [a/b] of the matrix expressing basis `a` in basis `b`.

    `a` and `b` are sequences of coordinate vectors of equal length and
    ambient dimension; b must be independent.  With a_i = sum_j p_ij b_j
    this returns det(p_ij).
    """
    A = np.asarray(list(a), dtype=complex)
    B = np.asarray(list(b), dtype=complex)
    if A.shape != B.shape or A.ndim != 2:
        raise ValueError("bases must have equal cardinality and ambient dimension")
    n, m = B.shape
    if n != m:
        raise ValueError("bases must be square (n vectors of dimension n)")
    if n == 0:
        return 1.0 + 0j
    if numerical_rank(B) < n:
        raise np.linalg.LinAlgError("basis b is singular")
    # rows of A are the a_i; solve P @ B = A
    P = np.linalg.solve(B.T, A.T).T
    return complex(np.linalg.det(P))


class BasedChainComplex:
    """Finite chain or cochain complex over C with optional homology bases.

    dims[i] is the dimension of the degree-i term.  For direction 'chain'
    the differentials map degree i+1 -> i and ``boundaries[i]`` has shape
    (dims[i], dims[i+1]); for 'cochain' they map i -> i+1 and
    ``boundaries[i]`` has shape (dims[i+1], dims[i]).  The composite of
    consecutive differentials must vanish within tolerance.

    homology_bases, when given, is a per-degree list of matrices whose
    columns are cycle representatives forming a basis of the homology in
    that degree (entries may be None in degrees of trivial homology).
    """

    def __init__(self, dims, boundaries, direction="chain", homology_bases=None,
                 tol=DEFAULT_TOL):
        if direction not in ("chain", "cochain"):
            raise ChainComplexError("direction must be 'chain' or 'cochain'")
        self.dims = [int(d) for d in dims]
        if any(d < 0 for d in self.dims):
            raise ChainComplexError("negative dimension")
        n = len(self.dims) - 1
        boundaries = list(boundaries)
        if len(boundaries) != max(n, 0):
            raise ChainComplexError(
                "expected %d boundary maps, got %d" % (max(n, 0), len(boundaries)))
        self.boundaries = []
        for i, d in enumerate(boundaries):
            d = np.asarray(d, dtype=complex)
            want = ((self.dims[i], self.dims[i + 1]) if direction == "chain"
                    else (self.dims[i + 1], self.dims[i]))
            if d.shape != want:
                raise ChainComplexError(
                    "boundary %d has shape %r, expected %r" % (i, d.shape, want))
            self.boundaries.append(d)
        self.direction = direction
        self.tol = tol
        self.homology_bases = None
        if homology_bases is not None:
            hb = []
            for i, h in enumerate(homology_bases):
                if h is None:
                    hb.append(None)
                    continue
                h = np.asarray(h, dtype=complex)
                if h.ndim == 1:
                    h = h[:, None]
                if h.shape[0] != self.dims[i]:
                    raise ChainComplexError("homology basis %d has wrong ambient dim" % i)
                hb.append(h)
            while len(hb) < len(self.dims):
                hb.append(None)
            self.homology_bases = hb
        self._check_dd()

    # -- construction helpers -------------------------------------------------

    def _check_dd(self):
        for i in range(len(self.boundaries) - 1):
            if self.direction == "chain":
                comp = self.boundaries[i] @ self.boundaries[i + 1]
            else:
                comp = self.boundaries[i + 1] @ self.boundaries[i]
            if comp.size and np.linalg.norm(comp) > 1e-8 * max(
                    1.0, np.linalg.norm(self.boundaries[i]) * np.linalg.norm(self.boundaries[i + 1])):
                raise ChainComplexError("d o d != 0 at degree %d" % i)

    @property
    def top_degree(self):
        return len(self.dims) - 1

    def differential_out(self, i):
        """The differential leaving degree i (zero map at the end)."""
        n = self.top_degree
        if self.direction == "chain":
            if i == 0:
                return np.zeros((0, self.dims[0]), dtype=complex)
            return self.boundaries[i - 1]
        if i == n:
            return np.zeros((0, self.dims[n]), dtype=complex)
        return self.boundaries[i]

    def differential_in(self, i):
        """The differential arriving at degree i (zero map at the end)."""
        n = self.top_degree
        if self.direction == "chain":
            if i == n:
                return np.zeros((self.dims[n], 0), dtype=complex)
            return self.boundaries[i]
        if i == 0:
            return np.zeros((self.dims[0], 0), dtype=complex)
        return self.boundaries[i - 1]

    def to_chain(self):
        """The same complex in the homological convention (degree-reversed)."""
        if self.direction == "chain":
            return self
        n = self.top_degree
        hb = None
        if self.homology_bases is not None:
            hb = list(reversed(self.homology_bases))
        return BasedChainComplex(
            list(reversed(self.dims)),
            [self.boundaries[n - 1 - i] for i in range(n)],
            direction="chain",
            homology_bases=hb,
            tol=self.tol,
        )

    # -- serialization (test fixtures, CLI) -----------------------------------

    def to_json(self):
        def mat(m):
            # row-major nested lists; complex entries as [re, im] pairs
            return [[[z.real, z.imag] for z in row] for row in m.tolist()]
        obj = {"dims": self.dims,
               "direction": self.direction,
               "boundaries": [mat(b) for b in self.boundaries]}
        if self.homology_bases is not None:
            obj["homology_bases"] = [None if h is None else mat(h)
                                     for h in self.homology_bases]
        return json.dumps(obj)

    @classmethod
    def from_json(cls, text, tol=DEFAULT_TOL):
        obj = json.loads(text)

        def unmat(rows, shape):
            if not rows:
                return np.zeros(shape, dtype=complex)
            return np.array([[complex(z[0], z[1]) for z in row] for row in rows])
        dims = obj["dims"]
        direction = obj.get("direction", "chain")
        bnds = []
        for i, rows in enumerate(obj["boundaries"]):
            shape = ((dims[i], dims[i + 1]) if direction == "chain"
                     else (dims[i + 1], dims[i]))
            bnds.append(unmat(rows, shape))
        hb = None
        if obj.get("homology_bases") is not None:
            hb = [None if h is None else unmat(h, (dims[i], 0))
                  for i, h in enumerate(obj["homology_bases"])]
        return cls(dims, bnds, direction=direction, homology_bases=hb, tol=tol)


class HomologyData:
    """Per-degree cycle/boundary/homology bases of a complex (own indexing).

    cycles[i], boundaries[i]: orthonormal column bases of Z_i and B_i.
    homology[i]: columns are cycle representatives spanning a complement of
    B_i inside Z_i; they serve both as a homology basis and as the lift of
    that basis back into the cycle space.
    """

    def __init__(self, cycles, boundaries, homology):
        self.cycles = cycles
        self.boundaries = boundaries
        self.homology = homology
        self.dims = [h.shape[1] for h in homology]

    def class_coordinates(self, degree, vectors, tol=DEFAULT_TOL):
        """Coordinates of the homology classes of cycle `vectors` in the
        degree-`degree` homology basis."""
        H = self.homology[degree]
        B = self.boundaries[degree]
        vectors = np.asarray(vectors, dtype=complex)
        if vectors.ndim == 1:
            vectors = vectors[:, None]
        M = np.hstack([H, B])
        if M.shape[1] == 0:
            return np.zeros((0, vectors.shape[1]), dtype=complex)
        x = solve_in_span(M, vectors, tol)
        return x[:H.shape[1], :]


def homology(cx, tol=None):
    """Cycle, boundary and homology bases of `cx`, degree by degree.

    Homology bases are the orthogonal complements of B_i inside Z_i; the
    dimension satisfies dim H_i = dim Z_i - dim B_i.
    """
    tol = tol or cx.tol
    cycles, bnds, hom = [], [], []
    for i in range(len(cx.dims)):
        Z = nullspace(cx.differential_out(i), tol)
        Bm = column_space(cx.differential_in(i), tol)
        # B must sit inside Z (d o d = 0 is validated at construction)
        if Bm.shape[1] > Z.shape[1]:
            raise ChainComplexError("boundary space exceeds cycle space at degree %d" % i)
        if Bm.shape[1]:
            proj = Bm @ (Bm.conj().T @ Z)
            W = Z - proj
        else:
            W = Z
        H = column_space(W, tol)
        cycles.append(Z)
        bnds.append(Bm)
        hom.append(H)
    return HomologyData(cycles, bnds, hom)


def _resolve_homology_bases(cx, hdata, tol):
    """Homology bases to use for torsion: supplied ones, validated; the
    computed ones only where the supplied entry is missing but trivial."""
    bases = []
    for i in range(len(cx.dims)):
        want = hdata.dims[i]
        supplied = None if cx.homology_bases is None else cx.homology_bases[i]
        if want == 0:
            if supplied is not None and supplied.shape[1] != 0:
                raise ChainComplexError(
                    "degree %d is acyclic but a homology basis was supplied" % i)
            bases.append(np.zeros((cx.dims[i], 0), dtype=complex))
            continue
        if supplied is None:
            raise ChainComplexError(
                "degree %d has homology of dimension %d but no reference basis"
                % (i, want))
        if supplied.shape[1] != want:
            raise ChainComplexError(
                "homology basis at degree %d has %d vectors, expected %d"
                % (i, supplied.shape[1], want))
        # representatives must be cycles ...
        dout = cx.differential_out(i)
        if dout.size and np.linalg.norm(dout @ supplied) > 1e-6 * max(
                1.0, np.linalg.norm(supplied)):
            raise ChainComplexError("supplied basis at degree %d is not made of cycles" % i)
        # ... and project to an independent family in homology
        coords = hdata.class_coordinates(i, supplied, tol)
        if numerical_rank(coords, tol) < want:
            raise ChainComplexError(
                "supplied vectors at degree %d do not span the homology" % i)
        bases.append(supplied)
    return bases


def torsion(cx, tol=None, rng=None):
    """Reidemeister torsion of a based, homology based complex.

    The internal choices (the families b^i and the homology lifts) are
    deterministic by default; passing a numpy Generator as `rng`
    re-randomizes them, which must not change the value -- torsion is
    independent of these choices.
    """
    tol = tol or cx.tol
    c = cx.to_chain()
    n = c.top_degree
    hdata = homology(c, tol)
    hbases = _resolve_homology_bases(c, hdata, tol)

    # rank of each differential d_i : C_i -> C_{i-1}
    ranks = [0] * (n + 2)
    for i in range(1, n + 1):
        ranks[i] = numerical_rank(c.boundaries[i - 1], tol)

    # b^i: columns of C_i mapping to a basis of B_{i-1}
    bfam = [None] * (n + 1)
    for i in range(1, n + 1):
        d = c.boundaries[i - 1]
        r = ranks[i]
        if r == 0:
            bfam[i] = np.zeros((c.dims[i], 0), dtype=complex)
            continue
        piv = pivot_columns(d, r)
        E = np.zeros((c.dims[i], r), dtype=complex)
        for k, p in enumerate(piv):
            E[p, k] = 1.0
        if rng is not None:
            mix = _random_invertible(rng, r)
            E = E @ mix
            K = nullspace(d, tol)
            if K.shape[1]:
                E = E + K @ (rng.standard_normal((K.shape[1], r))
                             + 1j * rng.standard_normal((K.shape[1], r)))
        bfam[i] = E

    value = 1.0 + 0j
    for i in range(n + 1):
        m = c.dims[i]
        if m == 0:
            continue
        cols = []
        if i < n and ranks[i + 1]:
            cols.append(c.boundaries[i] @ bfam[i + 1])
        h = hbases[i]
        if h.shape[1]:
            if rng is not None and hdata.boundaries[i].shape[1]:
                Bm = hdata.boundaries[i]
                h = h + Bm @ (rng.standard_normal((Bm.shape[1], h.shape[1]))
                              + 1j * rng.standard_normal((Bm.shape[1], h.shape[1])))
            cols.append(h)
        if ranks[i]:
            cols.append(bfam[i])
        M = np.hstack(cols) if cols else np.zeros((m, 0), dtype=complex)
        if M.shape != (m, m):
            raise ChainComplexError(
                "degenerate decomposition at degree %d: %r columns for dim %d"
                % (i, M.shape[1], m))
        det = np.linalg.det(M)
        if abs(det) <= tol.rank:
            raise ChainComplexError("degenerate lift system at degree %d" % i)
        value *= det ** ((-1) ** (i + 1))
    return complex(value)


def _random_invertible(rng, n):
    q, _ = np.linalg.qr(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
    return q @ np.diag(np.exp(0.3 * rng.standard_normal(n)))


def sign_parities(dims, homology_dims):
    """(alpha_i), (beta_i) and the total parity |C_*| of a chain complex.

    alpha_i and beta_i are the cumulative chain/homology dimensions mod 2;
    |C_*| = sum_i alpha_i beta_i mod 2 is the exponent of the
    sign-determined correction.
    """
    alphas = np.cumsum(dims) % 2
    betas = np.cumsum(homology_dims) % 2
    total = int(np.sum(alphas * betas)) % 2
    return alphas.tolist(), betas.tolist(), total


def complex_sign(cx, tol=None):
    """|C_*| of a complex, computed in the homological convention."""
    tol = tol or cx.tol
    c = cx.to_chain()
    hdims = homology(c, tol).dims
    return sign_parities(c.dims, hdims)[2]


def sign_determined_torsion(cx, tol=None, rng=None):
    """Turaev's sign-corrected torsion (-1)^{|C_*|} tor(C_*).

    Coincides with plain torsion on acyclic complexes.
    """
    if len(cx.dims) == 0 or sum(cx.dims) == 0:
        return 1.0 + 0j
    return (-1) ** complex_sign(cx, tol) * torsion(cx, tol, rng)


# -- multiplicativity --------------------------------------------------------

def multiplicativity_signs(dims_sub, dims_total, dims_quot,
                           hdims_sub, hdims_total, hdims_quot):
    """Sign exponents (alpha, epsilon) of the multiplicativity lemma.

    For a short exact sequence 0 -> C' -> C -> C'' -> 0 of based chain
    complexes (homological indexing),

      alpha  = sum_i alpha_{i-1}(C') alpha_i(C''),
      epsilon = sum_i [(beta_i(C)+1)(beta_i(C')+beta_i(C''))
                        + beta_{i-1}(C') beta_i(C'')]   (mod 2).
    """
    del dims_total  # alpha only involves the sub and quotient complexes
    ap = np.cumsum(dims_sub) % 2
    app = np.cumsum(dims_quot) % 2
    alpha = 0
    for i in range(len(app)):
        alpha += (ap[i - 1] if i >= 1 else 0) * app[i]
    bp = np.cumsum(hdims_sub) % 2
    b = np.cumsum(hdims_total) % 2
    bpp = np.cumsum(hdims_quot) % 2
    eps = 0
    for i in range(len(b)):
        bpm1 = bp[i - 1] if i >= 1 else 0
        eps += (b[i] + 1) * (bp[i] + bpp[i]) + bpm1 * bpp[i]
    return int(alpha) % 2, int(eps) % 2


def induced_map_on_homology(f_by_degree, degree, hsrc, htgt, tol=DEFAULT_TOL):
    """Matrix of the map induced on degree-`degree` homology by a chain map
    given degreewise by the matrices `f_by_degree`."""
    f = f_by_degree[degree]
    img = f @ hsrc.homology[degree]
    return htgt.class_coordinates(degree, img, tol)


def connecting_map(degree, incl, proj, c_total, hsub, htotal, hquot, tol=DEFAULT_TOL):
    """Connecting homomorphism H_degree(C'') -> H_{degree-1}(C') of a
    degreewise short exact sequence, computed by the usual zig-zag.

    incl, proj are per-degree matrices C'_i -> C_i and C_i -> C''_i.
    """
    del htotal
    if degree == 0:
        raise ValueError("no connecting map out of degree 0")
    out = []
    d = c_total.boundaries[degree - 1]
    for k in range(hquot.homology[degree].shape[1]):
        z = hquot.homology[degree][:, k]
        y, *_ = np.linalg.lstsq(proj[degree], z, rcond=None)
        w = d @ y
        v = solve_in_span(incl[degree - 1], w[:, None], tol)[:, 0]
        out.append(hsub.class_coordinates(degree - 1, v, tol)[:, 0])
    if not out:
        return np.zeros((hsub.dims[degree - 1], 0), dtype=complex)
    return np.column_stack(out)


def long_exact_sequence(c_sub, c_total, c_quot, incl, proj, tol=DEFAULT_TOL,
                        bases=None):
    """The homology long exact sequence of a short exact sequence, as a based
    chain complex H_* with H_{3i} = H_i(C''), H_{3i+1} = H_i(C),
    H_{3i+2} = H_i(C').

    `bases`, when given, is a triple of per-degree homology bases (sub,
    total, quot) to use instead of the computed ones.
    """
    hs, ht, hq = (homology(c_sub, tol), homology(c_total, tol), homology(c_quot, tol))
    if bases is not None:
        for hd, bb in zip((hs, ht, hq), bases):
            for i, m in enumerate(bb):
                if m is not None:
                    hd.homology[i] = np.asarray(m, dtype=complex)
            hd.dims = [h.shape[1] for h in hd.homology]
    n = c_total.top_degree
    dims = []
    for i in range(n + 1):
        dims += [hq.dims[i], ht.dims[i], hs.dims[i]]
    diffs = []
    for i in range(n + 1):
        # H_i(C) -> H_i(C'')
        diffs.append(induced_map_on_homology(proj, i, ht, hq, tol))
        # H_i(C') -> H_i(C)
        diffs.append(induced_map_on_homology(incl, i, hs, ht, tol))
        if i < n:
            # H_{i+1}(C'') -> H_i(C')
            diffs.append(connecting_map(i + 1, incl, proj, c_total, hs, ht, hq, tol))
    return BasedChainComplex(dims, diffs, direction="chain", tol=tol)


def multiplicativity_check(c_sub, c_total, c_quot, incl, proj, tol=None,
                           return_parts=False):
    """Residual of the multiplicativity identity on a short exact sequence.

    Checks that incl/proj form a degreewise short exact sequence with
    compatible bases, builds the based long exact sequence H_*, and returns

        | Tor(C) - (-1)^{alpha+eps} Tor(C') Tor(C'') tor(H_*) |,

    which vanishes (within numerical error) on valid input.  With
    `return_parts` the individual factors and sign exponents come back too.
    """
    tol = tol or c_total.tol
    if not (c_sub.direction == c_total.direction == c_quot.direction):
        raise ChainComplexError("complexes must share the direction convention")
    cs, ct, cq = c_sub.to_chain(), c_total.to_chain(), c_quot.to_chain()
    n = ct.top_degree
    if cs.top_degree != n or cq.top_degree != n:
        raise ChainComplexError("complexes must share the degree range")
    incl = [np.asarray(m, dtype=complex) for m in incl]
    proj = [np.asarray(m, dtype=complex) for m in proj]
    if c_sub.direction == "cochain":
        incl = list(reversed(incl))
        proj = list(reversed(proj))
    for i in range(n + 1):
        if numerical_rank(incl[i], tol) < cs.dims[i]:
            raise ChainComplexError("inclusion not injective at degree %d" % i)
        if numerical_rank(proj[i], tol) < cq.dims[i]:
            raise ChainComplexError("projection not surjective at degree %d" % i)
        if incl[i].size and proj[i].size and np.linalg.norm(proj[i] @ incl[i]) > 1e-7 * max(
                1.0, np.linalg.norm(incl[i])):
            raise ChainComplexError("proj o incl != 0 at degree %d" % i)
        if cs.dims[i] + cq.dims[i] != ct.dims[i]:
            raise ChainComplexError("sequence not exact at degree %d" % i)
        # base compatibility: [c / c' c''] = +1
        if ct.dims[i]:
            section = np.linalg.pinv(proj[i]) if proj[i].size else np.zeros(
                (ct.dims[i], 0), dtype=complex)
            M = np.hstack([incl[i], section])
            det = np.linalg.det(M)
            if abs(det - 1.0) > 1e-6:
                raise ChainComplexError(
                    "bases incompatible at degree %d ([c/c'c''] = %s)" % (i, det))

    hs, ht, hq = homology(cs, tol), homology(ct, tol), homology(cq, tol)
    hb_sub = _resolve_or_default(cs, hs, tol)
    hb_tot = _resolve_or_default(ct, ht, tol)
    hb_quot = _resolve_or_default(cq, hq, tol)

    les = long_exact_sequence(cs, ct, cq, incl, proj, tol,
                              bases=(hb_sub, hb_tot, hb_quot))
    if any(d != 0 for d in homology(les, tol).dims):
        raise ChainComplexError("long exact sequence is not exact (sequence invalid)")

    tor_les = torsion(les, tol)
    Tc = sign_determined_torsion(_with_bases(ct, hb_tot), tol)
    Ts = sign_determined_torsion(_with_bases(cs, hb_sub), tol)
    Tq = sign_determined_torsion(_with_bases(cq, hb_quot), tol)
    alpha, eps = multiplicativity_signs(cs.dims, ct.dims, cq.dims,
                                        hs.dims, ht.dims, hq.dims)
    rhs = (-1) ** ((alpha + eps) % 2) * Ts * Tq * tor_les
    residual = abs(Tc - rhs)
    if return_parts:
        return residual, {
            "total": Tc, "sub": Ts, "quot": Tq, "les": tor_les,
            "alpha": alpha, "epsilon": eps,
        }
    return residual


def _resolve_or_default(cx, hdata, tol):
    if cx.homology_bases is not None:
        return _resolve_homology_bases(cx, hdata, tol)
    return [hdata.homology[i] for i in range(len(cx.dims))]


def _with_bases(cx, bases):
    return BasedChainComplex(cx.dims, cx.boundaries, direction=cx.direction,
                             homology_bases=bases, tol=cx.tol)
