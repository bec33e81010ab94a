"""Local analysis at a singular point.

Everything here works on the *local field*: the chart field translated so
the singular point sits at the origin.  From its linear part we read the
eigenvalues and classify the point; resonant nodes and saddle-nodes are
finished off with formal jet computations.
"""
from dataclasses import dataclass, field
from fractions import Fraction

from .cpoly import CPoly2, ONE, X, Y, ZERO
from .errors import ClassificationError, FolianaError, NotSingularError
from .foliation import Line, ProjectivePoint, VectorField, field_in_chart, line_invariant, linf_invariant, singularities
from .scalars import GaussRat, exact_sqrt, exact_string, json_complex, rational_approx, sqrt

NONDEGENERATE = "NonDegenerateIrreducible"
SADDLE_NODE = "SaddleNode"
RESONANT_NODE = "ResonantNode"
LINEARIZABLE = "LinearizableRational"
DEGENERATE = "Degenerate"

IRREDUCIBLE_KINDS = (NONDEGENERATE, SADDLE_NODE)

DEFAULT_JET_CAP = 10
DEFAULT_WINDOW = 1e-9
MAX_DENOMINATOR = 20
CHOP_REL = 1e-12


def _point(p):
    if isinstance(p, ProjectivePoint):
        return p
    return ProjectivePoint.affine(*p)


def _is_zero(c, scale=1.0, rel=CHOP_REL):
    if isinstance(c, GaussRat):
        return not c
    return abs(complex(c)) <= rel * scale


def local_field(vf, p):
    """Chart field of ``vf`` translated so that ``p`` is the origin.

    Constant terms are verified to vanish and then dropped; float
    coefficients negligible next to the field's scale are chopped.
    """
    p = _point(p)
    F = field_in_chart(vf, p.chart)
    a, b = p.coords
    A = F.P.translate(a, b)
    B = F.Q.translate(a, b)
    a0, b0 = A.coeff(0, 0), B.coeff(0, 0)
    if isinstance(a0, GaussRat) and isinstance(b0, GaussRat):
        if a0 or b0:
            raise NotSingularError(f"field does not vanish at {p.label()}")
    else:
        scale = max(_scale_at(F.P, a, b), _scale_at(F.Q, a, b), 1e-300)
        if max(abs(complex(a0)), abs(complex(b0))) > 1e-8 * scale:
            raise NotSingularError(f"field does not vanish at {p.label()}")
    A = CPoly2({e: c for e, c in A.terms.items() if e != (0, 0)})
    B = CPoly2({e: c for e, c in B.terms.items() if e != (0, 0)})
    ref = max(A.max_coeff(), B.max_coeff())
    return VectorField(A.chop(ref=ref), B.chop(ref=ref), validate=False)


def _scale_at(p, a, b):
    ma, mb = abs(complex(a)), abs(complex(b))
    return sum(abs(complex(c)) * ma ** i * mb ** j for (i, j), c in p.terms.items())


# ---------------------------------------------------------------------------
# linear algebra on 2x2 matrices with mixed exact/float entries
# ---------------------------------------------------------------------------
def _det2(M):
    return M[0][0] * M[1][1] - M[0][1] * M[1][0]


def _inv2(M):
    d = _det2(M)
    return ((M[1][1] / d, -M[0][1] / d), (-M[1][0] / d, M[0][0] / d))


def _matvec(M, v):
    return (M[0][0] * v[0] + M[0][1] * v[1], M[1][0] * v[0] + M[1][1] * v[1])


def _abs2(c):
    return c.abs2() if isinstance(c, GaussRat) else abs(complex(c)) ** 2


def _conj(c):
    return c.conjugate() if isinstance(c, GaussRat) else complex(c).conjugate()


def eigvec(J, lam):
    """Eigenvector for ``lam`` scaled so its largest component equals 1."""
    a, b = J[0][0] - lam, J[0][1]
    c, d = J[1][0], J[1][1] - lam
    scale = max(abs(complex(v)) for v in (a, b, c, d))
    # pick the row with larger norm; the kernel of (r0, r1) is (-r1, r0)
    if _abs2(a) + _abs2(b) >= _abs2(c) + _abs2(d):
        v = (-b, a)
    else:
        v = (-d, c)
    if _is_zero(v[0], scale) and _is_zero(v[1], scale):
        raise ClassificationError("eigenvector is undetermined (scalar matrix)")
    pivot = v[0] if _abs2(v[0]) >= _abs2(v[1]) else v[1]
    return (v[0] / pivot, v[1] / pivot)


@dataclass(frozen=True)
class LinearPart:
    J: tuple
    eigenvalues: tuple
    exact: bool

    @property
    def trace(self):
        return self.J[0][0] + self.J[1][1]

    @property
    def det(self):
        return _det2(self.J)

    @property
    def norm(self):
        return max(abs(complex(v)) for row in self.J for v in row)

    def to_json(self):
        return {
            "J": [[json_complex(v) for v in row] for row in self.J],
            "eigenvalues": [json_complex(v) for v in self.eigenvalues],
            "exact": self.exact,
        }


def _eigenvalues(J):
    a, b = J[0]
    c, d = J[1]
    exact = all(isinstance(v, GaussRat) for v in (a, b, c, d))
    if _is_zero(c, 0.0) or _is_zero(b, 0.0):
        pair = (a, d)
    else:
        tr = a + d
        disc = tr * tr - 4 * (a * d - b * c)
        s = exact_sqrt(disc) if exact else None
        if s is None:
            s = sqrt(complex(disc))
            tr = complex(tr)
        pair = ((tr + s) / 2, (tr - s) / 2)
    lam, mu = pair
    if _abs2(mu) > _abs2(lam):
        lam, mu = mu, lam
    return (lam, mu)


def _jacobian(F):
    return (
        (F.P.coeff(1, 0), F.P.coeff(0, 1)),
        (F.Q.coeff(1, 0), F.Q.coeff(0, 1)),
    )


def linear_part(vf, p):
    """Jacobian of the chart field at ``p`` with eigenvalues ordered |lam| >= |mu|."""
    F = local_field(vf, p)
    return _linear_part_local(F)


def _linear_part_local(F):
    J = _jacobian(F)
    lam, mu = _eigenvalues(J)
    exact = all(isinstance(v, GaussRat) for row in J for v in row) and isinstance(lam, GaussRat) and isinstance(mu, GaussRat)
    return LinearPart(J, (lam, mu), exact)


# ---------------------------------------------------------------------------
# jets
# ---------------------------------------------------------------------------
def _mat_poly_mul(A, B, N):
    return tuple(
        tuple(
            (A[i][0].mul_trunc(B[0][j], N) + A[i][1].mul_trunc(B[1][j], N)).truncate(N)
            for j in range(2)
        )
        for i in range(2)
    )


def conjugate_field(F, Phi, N):
    """Pull back the field (A, B) along z = Phi(w): returns (DPhi)^-1 * F(Phi(w)) mod degree N+1.

    ``Phi`` is a pair of CPoly2 without constant terms whose linear part is
    invertible.
    """
    A, B = F
    comp = (A.compose(Phi[0], Phi[1], trunc=N), B.compose(Phi[0], Phi[1], trunc=N))
    D = ((Phi[0].diff("x"), Phi[0].diff("y")), (Phi[1].diff("x"), Phi[1].diff("y")))
    L = ((D[0][0].coeff(0, 0), D[0][1].coeff(0, 0)), (D[1][0].coeff(0, 0), D[1][1].coeff(0, 0)))
    Linv = _inv2(L)
    Lp = tuple(tuple(CPoly2.const(v) for v in row) for row in Linv)
    # DPhi = L (I + L^-1 D'), with D' the nonconstant part
    Dp = tuple(tuple(D[i][j] - CPoly2.const(L[i][j]) for j in range(2)) for i in range(2))
    K = _mat_poly_mul(Lp, Dp, N)
    negK = tuple(tuple(-K[i][j] for j in range(2)) for i in range(2))
    ident = ((CPoly2.const(ONE), CPoly2()), (CPoly2(), CPoly2.const(ONE)))
    series = ident
    power = ident
    for _ in range(N):
        power = _mat_poly_mul(power, negK, N)
        if all(power[i][j].is_zero() for i in range(2) for j in range(2)):
            break
        series = tuple(tuple(series[i][j] + power[i][j] for j in range(2)) for i in range(2))
    inv = _mat_poly_mul(series, Lp, N)
    outA = (inv[0][0].mul_trunc(comp[0], N) + inv[0][1].mul_trunc(comp[1], N)).truncate(N)
    outB = (inv[1][0].mul_trunc(comp[0], N) + inv[1][1].mul_trunc(comp[1], N)).truncate(N)
    return outA, outB


def _linear_map(M):
    return (CPoly2({(1, 0): M[0][0], (0, 1): M[0][1]}), CPoly2({(1, 0): M[1][0], (0, 1): M[1][1]}))


def _scale_pair(pair, s):
    return tuple(p * CPoly2.const(s) for p in pair)


def _chop_pair(pair, rel=CHOP_REL):
    ref = max(max(p.max_coeff() for p in pair), 1.0)
    return tuple(p.chop(ref=ref, rel=rel) for p in pair)


@dataclass(frozen=True)
class DulacReduction:
    """Outcome of the resonant normalization at a node with eigenvalue ratio 1/n.

    ``transform`` maps normal coordinates to local (centered) coordinates of
    the original chart: z = transform(w).  ``normal_jet`` is the field in
    normal coordinates, divided by the small eigenvalue, up to degree n.
    """

    n: int
    c: object
    transform: tuple
    normal_jet: tuple
    time_scale: object

    def to_json(self):
        return {
            "n": self.n,
            "c": json_complex(self.c),
            "c_exact": exact_string(self.c),
            "transform": [p.to_str() for p in self.transform],
            "normal_jet": [p.to_str() for p in self.normal_jet],
        }


def poincare_dulac_reduce(vf, p, n):
    """Normalize the jet at a resonant node with eigenvalues (n*mu, mu).

    Solves the homological equation degree by degree, removing every
    non-resonant monomial up to degree n.  Returns the coefficient c of the
    single resonant monomial y^n in the first component of the normal form
    (n x + c y^n, y).  For n = 1 the resonance is linear: c is the Jordan
    off-diagonal entry in the normalized basis.
    """
    F = local_field(vf, p)
    return _dulac_local(F, n)


def _dulac_local(F, n):
    lp = _linear_part_local(F)
    lam, mu = lp.eigenvalues
    if _is_zero(mu, lp.norm, 1e-12):
        raise ClassificationError("resonant normalization needs two nonzero eigenvalues")
    ratio = lam / mu
    if abs(complex(ratio) - n) > 1e-8 * n:
        raise ClassificationError(f"eigenvalue ratio {complex(ratio)} does not match resonance order {n}")
    J = lp.J
    N = max(n, 1)
    if n == 1:
        Nil = ((J[0][0] - lam, J[0][1]), (J[1][0], J[1][1] - lam))
        if all(_is_zero(v, lp.norm, 1e-12) for row in Nil for v in row):
            M = ((ONE, ZERO), (ZERO, ONE))
            c = ZERO
        else:
            v1 = eigvec(J, lam)
            i = 0 if _abs2(v1[0]) >= _abs2(v1[1]) else 1
            r = (Nil[i][0] / v1[i], Nil[i][1] / v1[i])
            nr = _abs2(r[0]) + _abs2(r[1])
            v2 = (_conj(r[0]) / nr, _conj(r[1]) / nr)
            M = ((v1[0], v2[0]), (v1[1], v2[1]))
            c = ONE / lam
        Phi = _linear_map(M)
        G = _scale_pair(conjugate_field((F.P, F.Q), Phi, 1), ONE / lam)
        G = _chop_pair(G)
        return DulacReduction(1, c, Phi, G, ONE / lam)
    v_l = eigvec(J, lam)
    v_m = eigvec(J, mu)
    M = ((v_l[0], v_m[0]), (v_l[1], v_m[1]))
    Phi = _linear_map(M)
    G = _scale_pair(conjugate_field((F.P, F.Q), Phi, N), ONE / mu)
    G = _chop_pair(G)
    eig = (n, 1)
    for k in range(2, N + 1):
        h = []
        for s in range(2):
            terms = {}
            for (i, j), coef in G[s].homogeneous_part(k).terms.items():
                den = i * eig[0] + j * eig[1] - eig[s]
                if den != 0:
                    terms[(i, j)] = coef / den
            h.append(CPoly2(terms))
        if h[0].is_zero() and h[1].is_zero():
            continue
        step = (X + h[0], Y + h[1])
        G = _chop_pair(conjugate_field(G, step, N))
        Phi = tuple(comp.compose(step[0], step[1], trunc=N) for comp in Phi)
    c = G[0].coeff(0, n)
    return DulacReduction(n, c, Phi, G, ONE / mu)


@dataclass(frozen=True)
class SaddleNodeData:
    m: object
    lambda_formal: object
    central_direction: tuple
    strong_direction: tuple


def _series_inverse(a, N):
    """Power series inverse of a list with a[0] != 0, to N+1 terms."""
    inv = [ONE / a[0] if isinstance(a[0], GaussRat) else 1 / complex(a[0])]
    for k in range(1, N + 1):
        s = ZERO
        for j in range(1, k + 1):
            if j < len(a):
                s = s + a[j] * inv[k - j]
        inv.append(-s * inv[0])
    return inv


def _saddle_node_local(F, jet_cap):
    lp = _linear_part_local(F)
    lam, mu = lp.eigenvalues
    J = lp.J
    v_c = eigvec(J, mu)
    v_s = eigvec(J, lam)
    M = ((v_c[0], v_s[0]), (v_c[1], v_s[1]))
    N = jet_cap
    G = _scale_pair(conjugate_field((F.P, F.Q), _linear_map(M), N), ONE / lam)
    G = _chop_pair(G)
    A = CPoly2({e: c for e, c in G[0].terms.items() if e[0] + e[1] >= 2})
    B = G[1]
    B_nl = CPoly2({e: c for e, c in B.terms.items() if e[0] + e[1] >= 2})
    phi = CPoly2()
    for _ in range(N):
        dphi = phi.diff("x")
        nxt = (dphi.mul_trunc(A.compose(X, phi, trunc=N), N) - B_nl.compose(X, phi, trunc=N)).truncate(N)
        nxt = CPoly2({e: c for e, c in nxt.terms.items() if e[0] >= 2})
        if nxt == phi:
            break
        phi = nxt
    A_hat = A.compose(X, phi, trunc=N).chop(ref=1.0, rel=1e-10)
    coeffs = [A_hat.coeff(k, 0) for k in range(N + 1)]
    order = next((k for k, cf in enumerate(coeffs) if not _is_zero(cf, 1.0, 1e-10)), None)
    if order is None:
        return SaddleNodeData(None, None, v_c, v_s)
    m = order - 1
    if 2 * m + 1 > N:
        return SaddleNodeData(m, None, v_c, v_s)
    dphi = phi.diff("x")
    Ntil = (B.diff("y").compose(X, phi, trunc=N) - dphi.mul_trunc(A.diff("y").compose(X, phi, trunc=N), N)).truncate(N)
    num = [Ntil.coeff(k, 0) for k in range(m + 1)]
    unit = [coeffs[order + k] if order + k <= N else ZERO for k in range(m + 1)]
    inv = _series_inverse(unit, m)
    res = ZERO
    for k in range(m + 1):
        res = res + num[k] * inv[m - k]
    if not isinstance(res, GaussRat):
        res = complex(res)
        res = complex(round(res.real, 15), round(res.imag, 15)) if abs(res) < 1e300 else res
    return SaddleNodeData(m, res, v_c, v_s)


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------
@dataclass
class SingClass:
    kind: str
    eigenvalues: tuple
    ratio: object = None
    m: object = None
    lambda_formal: object = None
    n: object = None
    c: object = None
    pq: object = None
    poincare_domain: object = None
    dicritical: object = None
    formal: bool = False
    ambiguous: bool = False
    alternatives: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    point: object = None

    @property
    def irreducible(self):
        return self.kind in IRREDUCIBLE_KINDS

    @property
    def kind_ambiguous(self):
        """True when the tolerance window admits a different kind (not just a different flag)."""
        return bool(self.alternatives)

    def to_json(self):
        doc = {
            "kind": self.kind,
            "eigenvalues": [json_complex(v) for v in self.eigenvalues],
            "ratio": None if self.ratio is None else json_complex(self.ratio),
            "poincare_domain": self.poincare_domain,
            "dicritical": self.dicritical,
            "formal": self.formal,
            "ambiguous": self.ambiguous,
            "alternatives": list(self.alternatives),
            "notes": list(self.notes),
        }
        if self.ratio is not None and exact_string(self.ratio) is not None:
            doc["ratio_exact"] = exact_string(self.ratio)
        if self.kind == SADDLE_NODE:
            doc["m"] = self.m
            doc["lambda_formal"] = None if self.lambda_formal is None else json_complex(self.lambda_formal)
            if self.lambda_formal is not None and exact_string(self.lambda_formal) is not None:
                doc["lambda_formal_exact"] = exact_string(self.lambda_formal)
        if self.kind == RESONANT_NODE or (self.kind == LINEARIZABLE and self.n is not None):
            doc["n"] = self.n
            doc["c"] = None if self.c is None else json_complex(self.c)
        if self.kind == LINEARIZABLE:
            doc["p_over_q"] = str(self.pq)
        if self.point is not None:
            doc["point"] = self.point.to_json()
        return doc


def classify(vf, p, jet_cap=DEFAULT_JET_CAP, window=DEFAULT_WINDOW):
    """Classify the singular point ``p`` of ``vf`` from its eigenvalues and jets."""
    if jet_cap < 2:
        raise FolianaError("jet_cap must be at least 2")
    p = _point(p)
    F = local_field(vf, p)
    out = classify_local(F, jet_cap, window)
    out.point = p
    return out


def classify_local(F, jet_cap=DEFAULT_JET_CAP, window=DEFAULT_WINDOW):
    """Classify the origin of a local field (translated chart field)."""
    lp = _linear_part_local(F)
    lam, mu = lp.eigenvalues
    exact = lp.exact
    norm = lp.norm
    zero_tol = 0.0 if exact else window
    lam_zero = _is_zero(lam, max(norm, 1e-300), zero_tol) if not exact else not lam
    if lam_zero:
        sc = SingClass(DEGENERATE, (lam, mu), dicritical=None, poincare_domain=False)
        if not exact and lam != 0:
            sc.ambiguous = True
            sc.alternatives.append(SADDLE_NODE if abs(complex(mu)) < abs(complex(lam)) else NONDEGENERATE)
            sc.notes.append("eigenvalues numerically zero")
        sc.notes.append("nilpotent or zero linear part; classification deferred to blow-up")
        return sc
    ratio = mu / lam
    r = complex(ratio)
    mu_zero = (not ratio) if exact else abs(r) <= window
    if mu_zero:
        sn = _saddle_node_local(F, jet_cap)
        sc = SingClass(SADDLE_NODE, (lam, mu), ratio=ratio, m=sn.m, lambda_formal=sn.lambda_formal,
                       poincare_domain=False, dicritical=False, formal=True)
        if not exact and mu != 0:
            sc.ambiguous = True
            sc.alternatives.append(NONDEGENERATE)
            sc.notes.append("small eigenvalue numerically zero")
        if sn.m is None:
            sc.notes.append("saddle-node order not reached within the jet cap")
        elif sn.lambda_formal is None:
            sc.notes.append("formal residue needs a jet of order 2m+1 beyond the jet cap")
        return sc
    # poincare domain: ratio off the closed negative real axis
    if exact:
        on_neg = ratio.im == 0 and ratio.re < 0
        poincare = not on_neg
        pd_ambiguous = False
    else:
        near = r.real < 0 and abs(r.imag) <= window
        poincare = None if near else True
        pd_ambiguous = near
    # positive rational test
    if exact:
        rational = ratio.im == 0 and ratio.re > 0
        pq = ratio.re if rational else None
        rat_ambiguous = False
    else:
        cand = rational_approx(r.real, MAX_DENOMINATOR)
        rational = cand > 0 and abs(r - float(cand)) <= window
        pq = cand if rational else None
        rat_ambiguous = rational
    if not rational:
        sc = SingClass(NONDEGENERATE, (lam, mu), ratio=ratio, poincare_domain=poincare, dicritical=False)
        if pd_ambiguous:
            sc.ambiguous = True
            sc.notes.append("ratio within the window of the negative real axis")
        return sc
    pq = Fraction(pq)
    if pq.numerator == 1:
        n = pq.denominator
        sc = _resonant(F, n, (lam, mu), ratio, jet_cap, exact)
    else:
        sc = SingClass(LINEARIZABLE, (lam, mu), ratio=ratio, pq=pq, poincare_domain=True,
                       dicritical=True, formal=True)
        sc.notes.append("no resonant monomials: formally linearizable; analytic linearization not certified")
    if rat_ambiguous:
        sc.ambiguous = True
        sc.alternatives.append(NONDEGENERATE)
        sc.notes.append(f"ratio within {window:g} of {pq}; rational branch reported first")
    return sc


def _resonant(F, n, eig, ratio, jet_cap, exact):
    lam, mu = eig
    if n > jet_cap:
        sc = SingClass(RESONANT_NODE, eig, ratio=ratio, n=n, c=None, pq=Fraction(1, n),
                       poincare_domain=True, dicritical=None, formal=True)
        sc.ambiguous = True
        sc.alternatives.append(LINEARIZABLE)
        sc.notes.append("resonance order exceeds the jet cap; resonant coefficient unknown")
        return sc
    red = _dulac_local(F, n)
    c = red.c
    scale = max(1.0, max(p.max_coeff() for p in red.normal_jet))
    c_zero = (not c) if isinstance(c, GaussRat) else abs(complex(c)) <= 1e-9 * scale
    if not c_zero:
        return SingClass(RESONANT_NODE, eig, ratio=ratio, n=n, c=c, pq=Fraction(1, n),
                         poincare_domain=True, dicritical=False, formal=True)
    sc = SingClass(LINEARIZABLE, eig, ratio=ratio, n=n, c=ZERO if isinstance(c, GaussRat) else 0j,
                   pq=Fraction(1, n), poincare_domain=True, dicritical=True, formal=True)
    if not isinstance(c, GaussRat):
        sc.ambiguous = True
        sc.alternatives.append(RESONANT_NODE)
        sc.notes.append("resonant coefficient numerically zero")
    sc.notes.append("resonant coefficient vanishes; higher jets carry no resonances, so the node is formally linearizable")
    return sc


# ---------------------------------------------------------------------------
# Camacho-Sad indices
# ---------------------------------------------------------------------------
def _invariant_direction_eigenvalue(J, d, norm):
    Jd = _matvec(J, d)
    i = 0 if _abs2(d[0]) >= _abs2(d[1]) else 1
    if _is_zero(d[i], 0.0):
        raise FolianaError("separatrix direction must be nonzero")
    alpha = Jd[i] / d[i]
    r0 = Jd[0] - alpha * d[0]
    r1 = Jd[1] - alpha * d[1]
    if isinstance(r0, GaussRat) and isinstance(r1, GaussRat):
        ok = not r0 and not r1
    else:
        dn = max(abs(complex(d[0])), abs(complex(d[1])))
        ok = max(abs(complex(r0)), abs(complex(r1))) <= 1e-9 * max(norm, 1e-300) * dn
    if not ok:
        raise ClassificationError("direction is not invariant under the linear part")
    return alpha


def cs_index(vf, p, sep, jet_cap=DEFAULT_JET_CAP, window=DEFAULT_WINDOW):
    """Camacho-Sad index of the separatrix tangent to ``sep`` at ``p``.

    With J sep = alpha sep and both eigenvalues nonzero the index is
    (transverse eigenvalue)/alpha.  A strong separatrix of a saddle-node gets
    0; the central direction gets the formal residue.
    """
    p = _point(p)
    F = local_field(vf, p)
    return _cs_local(F, tuple(sep), jet_cap, window)


def _cs_local(F, sep, jet_cap, window):
    lp = _linear_part_local(F)
    sep = tuple(GaussRat(s) if isinstance(s, (int, Fraction)) else s for s in sep)
    if lp.norm == 0:
        raise ClassificationError("linear part vanishes; index not available from eigenvalues")
    alpha = _invariant_direction_eigenvalue(lp.J, sep, lp.norm)
    tr = lp.trace
    other = tr - alpha
    alpha_zero = (not alpha) if isinstance(alpha, GaussRat) else abs(complex(alpha)) <= window * lp.norm
    other_zero = (not other) if isinstance(other, GaussRat) else abs(complex(other)) <= window * lp.norm
    if alpha_zero and other_zero:
        raise ClassificationError("nilpotent linear part; index not available from eigenvalues")
    if alpha_zero:
        sc = classify_local(F, jet_cap, window)
        if sc.kind != SADDLE_NODE or sc.lambda_formal is None:
            raise ClassificationError("central index unknown at the jet cap")
        return sc.lambda_formal
    if other_zero:
        return ZERO if isinstance(other, GaussRat) else 0j
    return other / alpha


@dataclass
class IndexEntry:
    point: ProjectivePoint
    direction: tuple
    cs: object
    kind: str = None
    ambiguous: bool = False

    def to_json(self):
        return {
            "point": self.point.to_json(),
            "direction": [json_complex(v) for v in self.direction],
            "cs": json_complex(self.cs),
            "cs_exact": exact_string(self.cs),
            "kind": self.kind,
            "ambiguous": self.ambiguous,
        }


@dataclass
class IndexReport:
    line: Line
    entries: list
    total: object
    expected: int = 1
    passed: object = None
    ambiguous: bool = False
    errors: list = field(default_factory=list)

    def to_json(self):
        return {
            "line": self.line.to_json(),
            "entries": [e.to_json() for e in self.entries],
            "sum": None if self.total is None else json_complex(self.total),
            "sum_exact": None if self.total is None else exact_string(self.total),
            "expected": self.expected,
            "pass": self.passed,
            "ambiguous": self.ambiguous,
            "errors": list(self.errors),
        }


def cs_sum_on_line(vf, line, tol=1e-8, jet_cap=DEFAULT_JET_CAP, window=DEFAULT_WINDOW, root_tol=1e-9):
    """Sum of indices over the singular points on an invariant projective line."""
    if line.kind == "infinity":
        if not linf_invariant(vf):
            raise FolianaError("the line at infinity is not invariant")
    elif not line_invariant(vf, line):
        raise FolianaError(f"line {line.label()} is not invariant")
    entries, errors = [], []
    ambiguous = False
    for sp in singularities(vf, root_tol):
        if not line.contains(sp.point):
            continue
        d = line.direction_at(sp.point)
        try:
            F = local_field(vf, sp.point)
            sc = classify_local(F, jet_cap, window)
            cs = _cs_local(F, d, jet_cap, window)
        except FolianaError as exc:
            errors.append({"point": sp.point.label(), "kind": exc.kind, "message": str(exc)})
            continue
        ambiguous = ambiguous or sc.ambiguous
        entries.append(IndexEntry(sp.point, d, cs, sc.kind, sc.ambiguous))
    if errors:
        return IndexReport(line, entries, None, passed=None, ambiguous=ambiguous, errors=errors)
    total = ZERO
    for e in entries:
        total = total + e.cs
    if isinstance(total, GaussRat):
        passed = total == ONE
    else:
        passed = abs(complex(total) - 1) < tol
    return IndexReport(line, entries, total, passed=passed, ambiguous=ambiguous)
