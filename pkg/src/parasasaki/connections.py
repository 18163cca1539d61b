"""Levi-Civita and generalized symmetric metric (GSM) connections in a
left-invariant frame, with torsion, curvature, Ricci and scalar curvature.

All frame components are constant, so every derivative of a component
vanishes and connection coefficients act purely algebraically.  The
parameters alpha and beta are polynomial indeterminates (constant functions).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .algebra import ALPHA, BETA, ONE, ZERO, Poly
from .errors import ConsistencyError, StructureError
from .frames import (
    ApapRStructure,
    FrameAlgebra,
    MetricFrame,
    TensorField,
    basis_vector,
    matvec,
)

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class ConnectionCoefficients:
    """gamma[i, j, k] is the e_k-component of nabla_{e_i} e_j."""

    gamma: TensorField
    tag: str = "custom"
    alpha: Poly = ZERO
    beta: Poly = ZERO

    @property
    def dim(self) -> int:
        return self.gamma.dim

    def __getitem__(self, idx) -> Poly:
        return self.gamma[idx]

    def covariant(self, i: int, v) -> tuple:
        """nabla_{e_i} v for a constant-component vector v."""
        n = self.dim
        return tuple(sum((v[m] * self.gamma[i, m, l] for m in range(n) if v[m]), ZERO)
                     for l in range(n))

    def along(self, x, v) -> tuple:
        """nabla_x v for constant-component x and v."""
        n = self.dim
        out = [ZERO] * n
        for i in range(n):
            if x[i]:
                col = self.covariant(i, v)
                out = [a + x[i] * b for a, b in zip(out, col)]
        return tuple(out)

    def substitute(self, bindings) -> "ConnectionCoefficients":
        return ConnectionCoefficients(self.gamma.substitute(bindings), self.tag,
                                      self.alpha.substitute(bindings, strict=False),
                                      self.beta.substitute(bindings, strict=False))


@dataclass(frozen=True)
class CurvatureData:
    """up[i, j, k, l]: e_l-component of R(e_i, e_j) e_k; down[i, j, k, l] = g(R(e_i, e_j) e_k, e_l)."""

    up: TensorField
    down: TensorField


@dataclass(frozen=True)
class StructureDerivatives:
    phi: TensorField  # [i, j, l]: e_l-component of (nabla_{e_i} phi) e_j
    xi: TensorField  # [i, l]: e_l-component of nabla_{e_i} xi
    eta: TensorField  # [i, j]: (nabla_{e_i} eta)(e_j)
    metric: TensorField  # [i, j, k]: (nabla_{e_i} g)(e_j, e_k)


def _delta(i, j) -> Poly:
    return ONE if i == j else ZERO


def _require_equal(label: str, expected: TensorField, computed: TensorField):
    if expected != computed:
        raise ConsistencyError(f"{label}: closed form differs from direct computation",
                               expected.nonzero(), computed.nonzero())


def metric_derivative(c: ConnectionCoefficients, g: MetricFrame) -> TensorField:
    n = c.dim
    gm = g.matrix

    def comp(i, j, k):
        total = ZERO
        for m in range(n):
            total = total - c[i, j, m] * gm[m][k] - c[i, k, m] * gm[j][m]
        return total

    return TensorField.from_function("ddd", n, comp)


def torsion(c: ConnectionCoefficients, fa: FrameAlgebra) -> TensorField:
    """T[i, j, k]: e_k-component of T(e_i, e_j) = nabla_i e_j - nabla_j e_i - [e_i, e_j]."""
    cs = fa.constants
    return TensorField.from_function("ddu", c.dim,
                                     lambda i, j, k: c[i, j, k] - c[j, i, k] - cs[i][j][k])


def levi_civita(fa: FrameAlgebra, g: MetricFrame) -> ConnectionCoefficients:
    """Koszul formula for constant metric components:
    2 g(nabla_x y, z) = g([x,y],z) - g([y,z],x) + g([z,x],y)."""
    n = fa.dim
    if g.dim != n:
        raise StructureError("metric and algebra dimensions differ")
    cs, gm, ginv = fa.constants, g.matrix, g.inverse

    def lowered_bracket(i, j, l):
        return sum((cs[i][j][k] * gm[k][l] for k in range(n) if cs[i][j][k]), ZERO)

    low = {(i, j, l): (lowered_bracket(i, j, l) - lowered_bracket(j, l, i) + lowered_bracket(l, i, j)) * HALF
           for i, j, l in itertools.product(range(n), repeat=3)}

    def comp(i, j, k):
        return sum((ginv[k][l] * low[i, j, l] for l in range(n) if ginv[k][l]), ZERO)

    lc = ConnectionCoefficients(TensorField.from_function("ddu", n, comp), "levi-civita")
    if not torsion(lc, fa).is_zero:
        raise ConsistencyError("Levi-Civita connection is not torsion-free")
    if not metric_derivative(lc, g).is_zero:
        raise ConsistencyError("Levi-Civita connection is not metric")
    return lc


def gsm_difference(s: ApapRStructure, alpha, beta) -> TensorField:
    """H(x, y) = alpha {g(x,y) xi - eta(y) x} + beta {g(phi x, y) xi - eta(y) phi x}."""
    alpha, beta = Poly.coerce(alpha), Poly.coerce(beta)
    g, xi, eta, phi = s.g, s.xi, s.eta, s.phi
    gp = s.g_phi()

    def comp(i, j, k):
        return (alpha * (g[i][j] * xi[k] - eta[j] * _delta(i, k))
                + beta * (gp[i][j] * xi[k] - eta[j] * phi[k][i]))

    return TensorField.from_function("ddu", s.dim, comp)


def gsm_connection(lc: ConnectionCoefficients, s: ApapRStructure, alpha=ALPHA, beta=BETA
                   ) -> ConnectionCoefficients:
    if lc.tag != "levi-civita":
        raise StructureError("gsm_connection needs the Levi-Civita connection as its base")
    alpha, beta = Poly.coerce(alpha), Poly.coerce(beta)
    gsm = ConnectionCoefficients(lc.gamma + gsm_difference(s, alpha, beta), "gsm", alpha, beta)
    residual = metric_derivative(gsm, s.metric)
    if not residual.is_zero:
        raise ConsistencyError("generalized symmetric connection is not metric",
                               {}, residual.nonzero())
    return gsm


def gsm_torsion_closed_form(s: ApapRStructure, alpha=ALPHA, beta=BETA) -> TensorField:
    """alpha {eta(x) y - eta(y) x} + beta {eta(x) phi y - eta(y) phi x}."""
    alpha, beta = Poly.coerce(alpha), Poly.coerce(beta)
    eta, phi = s.eta, s.phi

    def comp(i, j, k):
        return (alpha * (eta[i] * _delta(j, k) - eta[j] * _delta(i, k))
                + beta * (eta[i] * phi[k][j] - eta[j] * phi[k][i]))

    return TensorField.from_function("ddu", s.dim, comp)


def reconstruct_connection_from_torsion(T: TensorField, lc: ConnectionCoefficients,
                                        g: MetricFrame) -> ConnectionCoefficients:
    """The unique metric connection lc + H with torsion T, where
    2 g(H(x,y), z) = g(T(x,y), z) + g(T(z,x), y) + g(T(z,y), x)."""
    n = T.dim
    for i, j, k in itertools.product(range(n), repeat=3):
        if T[i, j, k] != -T[j, i, k]:
            raise StructureError("torsion must be antisymmetric in its vector arguments")
    low = T.lower(2, g.matrix)  # low[a, b, c] = g(T(e_a, e_b), e_c)
    h_low = {(i, j, l): (low[i, j, l] + low[l, i, j] + low[l, j, i]) * HALF
             for i, j, l in itertools.product(range(n), repeat=3)}
    ginv = g.inverse
    H = TensorField.from_function(
        "ddu", n, lambda i, j, k: sum((ginv[k][l] * h_low[i, j, l] for l in range(n) if ginv[k][l]), ZERO))
    return ConnectionCoefficients(lc.gamma + H, "custom")


def covariant_derivative_structure(c: ConnectionCoefficients, s: ApapRStructure) -> StructureDerivatives:
    n = c.dim
    phi, xi, eta = s.phi, s.xi, s.eta

    def d_phi(i, j, l):
        total = ZERO
        for m in range(n):
            total = total + phi[m][j] * c[i, m, l] - c[i, j, m] * phi[l][m]
        return total

    def d_xi(i, l):
        return sum((xi[m] * c[i, m, l] for m in range(n) if xi[m]), ZERO)

    def d_eta(i, j):
        return -sum((c[i, j, m] * eta[m] for m in range(n) if eta[m]), ZERO)

    return StructureDerivatives(
        TensorField.from_function("ddu", n, d_phi),
        TensorField.from_function("du", n, d_xi),
        TensorField.from_function("dd", n, d_eta),
        metric_derivative(c, s.metric),
    )


def curvature(c: ConnectionCoefficients, fa: FrameAlgebra, g: MetricFrame) -> CurvatureData:
    """R(x,y)z = nabla_x nabla_y z - nabla_y nabla_x z - nabla_[x,y] z with constant gamma."""
    n = c.dim
    cs = fa.constants
    gam = c.gamma

    def comp(i, j, k, l):
        total = ZERO
        for m in range(n):
            a = gam[j, k, m]
            if a:
                total = total + a * gam[i, m, l]
            b = gam[i, k, m]
            if b:
                total = total - b * gam[j, m, l]
            cm = cs[i][j][m]
            if cm:
                total = total - cm * gam[m, k, l]
        return total

    up = TensorField.from_function("dddu", n, comp)
    return CurvatureData(up, up.lower(3, g.matrix))


def ricci(R: CurvatureData, g: MetricFrame) -> TensorField:
    """Ric(x, y) = trace of v -> R(v, x) y, i.e. sum_i g^{il} R(e_i, x, y, e_l)."""
    n = R.up.dim
    ginv = g.inverse

    def comp(j, k):
        total = ZERO
        for i in range(n):
            for l in range(n):
                if ginv[i][l]:
                    total = total + ginv[i][l] * R.down[i, j, k, l]
        return total

    return TensorField.from_function("dd", n, comp)


def scalar_curvature(Ric: TensorField, g: MetricFrame) -> Poly:
    n = Ric.dim
    ginv = g.inverse
    return sum((ginv[j][k] * Ric[j, k] for j in range(n) for k in range(n) if ginv[j][k]), ZERO)


# ---------------------------------------------------------------------------
# closed forms valid on para-Sasaki-like bases


def para_sasaki_residual(s: ApapRStructure, lc: ConnectionCoefficients) -> TensorField:
    """(nabla_x phi) y + g(x,y) xi + eta(y) x - 2 eta(x) eta(y) xi, componentwise."""
    d_phi = covariant_derivative_structure(lc, s).phi
    g, xi, eta = s.g, s.xi, s.eta

    def rhs(i, j, l):
        return -g[i][j] * xi[l] - eta[j] * _delta(i, l) + 2 * eta[i] * eta[j] * xi[l]

    return d_phi - TensorField.from_function("ddu", s.dim, rhs)


def _require_para_sasaki(s, lc, what):
    if not para_sasaki_residual(s, lc).is_zero:
        raise StructureError(f"{what} holds only on para-Sasaki-like manifolds")


def gsm_curvature_closed_form(Rlc: CurvatureData, s: ApapRStructure, alpha=ALPHA, beta=BETA,
                              lc: ConnectionCoefficients | None = None) -> CurvatureData:
    """Curvature of the GSM connection for constant alpha, beta, from the
    Levi-Civita curvature.  ``lc`` is used to confirm the para-Sasaki-like
    hypothesis."""
    if lc is not None:
        _require_para_sasaki(s, lc, "the closed-form GSM curvature")
    a, b = Poly.coerce(alpha), Poly.coerce(beta)
    n = s.dim
    g, xi, eta, phi = s.g, s.xi, s.eta, s.phi
    gp = s.g_phi()  # gp[i][j] = g(phi e_i, e_j)
    a2b = a * a + b
    ab = a * b
    a_ab = a - ab
    two_b = 2 * b - b * b

    def comp(i, j, k, l):
        # x = e_i, y = e_j, z = e_k; e_l-component
        px, py = phi[l][i], phi[l][j]
        x, y = _delta(i, l), _delta(j, l)
        total = Rlc.up[i, j, k, l]
        total = total + a_ab * g[j][k] * px
        total = total + two_b * gp[j][k] * px
        total = total + a2b * g[j][k] * eta[i] * xi[l]
        total = total + ab * gp[j][k] * eta[i] * xi[l]
        total = total - a * a * g[j][k] * x
        total = total + a2b * eta[j] * eta[k] * x
        total = total + a_ab * gp[j][k] * x
        total = total + ab * eta[j] * eta[k] * px
        total = total - two_b * gp[i][k] * py
        total = total - a2b * eta[j] * g[i][k] * xi[l]
        total = total - ab * gp[i][k] * eta[j] * xi[l]
        total = total + a * a * g[i][k] * y
        total = total - a2b * eta[i] * eta[k] * y
        total = total - a_ab * gp[i][k] * y
        total = total - a_ab * g[i][k] * py
        total = total - ab * eta[i] * eta[k] * py
        return total

    up = TensorField.from_function("dddu", n, comp)
    return CurvatureData(up, up.lower(3, g))


def gsm_ricci_closed_form(Ric_lc: TensorField, s: ApapRStructure, n: int | None = None,
                          alpha=ALPHA, beta=BETA, lc: ConnectionCoefficients | None = None) -> TensorField:
    """Ric + [b^2 - b + (1-2n) a^2] g + [(2n+1) b - b^2 + (2n-1) a^2] eta(x)eta(y)
    + [(ab - a)(2 - 2n) + a] g(x, phi y)."""
    if lc is not None:
        _require_para_sasaki(s, lc, "the closed-form GSM Ricci tensor")
    n = s.n if n is None else n
    a, b = Poly.coerce(alpha), Poly.coerce(beta)
    cg = b * b - b + (1 - 2 * n) * a * a
    ce = (2 * n + 1) * b - b * b + (2 * n - 1) * a * a
    cp = (a * b - a) * (2 - 2 * n) + a
    g, eta = s.g, s.eta
    gp = s.g_phi()
    return TensorField.from_function(
        "dd", s.dim,
        lambda i, j: Ric_lc[i, j] + cg * g[i][j] + ce * eta[i] * eta[j] + cp * gp[j][i])


def gsm_scalar_closed_form(scal_lc, n: int, alpha=ALPHA, beta=BETA) -> Poly:
    a, b = Poly.coerce(alpha), Poly.coerce(beta)
    return Poly.coerce(scal_lc) + 2 * n * (b * b + (1 - 2 * n) * a * a)


def gsm_structure_derivatives_closed_form(s: ApapRStructure, alpha=ALPHA, beta=BETA) -> StructureDerivatives:
    """GSM derivatives of phi, xi, eta on a para-Sasaki-like base (metric part is zero)."""
    a, b = Poly.coerce(alpha), Poly.coerce(beta)
    n = s.dim
    g, xi, eta, phi = s.g, s.xi, s.eta, s.phi
    gp = s.g_phi()
    phi2 = [[sum((phi[l][m] * phi[m][i] for m in range(n)), ZERO) for i in range(n)] for l in range(n)]
    g_pp = [[g[i][j] - eta[i] * eta[j] for j in range(n)] for i in range(n)]  # g(phi x, phi y)

    def d_phi(i, j, l):
        return ((b - 1) * (g_pp[i][j] * xi[l] + eta[j] * phi2[l][i])
                + a * (gp[j][i] * xi[l] + eta[j] * phi[l][i]))

    def d_xi(i, l):
        return (1 - b) * phi[l][i] - a * phi2[l][i]

    def d_eta(i, j):
        # metric connection: (nabla~_x eta) y = g(nabla~_x xi, y)
        return (1 - b) * gp[i][j] - a * (g[i][j] - eta[i] * eta[j])

    return StructureDerivatives(
        TensorField.from_function("ddu", n, d_phi),
        TensorField.from_function("du", n, d_xi),
        TensorField.from_function("dd", n, d_eta),
        TensorField("ddd", n),
    )


def gsm_eta_derivative_printed(s: ApapRStructure, alpha=ALPHA, beta=BETA) -> TensorField:
    """(1-b) g(phi x, y) - a g(x, y) + eta(x) eta(y): unweighted eta (x) eta
    term, kept for comparison.  Differs from g(nabla~_x xi, y) at (xi, xi)
    unless a = 1."""
    a, b = Poly.coerce(alpha), Poly.coerce(beta)
    g, eta, gp = s.g, s.eta, s.g_phi()
    return TensorField.from_function(
        "dd", s.dim, lambda i, j: (1 - b) * gp[i][j] - a * g[i][j] + eta[i] * eta[j])


def curvature_on_xi(R: CurvatureData, s: ApapRStructure) -> TensorField:
    """[i, j, l]: e_l-component of R(e_i, e_j) xi."""
    n = s.dim
    xi = s.xi
    return TensorField.from_function(
        "ddu", n, lambda i, j, l: sum((xi[k] * R.up[i, j, k, l] for k in range(n) if xi[k]), ZERO))


def gsm_curvature_on_xi_closed_form(s: ApapRStructure, alpha=ALPHA, beta=BETA) -> TensorField:
    """R(x,y) xi = a eta(y) phi x + (b-1) eta(y) x - (b-1) eta(x) y - a eta(x) phi y."""
    a, b = Poly.coerce(alpha), Poly.coerce(beta)
    eta, phi = s.eta, s.phi
    return TensorField.from_function(
        "ddu", s.dim,
        lambda i, j, l: (a * eta[j] * phi[l][i] + (b - 1) * eta[j] * _delta(i, l)
                         - (b - 1) * eta[i] * _delta(j, l) - a * eta[i] * phi[l][j]))


def curvature_xi_y_xi(R: CurvatureData, s: ApapRStructure) -> TensorField:
    """[j, l]: e_l-component of R(xi, e_j) xi."""
    n = s.dim
    on_xi = curvature_on_xi(R, s)
    xi = s.xi
    return TensorField.from_function(
        "du", n, lambda j, l: sum((xi[i] * on_xi[i, j, l] for i in range(n) if xi[i]), ZERO))


def gsm_curvature_xi_y_xi_closed_form(s: ApapRStructure, alpha=ALPHA, beta=BETA) -> TensorField:
    """R(xi, y) xi = (1 - b) phi^2 y - a phi y."""
    a, b = Poly.coerce(alpha), Poly.coerce(beta)
    n = s.dim
    phi = s.phi
    return TensorField.from_function(
        "du", n,
        lambda j, l: (1 - b) * sum((phi[l][m] * phi[m][j] for m in range(n)), ZERO) - a * phi[l][j])


# ---------------------------------------------------------------------------
# function jets and differential operators


@dataclass(frozen=True)
class FunctionJet:
    """Value, first frame derivatives (e_i f) and second frame derivatives
    second[i][j] = e_i(e_j f) of a function at a point."""

    value: Poly
    first: tuple
    second: tuple

    def __post_init__(self):
        object.__setattr__(self, "value", Poly.coerce(self.value))
        object.__setattr__(self, "first", tuple(Poly.coerce(v) for v in self.first))
        object.__setattr__(self, "second", tuple(tuple(Poly.coerce(v) for v in r) for r in self.second))

    @classmethod
    def zero(cls, n: int) -> "FunctionJet":
        return cls(ZERO, (ZERO,) * n, ((ZERO,) * n,) * n)

    def commutator_residual(self, fa: FrameAlgebra):
        """First (i, j, residual) violating e_i e_j f - e_j e_i f = [e_i, e_j] f."""
        n = fa.dim
        for i in range(n):
            for j in range(i + 1, n):
                lie = sum((fa.constants[i][j][k] * self.first[k] for k in range(n)), ZERO)
                r = self.second[i][j] - self.second[j][i] - lie
                if not r.is_zero:
                    return i, j, r
        return None

    def derivative_along(self, x) -> Poly:
        return sum((xi * fi for xi, fi in zip(x, self.first)), ZERO)


@dataclass(frozen=True)
class JetOperators:
    div: Poly
    div_bar: Poly
    hess: tuple  # hess[i][j] = Hess f(e_i, e_j)
    hess_bar: tuple
    laplacian: Poly
    laplacian_bar: Poly

    @staticmethod
    def bilinear(m, x, y) -> Poly:
        n = len(m)
        return sum((x[i] * y[j] * m[i][j] for i in range(n) for j in range(n) if x[i] and y[j]), ZERO)


def _operators(c: ConnectionCoefficients, jet: FunctionJet, x, g: MetricFrame):
    n = c.dim
    ginv, gm = g.inverse, g.matrix
    div = sum((x[m] * c[i, m, i] for i in range(n) for m in range(n) if x[m]), ZERO)
    grad = matvec(ginv, jet.first)
    # nabla_{e_i} grad f, including the frame derivatives of its components
    nab = [[sum((ginv[a][b] * jet.second[i][b] for b in range(n)), ZERO)
            + sum((grad[m] * c[i, m, a] for m in range(n) if grad[m]), ZERO)
            for a in range(n)] for i in range(n)]
    hess = tuple(tuple(sum((nab[i][a] * gm[a][j] for a in range(n)), ZERO) for j in range(n))
                 for i in range(n))
    lap = sum((nab[i][i] for i in range(n)), ZERO)
    return div, hess, lap


def jet_operators(jet: FunctionJet, x, s: ApapRStructure, lc: ConnectionCoefficients,
                  fa: FrameAlgebra, alpha=ALPHA, beta=BETA) -> JetOperators:
    """Divergence of the constant-component field x, Hessian and Laplacian of
    f for both connections.  The GSM values are computed directly from the
    GSM coefficients and checked against the closed-form corrections."""
    bad = jet.commutator_residual(fa)
    if bad is not None:
        i, j, r = bad
        raise StructureError(
            f"inconsistent jet: e{i} e{j} f - e{j} e{i} f - [e{i}, e{j}] f = {r}")
    a, b = Poly.coerce(alpha), Poly.coerce(beta)
    x = tuple(Poly.coerce(v) for v in x)
    n = s.dim
    gsm = gsm_connection(lc, s, a, b)
    div, hess, lap = _operators(lc, jet, x, s.metric)
    div_bar, hess_bar, lap_bar = _operators(gsm, jet, x, s.metric)

    eta_x = sum((e * v for e, v in zip(s.eta, x)), ZERO)
    xi_f = jet.derivative_along(s.xi)
    g, gp = s.g, s.g_phi()
    k = s.n
    div_cf = div - 2 * k * a * eta_x
    lap_cf = lap - 2 * k * a * xi_f

    def hess_cf(i, j):
        phi_ei = tuple(s.phi[m][i] for m in range(n))
        return (hess[i][j] + a * jet.first[i] * s.eta[j] - a * xi_f * g[i][j]
                + b * jet.derivative_along(phi_ei) * s.eta[j] - b * xi_f * gp[i][j])

    hess_closed = tuple(tuple(hess_cf(i, j) for j in range(n)) for i in range(n))
    if div_cf != div_bar:
        raise ConsistencyError("GSM divergence differs from its closed form",
                               {(): div_cf}, {(): div_bar})
    if lap_cf != lap_bar:
        raise ConsistencyError("GSM Laplacian differs from its closed form",
                               {(): lap_cf}, {(): lap_bar})
    if hess_closed != hess_bar:
        to_table = lambda m: {(i, j): m[i][j] for i in range(n) for j in range(n) if m[i][j]}
        raise ConsistencyError("GSM Hessian differs from its closed form",
                               to_table(hess_closed), to_table(hess_bar))
    return JetOperators(div, div_bar, hess, hess_bar, lap, lap_bar)


def semi_symmetric_connection(lc: ConnectionCoefficients, s: ApapRStructure) -> TensorField:
    """nabla_x y + g(x,y) xi - eta(y) x, built independently of gsm_connection."""
    g, xi, eta = s.g, s.xi, s.eta
    return TensorField.from_function(
        "ddu", s.dim, lambda i, j, k: lc[i, j, k] + g[i][j] * xi[k] - eta[j] * _delta(i, k))


def quarter_symmetric_connection(lc: ConnectionCoefficients, s: ApapRStructure) -> TensorField:
    """nabla_x y + g(phi x, y) xi - eta(y) phi x."""
    xi, eta, phi = s.xi, s.eta, s.phi
    n = s.dim
    g = s.g

    def comp(i, j, k):
        g_phi_x_y = sum((phi[m][i] * g[m][j] for m in range(n)), ZERO)
        return lc[i, j, k] + g_phi_x_y * xi[k] - eta[j] * phi[k][i]

    return TensorField.from_function("ddu", n, comp)


def vector_of(i: int, n: int) -> tuple:
    return basis_vector(n, i)
