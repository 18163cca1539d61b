"""Para-Sasaki-like test, Lie derivatives of the metric, and the constant
triples of para-Einstein-like manifolds and para-Ricci-like solitons."""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import ALPHA, BETA, ZERO, LinearSystem, Poly, solve_exact
from .connections import (
    ConnectionCoefficients,
    TensorField,
    para_sasaki_residual,
)
from .errors import ConsistencyError, StructureError
from .frames import ApapRStructure, MetricFrame, associated_metric

K_NAME = "k"


@dataclass
class EinsteinTriple:
    """Ric = a g + b g~ + c eta (x) eta."""

    a: Poly | None
    b: Poly | None
    c: Poly | None
    kind: str
    status: str = "unique"
    free: tuple = ()
    family: dict = field(default_factory=dict)

    def as_tuple(self) -> tuple:
        return (self.a, self.b, self.c)

    @property
    def is_einstein(self) -> bool:
        return self.status == "unique" and self.b.is_zero and self.c.is_zero

    @property
    def is_eta_einstein(self) -> bool:
        return self.status == "unique" and self.b.is_zero

    @property
    def is_para_einstein_like(self) -> bool:
        return self.status == "unique"


@dataclass
class SolitonTriple:
    """1/2 L_v g + Ric + lambda g + mu g~ + nu eta (x) eta = 0."""

    lam: Poly | None
    mu: Poly | None
    nu: Poly | None
    kind: str
    potential: str = "xi"
    status: str = "unique"
    free: tuple = ()
    family: dict = field(default_factory=dict)

    def as_tuple(self) -> tuple:
        return (self.lam, self.mu, self.nu)


def is_para_sasaki_like(s: ApapRStructure, lc: ConnectionCoefficients) -> tuple:
    """(flag, residual) where residual = nabla phi minus the para-Sasaki-like right-hand side."""
    residual = para_sasaki_residual(s, lc)
    return residual.is_zero, residual


def lie_derivative_metric(v, c: ConnectionCoefficients, g: MetricFrame) -> TensorField:
    """(L_v g)(x, y) = g(nabla_x v, y) + g(x, nabla_y v) for constant-component v."""
    n = c.dim
    v = tuple(Poly.coerce(x) for x in v)
    gm = g.matrix
    cov = [c.covariant(i, v) for i in range(n)]  # cov[i][l]: e_l-component of nabla_{e_i} v
    low = [[sum((cov[i][l] * gm[l][j] for l in range(n) if cov[i][l]), ZERO) for j in range(n)]
           for i in range(n)]
    return TensorField.from_function("dd", n, lambda i, j: low[i][j] + low[j][i])


def gsm_lie_xi_closed_form(L_xi_lc: TensorField, s: ApapRStructure, alpha=ALPHA, beta=BETA) -> TensorField:
    """L~_xi g = L_xi g - 2a g(phi x, phi y) - 2b g(phi x, y)."""
    a, b = Poly.coerce(alpha), Poly.coerce(beta)
    g, eta = s.g, s.eta
    gp = s.g_phi()
    return TensorField.from_function(
        "dd", s.dim,
        lambda i, j: L_xi_lc[i, j] - 2 * a * (g[i][j] - eta[i] * eta[j]) - 2 * b * gp[i][j])


def collinear_lie_derivative_printed(L_v_lc: TensorField, s: ApapRStructure, k,
                                     alpha=ALPHA, beta=BETA) -> TensorField:
    """L_v g + 2 a k eta(x) eta(y) - 2 a k g(x, y) - 2 b g(x, phi y), with v = k xi,
    exactly as stated for collinear potentials."""
    a, b, k = Poly.coerce(alpha), Poly.coerce(beta), Poly.coerce(k)
    g, eta = s.g, s.eta
    gp = s.g_phi()
    return TensorField.from_function(
        "dd", s.dim,
        lambda i, j: (L_v_lc[i, j] + 2 * a * k * eta[i] * eta[j] - 2 * a * k * g[i][j]
                      - 2 * b * gp[j][i]))


def gsm_lie_derivative(v, gsm: ConnectionCoefficients, s: ApapRStructure, alpha=ALPHA, beta=BETA,
                       lc: ConnectionCoefficients | None = None, k=None) -> TensorField:
    """Lie derivative of g along v = xi (``k`` None) or v = k xi computed with
    the GSM connection.  When ``lc`` is given the result is checked against
    k times the xi closed form."""
    v = tuple(Poly.coerce(x) for x in v)
    factor = Poly.coerce(1 if k is None else k)
    if v != tuple(factor * x for x in s.xi):
        raise StructureError("potential must be xi or a constant multiple k xi")
    direct = lie_derivative_metric(v, gsm, s.metric)
    if lc is not None:
        L_xi = lie_derivative_metric(s.xi, lc, s.metric)
        expected = gsm_lie_xi_closed_form(L_xi, s, alpha, beta).scale(factor)
        if expected != direct:
            raise ConsistencyError("GSM Lie derivative differs from its closed form",
                                   expected.nonzero(), direct.nonzero())
    return direct


def _solve_triple(target: TensorField, s: ApapRStructure, names: tuple):
    n = s.dim
    g, gt, eta = s.g, associated_metric(s), s.eta
    rows, rhs = [], []
    for i in range(n):
        for j in range(n):
            rows.append((g[i][j], gt[i][j], eta[i] * eta[j]))
            rhs.append(target[i, j])
    return solve_exact(LinearSystem(rows, rhs, names))


def _einstein_kind(b, c) -> str:
    if b.is_zero and c.is_zero:
        return "einstein"
    if b.is_zero:
        return "eta-einstein"
    return "para-einstein-like"


def _soliton_kind(mu, nu) -> str:
    if mu.is_zero and nu.is_zero:
        return "ricci"
    if mu.is_zero:
        return "eta-ricci"
    return "para-ricci-like"


def _as_poly(value):
    if isinstance(value, Poly):
        return value
    raise StructureError(f"constant {value} is not polynomial in the parameters")


def solve_einstein_like(Ric: TensorField, s: ApapRStructure) -> EinsteinTriple:
    sol = _solve_triple(Ric, s, ("a", "b", "c"))
    if sol.status == "inconsistent":
        return EinsteinTriple(None, None, None, "none", "inconsistent")
    if sol.status == "underdetermined":
        return EinsteinTriple(None, None, None, "none", "underdetermined", sol.free, sol.family)
    a, b, c = (_as_poly(sol[x]) for x in ("a", "b", "c"))
    return EinsteinTriple(a, b, c, _einstein_kind(b, c))


def solve_soliton(Lvg: TensorField, Ric: TensorField, s: ApapRStructure,
                  potential: str = "xi") -> SolitonTriple:
    target = (Lvg.scale(Poly.const(1) / 2) + Ric).scale(-1)
    sol = _solve_triple(target, s, ("lambda", "mu", "nu"))
    if sol.status == "inconsistent":
        return SolitonTriple(None, None, None, "none", potential, "inconsistent")
    if sol.status == "underdetermined":
        return SolitonTriple(None, None, None, "none", potential, "underdetermined", sol.free, sol.family)
    lam, mu, nu = (_as_poly(sol[x]) for x in ("lambda", "mu", "nu"))
    return SolitonTriple(lam, mu, nu, _soliton_kind(mu, nu), potential)


def gsm_einstein_constants(a, b, c, n: int, alpha=ALPHA, beta=BETA) -> EinsteinTriple:
    a, b, c = (Poly.coerce(x) for x in (a, b, c))
    al, be = Poly.coerce(alpha), Poly.coerce(beta)
    lam = be * be - be + (1 - 2 * n) * al * al + a
    mu = (2 - 2 * n) * (al * be - al) + al + b
    nu = ((2 * n - 1) * al * al + (2 * n - 2) * al * be + (1 - 2 * n) * al
          + (2 * n + 1) * be - be * be + c)
    return EinsteinTriple(lam, mu, nu, _einstein_kind(mu, nu))


def gsm_soliton_constants(a, b, c, n: int, alpha=ALPHA, beta=BETA) -> SolitonTriple:
    a, b, c = (Poly.coerce(x) for x in (a, b, c))
    al, be = Poly.coerce(alpha), Poly.coerce(beta)
    lam = (2 * n - 1) * al * al - be * be + al + be + a
    mu = 2 * (n - 1) * al * be + (1 - 2 * n) * al + be + b
    nu = be * be + (1 - 2 * n) * al * al + (al - al * be) * (2 * n - 2) - (2 * n + 2) * be + c
    return SolitonTriple(lam, mu, nu, _soliton_kind(mu, nu))


def collinear_constants_printed(a, b, c, k, n: int, alpha=ALPHA, beta=BETA) -> SolitonTriple:
    """Constants for a potential v = k xi as printed; the printed formulas do
    not involve k, which is accepted for interface symmetry."""
    a, b, c = (Poly.coerce(x) for x in (a, b, c))
    al, be = Poly.coerce(alpha), Poly.coerce(beta)
    lam = a + al * b - be * be + be + (2 * n - 1) * al * al
    mu = b + be * b + (al - al * be) * (2 * n - 2)
    nu = (al * b - (2 * n + 1) * be + be * be + (1 - 2 * n) * al * al + c - be * b
          + (al * be - al) * (2 * n - 2))
    return SolitonTriple(lam, mu, nu, _soliton_kind(mu, nu), potential="k xi")


def collinear_constants_derived(a, b, c, k, n: int, alpha=ALPHA, beta=BETA) -> SolitonTriple:
    """Constants obtained by substituting L~_{k xi} g = k L~_xi g and the
    closed-form GSM Ricci tensor into the soliton equation."""
    a, b, c, k = (Poly.coerce(x) for x in (a, b, c, k))
    al, be = Poly.coerce(alpha), Poly.coerce(beta)
    cg = be * be - be + (1 - 2 * n) * al * al
    ce = (2 * n + 1) * be - be * be + (2 * n - 1) * al * al
    cp = (al * be - al) * (2 - 2 * n) + al
    lam = a + k * al - cg
    mu = b + k * be - cp
    nu = c - ce - k * al + cp - k * be
    return SolitonTriple(lam, mu, nu, _soliton_kind(mu, nu), potential="k xi")
