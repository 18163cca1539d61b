"""Full pipeline over one manifold and the reports built from it."""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property

from . import classify as cl
from . import connections as cn
from .algebra import ALPHA, ALPHA_NAME, BETA, BETA_NAME, ONE, ZERO, Poly
from .errors import ConsistencyError, StructureError
from .fixtures import (
    PrintedTables,
    SymmetryConflict,
    expand_connection,
    expand_curvature,
    expand_symmetric,
    parse_triple,
    printed_for,
)
from .frames import TensorField, validate_apapr
from .manifold_io import Manifold, format_vector
from .report import Report, Section
from .sampling import random_jet, random_vector

K = Poly.var(cl.K_NAME)
KINDS = ("lc", "gsm")


class Workbench:
    def __init__(self, manifold: Manifold, alpha=ALPHA, beta=BETA):
        self.manifold = manifold
        self.fa = manifold.algebra
        self.s = manifold.structure
        self.alpha = Poly.coerce(alpha)
        self.beta = Poly.coerce(beta)
        self._curv: dict = {}

    @classmethod
    def from_structure(cls, fa, s, alpha=ALPHA, beta=BETA) -> "Workbench":
        """Workbench for an algebra and structure that did not come from a file."""
        return cls(Manifold(None, fa, s), alpha, beta)

    @property
    def names(self) -> tuple:
        return self.fa.names

    @property
    def n(self) -> int:
        return self.s.n

    @cached_property
    def validation(self):
        return validate_apapr(self.fa, self.s)

    @cached_property
    def lc(self) -> cn.ConnectionCoefficients:
        return cn.levi_civita(self.fa, self.s.metric)

    @cached_property
    def gsm(self) -> cn.ConnectionCoefficients:
        return cn.gsm_connection(self.lc, self.s, self.alpha, self.beta)

    def connection(self, kind: str) -> cn.ConnectionCoefficients:
        return self.lc if kind == "lc" else self.gsm

    def curvature(self, kind: str) -> cn.CurvatureData:
        if kind not in self._curv:
            self._curv[kind] = cn.curvature(self.connection(kind), self.fa, self.s.metric)
        return self._curv[kind]

    def ricci(self, kind: str) -> TensorField:
        return cn.ricci(self.curvature(kind), self.s.metric)

    def scalar(self, kind: str) -> Poly:
        return cn.scalar_curvature(self.ricci(kind), self.s.metric)

    @cached_property
    def para_sasaki(self) -> tuple:
        return cl.is_para_sasaki_like(self.s, self.lc)

    def lie_derivative(self, kind: str, potential: str = "xi") -> TensorField:
        k = None if potential == "xi" else K
        v = self.s.xi if k is None else tuple(K * x for x in self.s.xi)
        if kind == "lc":
            return cl.lie_derivative_metric(v, self.lc, self.s.metric)
        return cl.gsm_lie_derivative(v, self.gsm, self.s, self.alpha, self.beta, self.lc, k)

    def einstein(self, kind: str) -> cl.EinsteinTriple:
        return cl.solve_einstein_like(self.ricci(kind), self.s)

    def soliton(self, kind: str, potential: str = "xi") -> cl.SolitonTriple:
        return cl.solve_soliton(self.lie_derivative(kind, potential), self.ricci(kind), self.s,
                                potential if potential == "xi" else "k xi")


# ---------------------------------------------------------------------------
# rendering helpers


def index_label(names, idx) -> str:
    return "(" + ",".join(names[i] if i < len(names) else str(i) for i in idx) + ")"


def table_section(parent: Section, name: str, names, table: dict, prefix: str = "") -> Section:
    sec = parent.section(name)
    for idx in sorted(table):
        sec.add(prefix + index_label(names, idx), table[idx])
    if not table:
        sec.add("nonzero components", "none")
    return sec


def add_validation(report: Report, wb: Workbench) -> bool:
    sec = report.section("validation")
    for ax in wb.validation.axioms:
        sec.add(ax.name, "pass" if ax.passed else f"FAIL: {ax.detail}")
    sec.add("structure", "valid" if wb.validation.ok else "invalid")
    return wb.validation.ok


def add_params(report: Report, wb: Workbench, kind: str | None = None):
    sec = report.section("input")
    sec.add("dimension", str(wb.fa.dim))
    sec.add("frame", ", ".join(wb.names))
    if wb.manifold.spec.params:
        sec.add("params", ", ".join(wb.manifold.spec.params))
    if kind is not None:
        sec.add("connection", "levi-civita" if kind == "lc" else "generalized symmetric metric")
        if kind == "gsm":
            sec.add("alpha", wb.alpha)
            sec.add("beta", wb.beta)


def connection_report(wb: Workbench, kind: str) -> Report:
    r = Report("connection")
    add_params(r, wb, kind)
    c = wb.connection(kind)
    sec = r.section("coefficients")
    n = wb.fa.dim
    for i in range(n):
        for j in range(n):
            vec = tuple(c[i, j, k] for k in range(n))
            if any(v for v in vec):
                sec.add(f"nabla_{wb.names[i]} {wb.names[j]}", format_vector(vec, wb.names))
    return r


def curvature_report(wb: Workbench, kind: str) -> Report:
    r = Report("curvature")
    add_params(r, wb, kind)
    sec = r.section("curvature")
    sec.add("convention", "R(i,j,k,l) = g(R(e_i,e_j)e_k, e_l)")
    for idx, v in sorted(wb.curvature(kind).down.nonzero().items()):
        sec.add("R" + index_label(wb.names, idx), v)
    return r


def ricci_report(wb: Workbench, kind: str) -> Report:
    r = Report("ricci")
    add_params(r, wb, kind)
    sec = r.section("ricci")
    for idx, v in sorted(wb.ricci(kind).nonzero().items()):
        sec.add("Ric" + index_label(wb.names, idx), v)
    return r


def scalar_report(wb: Workbench, kind: str) -> Report:
    r = Report("scalar")
    add_params(r, wb, kind)
    r.section("scalar").add("scal", wb.scalar(kind))
    return r


def _add_triple(sec: Section, keys, triple, kind, status, free, family):
    if status == "unique":
        for key, v in zip(keys, triple):
            sec.add(key, v)
    elif status == "underdetermined":
        sec.add("free parameters", ", ".join(free))
        for name, (part, coeffs) in family.items():
            terms = " + ".join(f"({c})*{f}" for f, c in coeffs.items())
            sec.add(name, f"{part} + {terms}" if terms else str(part))
    sec.add("status", status)
    sec.add("kind", kind)


def einstein_section(parent: Report, wb: Workbench, kind: str, name: str = "einstein") -> cl.EinsteinTriple:
    t = wb.einstein(kind)
    sec = parent.section(name)
    _add_triple(sec, ("a", "b", "c"), t.as_tuple(), t.kind, t.status, t.free, t.family)
    return t


def soliton_section(parent: Report, wb: Workbench, kind: str, potential: str = "xi",
                    name: str = "soliton") -> cl.SolitonTriple:
    t = wb.soliton(kind, potential)
    sec = parent.section(name)
    sec.add("potential", "xi" if potential == "xi" else "k*xi")
    _add_triple(sec, ("lambda", "mu", "nu"), t.as_tuple(), t.kind, t.status, t.free, t.family)
    return t


def einstein_report(wb: Workbench, kind: str) -> tuple:
    r = Report("einstein")
    add_params(r, wb, kind)
    t = einstein_section(r, wb, kind)
    return r, t


def soliton_report(wb: Workbench, kind: str, potential: str) -> tuple:
    r = Report("soliton")
    add_params(r, wb, kind)
    t = soliton_section(r, wb, kind, potential)
    return r, t


def classify_report(wb: Workbench) -> Report:
    r = Report("classify")
    add_params(r, wb)
    flag, residual = wb.para_sasaki
    sec = r.section("para-sasaki-like")
    sec.add("flag", "true" if flag else "false")
    if not flag:
        table_section(sec, "residual", wb.names, residual.nonzero())
    einstein_section(r, wb, "lc", "einstein (levi-civita)")
    soliton_section(r, wb, "lc", "xi", "soliton (levi-civita)")
    return r


# ---------------------------------------------------------------------------
# cross-checks


@dataclass
class Check:
    label: str
    status: str  # pass | FAIL | paper-vs-computed | skipped
    detail: str = ""
    expected: object = None
    computed: object = None


class CheckList:
    def __init__(self, names):
        self.names = names
        self.checks: list = []

    @staticmethod
    def _table(t) -> dict:
        if isinstance(t, TensorField):
            return t.nonzero()
        # None marks a constant that has no unique value
        return {k: v for k, v in t.items() if v is None or not Poly.coerce(v).is_zero}

    def identity(self, label: str, expected, computed):
        expected, computed = self._table(expected), self._table(computed)
        ok = expected == computed
        self.checks.append(Check(label, "pass" if ok else "FAIL", "", expected, computed))
        return ok

    def run(self, label: str, fn):
        """Run fn(); ConsistencyError becomes a failed identity carrying its tables."""
        try:
            result = fn()
        except ConsistencyError as exc:
            self.checks.append(Check(label, "FAIL", str(exc), exc.expected, exc.computed))
            return None
        self.checks.append(Check(label, "pass"))
        return result

    def printed(self, label: str, printed, computed):
        printed, computed = self._table(printed), self._table(computed)
        ok = printed == computed
        self.checks.append(Check(label, "pass" if ok else "paper-vs-computed", "", printed, computed))

    def skip(self, label: str, reason: str):
        self.checks.append(Check(label, "skipped", reason))

    @property
    def failed(self) -> bool:
        return any(c.status == "FAIL" for c in self.checks)

    def render(self, sec: Section):
        for c in self.checks:
            if c.status == "pass":
                sec.add(c.label, "pass")
            elif c.status == "skipped":
                sec.add(c.label, f"skipped ({c.detail})")
            else:
                value = c.status if not c.detail else f"{c.status}: {c.detail}"
                sec.add(c.label, value)
                tag = "printed" if c.status == "paper-vs-computed" else "expected"
                if set(c.expected or {}) | set(c.computed or {}) <= {()}:
                    sec.add(f"{c.label} [{tag}]", (c.expected or {}).get((), 0))
                    sec.add(f"{c.label} [computed]", (c.computed or {}).get((), 0))
                elif c.expected is not None:
                    table_section(sec, f"{c.label} [{tag}]", self.names, c.expected)
                    table_section(sec, f"{c.label} [computed]", self.names, c.computed)


def identity_checks(wb: Workbench, ck: CheckList) -> bool:
    """False when a connection could not be built at all."""
    s, fa = wb.s, wb.fa
    a, b = wb.alpha, wb.beta
    n = fa.dim
    lc = ck.run("Levi-Civita connection is torsion-free and metric", lambda: wb.lc)
    if lc is None:
        return False
    gsm = ck.run("GSM connection is metric", lambda: wb.gsm)
    if gsm is None:
        return False
    ck.identity("GSM torsion equals its closed form",
                cn.gsm_torsion_closed_form(s, a, b), cn.torsion(gsm, fa))
    T = cn.gsm_torsion_closed_form(s, a, b)
    ck.identity("metric connection with GSM torsion is the GSM connection",
                gsm.gamma, cn.reconstruct_connection_from_torsion(T, lc, s.metric).gamma)
    full = cn.gsm_connection(lc, s)
    ck.identity("alpha=1, beta=0 gives the semi-symmetric metric connection",
                cn.semi_symmetric_connection(lc, s), full.gamma.substitute({ALPHA_NAME: 1, BETA_NAME: 0}))
    ck.identity("alpha=0, beta=1 gives the quarter-symmetric metric connection",
                cn.quarter_symmetric_connection(lc, s), full.gamma.substitute({ALPHA_NAME: 0, BETA_NAME: 1}))
    ck.run("GSM Lie derivative along xi equals its closed form", lambda: wb.lie_derivative("gsm"))
    rng = random.Random(20240601)
    jet = random_jet(fa, rng)
    x = random_vector(n, rng)
    ck.run("GSM divergence, Hessian and Laplacian equal their closed forms",
           lambda: cn.jet_operators(jet, x, s, lc, fa, a, b))
    for kind, label in (("lc", "Levi-Civita"), ("gsm", "GSM")):
        R = wb.curvature(kind).down
        ck.identity(f"{label} curvature is antisymmetric in its first pair", R,
                    TensorField.from_function("dddd", n, lambda i, j, k, l: -R[j, i, k, l]))
        ck.identity(f"{label} curvature is antisymmetric in its last pair", R,
                    TensorField.from_function("dddd", n, lambda i, j, k, l: -R[i, j, l, k]))
    return True


def para_sasaki_checks(wb: Workbench, ck: CheckList) -> bool:
    s, fa, lc = wb.s, wb.fa, wb.lc
    a, b = wb.alpha, wb.beta
    n, k = fa.dim, wb.n
    flag, residual = wb.para_sasaki
    if not flag:
        ck.skip("para-Sasaki-like identities", "base is not para-Sasaki-like")
        return False
    d = cn.covariant_derivative_structure(lc, s)
    phi, xi, eta, g = s.phi, s.xi, s.eta, s.g
    ck.identity("nabla_x xi is phi x", TensorField.from_function("du", n, lambda i, l: phi[l][i]), d.xi)
    ck.identity("(nabla_x eta) y is g(x, phi y)",
                TensorField.from_function("dd", n, lambda i, j: s.g_phi()[j][i]), d.eta)
    R = wb.curvature("lc")
    ck.identity("R(x,y) xi is -eta(y) x + eta(x) y",
                TensorField.from_function("ddu", n, lambda i, j, l: -eta[j] * (ONE if i == l else ZERO)
                                          + eta[i] * (ONE if j == l else ZERO)),
                cn.curvature_on_xi(R, s))
    ck.identity("R(xi,y) xi is phi^2 y", cn.gsm_curvature_xi_y_xi_closed_form(s, ZERO, ZERO),
                cn.curvature_xi_y_xi(R, s))
    Ric = wb.ricci("lc")
    ck.identity("Ric(x, xi) is -2n eta(x)",
                TensorField.from_function("d", n, lambda i: -2 * k * eta[i]),
                TensorField.from_function("d", n, lambda i: sum((Ric[i, m] * xi[m] for m in range(n)), ZERO)))
    ident = TensorField.from_function("du", n, lambda i, l: (ONE if i == l else ZERO) - eta[i] * xi[l])
    ck.identity("phi nabla_x xi is x - eta(x) xi",
                ident, TensorField.from_function("du", n, lambda i, l: sum((phi[l][m] * d.xi[i, m] for m in range(n)), ZERO)))
    ck.identity("nabla_(phi x) xi is x - eta(x) xi",
                ident, TensorField.from_function("du", n, lambda i, l: lc.along(tuple(phi[m][i] for m in range(n)), xi)[l]))
    prop = cn.gsm_structure_derivatives_closed_form(s, a, b)
    dg = cn.covariant_derivative_structure(wb.gsm, s)
    ck.identity("GSM derivative of phi equals its closed form", prop.phi, dg.phi)
    ck.identity("GSM derivative of xi equals its closed form", prop.xi, dg.xi)
    ck.identity("GSM derivative of eta equals its closed form", prop.eta, dg.eta)
    ck.printed("GSM derivative of eta (printed form)", cn.gsm_eta_derivative_printed(s, a, b), dg.eta)
    Rb = wb.curvature("gsm")
    ck.identity("GSM curvature equals its closed form",
                cn.gsm_curvature_closed_form(R, s, a, b, lc).up, Rb.up)
    ck.identity("GSM R(x,y) xi equals its closed form",
                cn.gsm_curvature_on_xi_closed_form(s, a, b), cn.curvature_on_xi(Rb, s))
    ck.identity("GSM R(xi,y) xi equals its closed form",
                cn.gsm_curvature_xi_y_xi_closed_form(s, a, b), cn.curvature_xi_y_xi(Rb, s))
    ck.identity("GSM Ricci tensor equals its closed form",
                cn.gsm_ricci_closed_form(Ric, s, k, a, b, lc), wb.ricci("gsm"))
    ck.identity("GSM scalar curvature relation",
                {(): cn.gsm_scalar_closed_form(wb.scalar("lc"), k, a, b)}, {(): wb.scalar("gsm")})
    ck.identity("L_xi g is 2 g(x, phi y)",
                TensorField.from_function("dd", n, lambda i, j: 2 * s.g_phi()[j][i]),
                wb.lie_derivative("lc"))
    return True


def carry_over_checks(wb: Workbench, ck: CheckList):
    a, b, n = wb.alpha, wb.beta, wb.n
    e_lc = wb.einstein("lc")
    if e_lc.status != "unique":
        ck.skip("Einstein-like constants carry over to the GSM connection",
                "Levi-Civita Ricci tensor is not para-Einstein-like")
    else:
        want = cl.gsm_einstein_constants(*e_lc.as_tuple(), n, a, b)
        got = wb.einstein("gsm")
        for key, w, g_ in zip(("lambda", "mu", "nu"), want.as_tuple(), got.as_tuple()):
            ck.identity(f"Einstein-like constants carry over to the GSM connection: {key}",
                        {(): w}, {(): g_})

    s_lc = wb.soliton("lc")
    if s_lc.status != "unique":
        ck.skip("soliton constants with potential xi carry over", "no Levi-Civita soliton with potential xi")
    else:
        want = cl.gsm_soliton_constants(*s_lc.as_tuple(), n, a, b)
        got = wb.soliton("gsm")
        for key, w, g_ in zip(("lambda", "mu", "nu"), want.as_tuple(), got.as_tuple()):
            ck.identity(f"soliton constants with potential xi carry over: {key}", {(): w}, {(): g_})

    s_k = wb.soliton("lc", "k")
    if s_k.status != "unique":
        ck.skip("soliton constants with potential k xi", "no Levi-Civita soliton with potential k xi")
        return
    got = wb.soliton("gsm", "k")
    derived = cl.collinear_constants_derived(*s_k.as_tuple(), K, n, a, b)
    printed = cl.collinear_constants_printed(*s_k.as_tuple(), K, n, a, b)
    for key, d, p, g_ in zip(("lambda", "mu", "nu"), derived.as_tuple(), printed.as_tuple(), got.as_tuple()):
        ck.identity(f"soliton constants with potential k xi (derived form): {key}", {(): d}, {(): g_})
        ck.printed(f"soliton constants with potential k xi (printed form): {key}", {(): p}, {(): g_})
    L_lc = wb.lie_derivative("lc", "k")
    ck.printed("GSM Lie derivative along k xi (printed form)",
             cl.collinear_lie_derivative_printed(L_lc, wb.s, K, a, b), wb.lie_derivative("gsm", "k"))


def printed_checks(wb: Workbench, ck: CheckList, pt: PrintedTables):
    spec = wb.manifold.spec
    params = spec.params
    pre = f"{pt.name}: printed"
    if wb.alpha != ALPHA or wb.beta != BETA:
        ck.skip(f"{pre} tables", "alpha and beta are not symbolic")
        return
    ck.printed(f"{pre} Levi-Civita connection", expand_connection(pt.lc_connection, spec), wb.lc.gamma)
    ck.printed(f"{pre} GSM connection", expand_connection(pt.gsm_connection, spec), wb.gsm.gamma)
    for kind, table in (("Levi-Civita", pt.lc_curvature), ("GSM", pt.gsm_curvature)):
        key = "lc" if kind == "Levi-Civita" else "gsm"
        try:
            printed = expand_curvature(table, params)
        except SymmetryConflict as exc:
            ck.checks.append(Check(f"{pre} {kind} curvature", "paper-vs-computed", str(exc)))
            continue
        ck.printed(f"{pre} {kind} curvature", printed, wb.curvature(key).down)
    ck.printed(f"{pre} Levi-Civita Ricci tensor", expand_symmetric(pt.lc_ricci, params), wb.ricci("lc"))
    ck.printed(f"{pre} GSM Ricci tensor", expand_symmetric(pt.gsm_ricci, params), wb.ricci("gsm"))
    ck.printed(f"{pre} GSM scalar curvature", {(): parse_triple((pt.gsm_scalar,))[0]}, {(): wb.scalar("gsm")})
    ck.printed(f"{pre} Levi-Civita L_xi g", expand_symmetric(pt.lc_lie_xi, params), wb.lie_derivative("lc"))
    ck.printed(f"{pre} GSM L_xi g", expand_symmetric(pt.gsm_lie_xi, params), wb.lie_derivative("gsm"))
    triples = (
        ("Levi-Civita Einstein-like", ("a", "b", "c"), pt.lc_einstein, wb.einstein("lc")),
        ("GSM Einstein-like", ("lambda", "mu", "nu"), pt.gsm_einstein, wb.einstein("gsm")),
        ("Levi-Civita soliton", ("lambda", "mu", "nu"), pt.lc_soliton, wb.soliton("lc")),
        ("GSM soliton", ("lambda", "mu", "nu"), pt.gsm_soliton, wb.soliton("gsm")),
    )
    for label, keys, texts, got in triples:
        for key, p, g_ in zip(keys, parse_triple(texts, params), got.as_tuple()):
            ck.printed(f"{pre} {label} {key}", {(): p}, {(): g_})


def identity_suite(wb: Workbench) -> CheckList:
    """Every closed-form identity and carried-over constant check, without printed tables."""
    ck = CheckList(wb.names)
    if identity_checks(wb, ck) and para_sasaki_checks(wb, ck):
        carry_over_checks(wb, ck)
    return ck


def crosscheck_report(wb: Workbench) -> tuple:
    """(report, exit code): 1 invalid structure, 3 any identity failure, else 0."""
    r = Report("crosscheck")
    add_params(r, wb)
    if not add_validation(r, wb):
        return r, 1
    ck = CheckList(wb.names)
    built = identity_checks(wb, ck)
    if built:
        if para_sasaki_checks(wb, ck):
            carry_over_checks(wb, ck)
        else:
            ck.skip("carried-over constants", "base is not para-Sasaki-like")
        pt = printed_for(wb.manifold.spec)
        if pt is not None:
            printed_checks(wb, ck, pt)
    ck.render(r.section("checks"))
    summary = r.section("summary")
    for status in ("pass", "FAIL", "paper-vs-computed", "skipped"):
        summary.add(status, str(sum(1 for c in ck.checks if c.status == status)))
    summary.add("para-sasaki-like", "true" if wb.para_sasaki[0] else "false")
    return r, (3 if ck.failed else 0)


def consistency_report(exc: ConsistencyError, names=()) -> Report:
    r = Report("consistency failure")
    sec = r.section("failure")
    sec.add("message", str(exc))
    table_section(sec, "expected", names, exc.expected)
    table_section(sec, "computed", names, exc.computed)
    return r


def structure_error_report(exc: StructureError) -> Report:
    r = Report("structure error")
    r.section("error").add("message", str(exc))
    return r
