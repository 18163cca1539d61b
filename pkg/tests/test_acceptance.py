"""Acceptance criteria.  Each test records one PASS/FAIL line; the lines are
printed in the terminal summary (see conftest.py) and all comparisons are
exact polynomial identities."""

import io
import random
from fractions import Fraction

import pytest

from parasasaki import connections as cn
from parasasaki import classify as cl
from parasasaki.algebra import ALPHA, BETA, Poly
from parasasaki.cli import run_command
from parasasaki.fixtures import (
    PRINTED,
    builtin_spec,
    builtin_text,
    expand_connection,
    expand_curvature,
    expand_symmetric,
    parse_triple,
)
from parasasaki.frames import FrameAlgebra, validate_apapr
from parasasaki.sampling import random_frame_change, standard_apapr
from parasasaki.workbench import Workbench, identity_suite

RESULTS = {}


def record(n, title, checks, note=""):
    """checks: list of (label, bool).  Records the verdict, then asserts."""
    failed = [label for label, ok in checks if not ok]
    RESULTS[n] = (title, not failed, failed, note)
    assert not failed, f"criterion {n} failed: {failed}"


def printed_table(name, attr, spec):
    pt = PRINTED[name]
    table = getattr(pt, attr)
    if attr.endswith("connection"):
        return expand_connection(table, spec)
    if attr.endswith("curvature"):
        return expand_curvature(table, spec.params)
    return expand_symmetric(table, spec.params)


def nonzero(t):
    return t.nonzero()


# --- criterion 1 --------------------------------------------------------------------


def test_criterion_1_example1_levi_civita(ex1):
    spec = ex1.manifold.spec
    R = ex1.curvature("lc").down
    checks = [
        ("connection table", nonzero(ex1.lc.gamma) == printed_table("example1", "lc_connection", spec)),
        ("nabla_e1 e0 = e2", tuple(ex1.lc[1, 0, k] for k in range(3)) == (0, 0, 1)),
        ("R_1221 = 1", R[1, 2, 2, 1] == 1),
        ("R_1001 = -1", R[1, 0, 0, 1] == -1),
        ("R_2002 = -1", R[2, 0, 0, 2] == -1),
        ("curvature has no other components", nonzero(R) == printed_table("example1", "lc_curvature", spec)),
        ("Ric_00 = -2 and nothing else", nonzero(ex1.ricci("lc")) == {(0, 0): Poly.const(-2)}),
    ]
    record(1, "Example 1 Levi-Civita tables", checks)


# --- criterion 2 --------------------------------------------------------------------


def test_criterion_2_example1_gsm(ex1):
    spec = ex1.manifold.spec
    pt = PRINTED["example1"]
    checks = [
        ("GSM connection", nonzero(ex1.gsm.gamma) == printed_table("example1", "gsm_connection", spec)),
        ("GSM Ricci", nonzero(ex1.ricci("gsm")) == printed_table("example1", "gsm_ricci", spec)),
        ("Ric_00 = 2(beta-1)", ex1.ricci("gsm")[0, 0] == 2 * (BETA - 1)),
        ("scalar", ex1.scalar("gsm") == 2 * (BETA ** 2 - ALPHA ** 2 - 1)),
        ("L_xi g", nonzero(ex1.lie_derivative("gsm")) == printed_table("example1", "gsm_lie_xi", spec)),
        ("Einstein triple", ex1.einstein("gsm").as_tuple() == parse_triple(pt.gsm_einstein)),
    ]
    record(2, "Example 1 GSM tables (symbolic alpha, beta)", checks)


# --- criterion 3 --------------------------------------------------------------------


def test_criterion_3_example2(ex2):
    spec = ex2.manifold.spec
    pt = PRINTED["example2"]
    outputs = (ex2.ricci("gsm").nonzero().values(), [ex2.scalar("gsm")],
               ex2.einstein("gsm").as_tuple(), ex2.soliton("gsm").as_tuple())
    lam = 3 * ALPHA ** 2 + ALPHA - BETA ** 2 + BETA
    checks = [
        ("para-Sasaki-like", ex2.para_sasaki[0]),
        ("Ric_00 = -4", nonzero(ex2.ricci("lc")) == {(0, 0): Poly.const(-4)}),
        ("Levi-Civita curvature", nonzero(ex2.curvature("lc").down) == printed_table("example2", "lc_curvature", spec)),
        ("GSM Ricci", nonzero(ex2.ricci("gsm")) == printed_table("example2", "gsm_ricci", spec)),
        ("scalar", ex2.scalar("gsm") == 4 * (BETA ** 2 - 3 * ALPHA ** 2 - 1)),
        ("Einstein triple", ex2.einstein("gsm").as_tuple() == parse_triple(pt.gsm_einstein)),
        ("soliton triple", ex2.soliton("gsm").as_tuple() == parse_triple(pt.gsm_soliton)),
        ("lambda", ex2.soliton("gsm").lam == lam),
        ("independent of p, q", all(set(v.variables) <= {"alpha", "beta"} for vals in outputs for v in vals)),
    ]
    record(3, "Example 2 (symbolic p, q, alpha, beta)", checks)


# --- criteria 4 and 5 ------------------------------------------------------------------


def test_criterion_4_einstein_constants(ex1, ex2):
    checks = []
    for name, wb in (("example1", ex1), ("example2", ex2)):
        want = cl.gsm_einstein_constants(*wb.einstein("lc").as_tuple(), wb.n)
        checks.append((f"{name} n={wb.n}", wb.einstein("gsm").as_tuple() == want.as_tuple()))
    record(4, "GSM Einstein-like constants from the Levi-Civita triple", checks)


def test_criterion_5_soliton_constants(ex1, ex2):
    checks = []
    for name, wb in (("example1", ex1), ("example2", ex2)):
        want = cl.gsm_soliton_constants(*wb.soliton("lc").as_tuple(), wb.n)
        checks.append((f"{name} n={wb.n}", wb.soliton("gsm").as_tuple() == want.as_tuple()))
    printed = parse_triple(PRINTED["example1"].gsm_soliton)
    direct = ex1.soliton("gsm").as_tuple()
    nu = BETA ** 2 - ALPHA ** 2 - 4 * BETA + 3
    checks += [
        ("example1 nu equals closed form", direct[2] == nu),
        ("example1 printed nu detected as different", printed[2] != direct[2]),
        ("example1 printed lambda, mu agree", printed[:2] == direct[:2]),
        ("example2 printed triple agrees", ex2.soliton("gsm").as_tuple() == parse_triple(PRINTED["example2"].gsm_soliton)),
    ]
    out = run_command(["crosscheck", "builtin", "example1"]).output
    checks.append(("crosscheck reports paper-vs-computed for nu",
                   "example1: printed GSM soliton nu = paper-vs-computed" in out))
    note = f"verdict: printed nu {printed[2]} != computed {direct[2]}"
    record(5, "GSM soliton constants for potential xi", checks, note)


# --- criterion 6 ------------------------------------------------------------------------


def heisenberg():
    return FrameAlgebra.from_brackets(("e0", "e1", "e2"), {(1, 2): (1, 0, 0)})


def random_structures(count=20, seed=2024):
    rng = random.Random(seed)
    bases = []
    ex1 = builtin_spec("example1").build()
    bases.append((ex1.algebra, ex1.structure))
    bases.append((heisenberg(), standard_apapr(1)))
    five = FrameAlgebra.from_brackets(tuple(f"e{i}" for i in range(5)), {(1, 3): (1, 0, 0, 0, 0)})
    bases.append((five, standard_apapr(2)))
    out = []
    for i in range(count):
        if i % 4 == 3:
            p = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
            q = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
            m = builtin_spec("example2", {"p": p, "q": q}).build()
            base = (m.algebra, m.structure)
        else:
            base = bases[i % 3]
        fa, s = random_frame_change(*base, rng)
        out.append((fa, s))
    return out


def test_criterion_6_uniqueness(ex1, ex2):
    checks = []
    for name, wb in (("example1", ex1), ("example2", ex2)):
        T = cn.gsm_torsion_closed_form(wb.s)
        rec = cn.reconstruct_connection_from_torsion(T, wb.lc, wb.s.metric)
        checks.append((name, rec.gamma == wb.gsm.gamma))
    structures = random_structures()
    for i, (fa, s) in enumerate(structures):
        assert validate_apapr(fa, s).ok
        lc = cn.levi_civita(fa, s.metric)
        gsm = cn.gsm_connection(lc, s)
        T = cn.gsm_torsion_closed_form(s)
        rec = cn.reconstruct_connection_from_torsion(T, lc, s.metric)
        checks.append((f"random structure {i}", rec.gamma == gsm.gamma and cn.torsion(gsm, fa) == T))
    record(6, "metric connection with the GSM torsion is the GSM connection",
           checks, f"{len(structures)} randomized structures")


# --- criterion 7 ------------------------------------------------------------------------

SUITES = {
    "metricity": ["GSM connection is metric"],
    "derivatives of phi, xi, eta": ["GSM derivative of phi equals its closed form",
                                    "GSM derivative of xi equals its closed form",
                                    "GSM derivative of eta equals its closed form"],
    "para-Sasaki identities": ["nabla_x xi is phi x", "(nabla_x eta) y is g(x, phi y)",
                               "R(x,y) xi is -eta(y) x + eta(x) y", "R(xi,y) xi is phi^2 y",
                               "Ric(x, xi) is -2n eta(x)", "phi nabla_x xi is x - eta(x) xi",
                               "nabla_(phi x) xi is x - eta(x) xi"],
    "curvature closed form": ["GSM curvature equals its closed form"],
    "curvature contractions": ["GSM R(x,y) xi equals its closed form", "GSM R(xi,y) xi equals its closed form"],
    "Ricci closed form": ["GSM Ricci tensor equals its closed form"],
    "scalar relation": ["GSM scalar curvature relation"],
    "Lie derivatives": ["L_xi g is 2 g(x, phi y)", "GSM Lie derivative along xi equals its closed form"],
    "operators": ["GSM divergence, Hessian and Laplacian equal their closed forms"],
    "reductions": ["alpha=1, beta=0 gives the semi-symmetric metric connection",
                   "alpha=0, beta=1 gives the quarter-symmetric metric connection"],
}


def property_targets():
    rng = random.Random(77)
    ex1 = builtin_spec("example1").build()
    ex2 = builtin_spec("example2").build()
    ex2n = builtin_spec("example2", {"p": Fraction(2, 3), "q": -1}).build()
    yield "example1", Workbench(ex1)
    yield "example2", Workbench(ex2)
    for label, m in (("example1 frame", ex1), ("example1 frame", ex1), ("example2 frame", ex2),
                     ("example2 (rational p, q) frame", ex2n)):
        fa, s = random_frame_change(m.algebra, m.structure, rng)
        yield label, Workbench.from_structure(fa, s)


def test_criterion_7_property_suites():
    checks = []
    refuted = 0
    for target, wb in property_targets():
        ck = identity_suite(wb)
        status = {c.label: c.status for c in ck.checks}
        for suite, labels in SUITES.items():
            checks.append((f"{target}: {suite}", all(status.get(lb) == "pass" for lb in labels)))
        refuted += status.get("GSM derivative of eta (printed form)") == "paper-vs-computed"
    note = (f"printed eta-derivative form (unweighted eta(x)eta(y)) refuted on {refuted} structures; "
            "corrected form alpha*eta(x)eta(y) checked")
    record(7, "property suites on fixtures and randomized frames", checks, note)


# --- criterion 8 ------------------------------------------------------------------------


def test_criterion_8_cli(tmp_path, monkeypatch):
    checks = []
    f = tmp_path / "ex1.txt"
    run_command(["builtin", "example1", "-o", str(f)])
    from_file = run_command(["crosscheck", str(f)])
    again = run_command(["crosscheck", "-"], stdin=io.StringIO(f.read_text()))
    builtin = run_command(["crosscheck", "builtin", "example1"])
    checks.append(("round trip byte-identical", from_file.output == again.output == builtin.output))
    checks.append(("materialized file re-parses to itself", f.read_text() == builtin_text("example1")))
    checks.append(("repeat runs identical", run_command(["crosscheck", str(f)]).output == from_file.output))

    bad = tmp_path / "bad.txt"
    bad.write_text(builtin_text("example1") + "phi e0 = e1\n")
    checks.append(("exit 1 on invalid structure", run_command(["validate", str(bad)]).code == 1))
    even = tmp_path / "even.txt"
    even.write_text("dim = 4\n")
    checks.append(("exit 2 on parse error", run_command(["validate", str(even)]).code == 2))
    checks.append(("exit 2 on usage error", run_command(["scalar", "--kind"]).code == 2))
    real = cn.gsm_curvature_closed_form
    monkeypatch.setattr(cn, "gsm_curvature_closed_form",
                        lambda *a, **k: cn.CurvatureData(real(*a, **k).up.scale(2), real(*a, **k).down))
    broken = run_command(["crosscheck", "builtin", "example1"])
    monkeypatch.undo()
    checks.append(("exit 3 on closed-form mismatch, both tables shown",
                   broken.code == 3 and "equals its closed form [expected]]" in broken.output
                   and "equals its closed form [computed]]" in broken.output))

    for name in ("example1", "example2"):
        res = run_command(["crosscheck", "builtin", name])
        body = res.output.split("[checks]\n")[1].split("\n\n")[0].splitlines()
        verdicts = [ln.split(" = ", 1) for ln in body if " [printed] = " not in ln and " [computed] = " not in ln]
        labelled = all(len(v) == 2 and v[0].strip() and v[1] in ("pass", "paper-vs-computed") for v in verdicts)
        checks.append((f"crosscheck {name} completes with labelled identities", res.code == 0 and labelled))
    record(8, "CLI determinism, exit codes, crosscheck", checks)
