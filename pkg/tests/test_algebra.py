from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from parasasaki.algebra import (
    ALPHA,
    BETA,
    ONE,
    ZERO,
    LinearSystem,
    Poly,
    PolyParseError,
    RationalFunction,
    UnknownIndeterminateError,
    parse_poly,
    poly_arith,
    solve_exact,
    substitute,
)

P = Poly.var("p")
NAMES = ("alpha", "beta", "p")

coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
monos = st.tuples(*(st.integers(0, 2) for _ in NAMES))
polys = st.dictionaries(monos, coeffs, max_size=4).map(
    lambda d: sum((Poly.const(c) * ALPHA ** e[0] * BETA ** e[1] * P ** e[2] for e, c in d.items()), ZERO))


def to_sympy(p: Poly):
    syms = {n: sympy.Symbol(n) for n in NAMES}
    out = sympy.Integer(0)
    for mono, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for v, e in mono:
            term *= syms[v] ** e
        out += term
    return sympy.expand(out)


# --- ring laws -------------------------------------------------------------


@given(polys, polys, polys)
def test_ring_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO
    assert a * ONE == a


@settings(max_examples=60)
@given(polys, polys)
def test_matches_sympy(a, b):
    assert to_sympy(a * b) == sympy.expand(to_sympy(a) * to_sympy(b))
    assert to_sympy(a - b) == sympy.expand(to_sympy(a) - to_sympy(b))


@given(polys)
def test_canonical_text_is_idempotent(a):
    text = str(a)
    assert str(parse_poly(text, allowed=["p"])) == text
    assert parse_poly(text, allowed=["p"]) == a


@given(polys, polys, st.fractions(min_value=-3, max_value=3, max_denominator=3))
def test_substitute_commutes_with_products(a, b, v):
    bind = {"alpha": v, "p": 2}
    assert (a * b).substitute(bind, strict=False) == a.substitute(bind, strict=False) * b.substitute(bind, strict=False)


# --- spec examples -----------------------------------------------------------


def test_difference_of_squares():
    assert poly_arith(ALPHA + BETA, ALPHA - BETA, "mul") == ALPHA ** 2 - BETA ** 2


def test_expansion():
    assert str((BETA - 1) * (BETA - 2)) == "beta^2 - 3*beta + 2"


def test_square_subtracted():
    assert poly_arith(ALPHA ** 2, (BETA - 1) ** 2, "sub") == ALPHA ** 2 - BETA ** 2 + 2 * BETA - 1


def test_neg():
    assert poly_arith(ALPHA - 1, None, "neg") == 1 - ALPHA


def test_substitute_examples():
    scal = 2 * (BETA ** 2 - ALPHA ** 2 - 1)
    assert substitute(scal, {"alpha": 1, "beta": 0}) == -4
    assert substitute(ALPHA * BETA, {"alpha": 0}) == 0
    assert (ALPHA + P).substitute({"p": 1}) == ALPHA + 1


def test_substitute_unknown_name():
    with pytest.raises(UnknownIndeterminateError):
        ALPHA.substitute({"q": 1})


def test_rendering_order():
    assert str(BETA ** 2 - BETA - ALPHA ** 2) == "beta^2 - beta - alpha^2"
    assert str(4 * BETA ** 2 - 12 * ALPHA ** 2 - 4) == "4*beta^2 - 12*alpha^2 - 4"
    assert str(ZERO) == "0"
    assert str(Poly.const(Fraction(-1, 2)) * ALPHA) == "-1/2*alpha"


@pytest.mark.parametrize("text,expected", [
    ("2*alpha*beta - beta^2 + 1", 2 * ALPHA * BETA - BETA ** 2 + 1),
    ("(beta-1)**2", (BETA - 1) ** 2),
    ("α + β", ALPHA + BETA),
    ("-(1 - beta)/2", (BETA - 1) / 2),
    ("  3  ", Poly.const(3)),
])
def test_parse(text, expected):
    assert parse_poly(text) == expected


@pytest.mark.parametrize("text", ["1/alpha", "alpha +", "q", "alpha^-1", "(alpha", "2 $ 3"])
def test_parse_errors(text):
    with pytest.raises(PolyParseError):
        parse_poly(text, allowed=("p",))


def test_degree_and_variables():
    p = ALPHA ** 2 * BETA + P
    assert p.degree == 3
    assert p.variables == ("alpha", "beta", "p")


# --- solving -------------------------------------------------------------------


def test_solve_levi_civita_example():
    # a*1 = 0 from Ric_11, a + c = -2 from Ric_00
    sol = solve_exact(LinearSystem([[1, 0], [1, 1]], [0, -2], ("a", "c")))
    assert sol.status == "unique"
    assert sol["a"] == 0 and sol["c"] == -2


def test_solve_empty_is_underdetermined():
    sol = solve_exact(LinearSystem((), (), ("a", "b", "c")))
    assert sol.status == "underdetermined"
    assert sol.free == ("a", "b", "c")


def test_solve_inconsistent():
    assert solve_exact(LinearSystem([[1], [1]], [1, 2], ("a",))).status == "inconsistent"


def test_solve_family():
    sol = solve_exact(LinearSystem([[1, 1]], [ALPHA], ("x", "y")))
    assert sol.status == "underdetermined"
    part, coeffs = sol.family["x"]
    assert part == ALPHA and coeffs == {"y": -1}


def test_solve_symbolic_coefficients():
    sol = solve_exact(LinearSystem([[ALPHA, 0], [0, 1]], [ALPHA * BETA, BETA], ("x", "y")))
    assert sol["x"] == BETA and sol["y"] == BETA


def test_solve_non_polynomial_result():
    sol = solve_exact(LinearSystem([[ALPHA]], [ONE], ("x",)))
    assert isinstance(sol["x"], RationalFunction)
    assert sol["x"] * ALPHA == 1


matrices = st.integers(1, 3).flatmap(lambda n: st.tuples(
    st.lists(st.lists(polys, min_size=n, max_size=n), min_size=n, max_size=n + 1),
    st.lists(polys, min_size=n, max_size=n)))


@settings(max_examples=40, deadline=None)
@given(matrices)
def test_back_substitution(data):
    rows, x = data
    rhs = [sum((a * b for a, b in zip(r, x)), ZERO) for r in rows]
    names = tuple(f"x{i}" for i in range(len(x)))
    sol = solve_exact(LinearSystem(rows, rhs, names))
    assert sol.status != "inconsistent"
    if sol.status == "unique":
        for r, b in zip(rows, rhs):
            got = sum((RationalFunction(a) * sol[nm] for a, nm in zip(r, names)), RationalFunction(ZERO))
            assert got == b
    else:
        # every member of the family satisfies the system; try free = 0 and free = 1
        for choice in (0, 1):
            vals = {f: RationalFunction(choice) for f in sol.free}
            for nm, (part, cs) in sol.family.items():
                vals[nm] = RationalFunction(part) + sum(
                    (RationalFunction(c) * vals[f] for f, c in cs.items()), RationalFunction(ZERO))
            for r, b in zip(rows, rhs):
                got = sum((RationalFunction(a) * vals[nm] for a, nm in zip(r, names)), RationalFunction(ZERO))
                assert got == b
