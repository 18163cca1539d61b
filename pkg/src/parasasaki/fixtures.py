"""Built-in para-Sasaki-like Lie groups and the component tables printed for
them in the literature, used for paper-vs-computed adjudication."""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import Poly, parse_poly
from .manifold_io import ManifoldSpec, format_manifold, parse_manifold, parse_vector

EXAMPLE1 = """\
# Three-dimensional para-Sasaki-like Lie group
dim = 3
params =
frame = e0, e1, e2
xi = e0
bracket e0 e1 = -1*e2
bracket e0 e2 = -1*e1
metric = identity
phi e1 = e2
phi e2 = e1
"""

EXAMPLE2 = """\
# Five-dimensional para-Sasaki-like Lie group, real parameters p, q
dim = 5
params = p, q
frame = e0, e1, e2, e3, e4
xi = e0
bracket e0 e1 = p*e2 - e3 + q*e4
bracket e0 e2 = -p*e1 - q*e3 - e4
bracket e0 e3 = -e1 + q*e2 + p*e4
bracket e0 e4 = -q*e1 - e2 - p*e3
metric = identity
phi e1 = e3
phi e2 = e4
phi e3 = e1
phi e4 = e2
"""

SOURCES = {"example1": EXAMPLE1, "example2": EXAMPLE2}


def builtin_spec(name: str, bindings: dict | None = None) -> ManifoldSpec:
    if name not in SOURCES:
        raise KeyError(f"unknown builtin {name!r} (choose from {', '.join(sorted(SOURCES))})")
    spec = parse_manifold(SOURCES[name])
    return spec.substitute(bindings) if bindings else spec


def builtin_text(name: str, bindings: dict | None = None) -> str:
    return format_manifold(builtin_spec(name, bindings))


# ---------------------------------------------------------------------------
# printed tables


@dataclass
class PrintedTables:
    """Component values as printed, in canonical text.  Connection tables map
    (i, j) to the vector nabla_{e_i} e_j; curvature tables list
    R(e_i, e_j, e_k, e_l) representatives up to the usual symmetries; 2-tensor
    tables list one of each symmetric pair; everything omitted is zero."""

    name: str
    n: int
    lc_connection: dict
    lc_curvature: dict
    lc_ricci: dict
    lc_lie_xi: dict
    lc_einstein: tuple
    lc_soliton: tuple
    gsm_connection: dict
    gsm_curvature: dict
    gsm_ricci: dict
    gsm_scalar: str
    gsm_lie_xi: dict
    gsm_einstein: tuple
    gsm_soliton: tuple
    frame: tuple = field(default=())


def _diag_alpha(indices):
    return {(i, i): "alpha*e0" for i in indices}


PRINTED = {
    "example1": PrintedTables(
        name="example1",
        n=1,
        lc_connection={(1, 0): "e2", (2, 0): "e1", (1, 2): "-e0", (2, 1): "-e0"},
        lc_curvature={(1, 2, 2, 1): "1", (1, 0, 0, 1): "-1", (2, 0, 0, 2): "-1"},
        lc_ricci={(0, 0): "-2"},
        lc_lie_xi={(1, 2): "2"},
        lc_einstein=("0", "0", "-2"),
        lc_soliton=("0", "-1", "3"),
        gsm_connection={
            (1, 0): "(1-beta)*e2 - alpha*e1",
            (2, 0): "(1-beta)*e1 - alpha*e2",
            (1, 2): "(beta-1)*e0",
            (2, 1): "(beta-1)*e0",
            **_diag_alpha((1, 2)),
        },
        gsm_curvature={
            (0, 1, 1, 0): "beta - 1",
            (0, 2, 0, 2): "-(beta - 1)",
            (0, 1, 0, 2): "-alpha",
            (1, 2, 1, 2): "alpha^2 - (beta-1)^2",
        },
        gsm_ricci={(0, 0): "2*(beta-1)", (1, 1): "beta*(beta-1) - alpha^2",
                   (2, 2): "beta*(beta-1) - alpha^2", (1, 2): "alpha"},
        gsm_scalar="2*(beta^2 - alpha^2 - 1)",
        gsm_lie_xi={(1, 1): "-2*alpha", (2, 2): "-2*alpha", (1, 2): "2*(1-beta)"},
        gsm_einstein=("beta*(beta-1) - alpha^2", "alpha", "alpha*(alpha-1) - (beta-1)*(beta-2)"),
        gsm_soliton=("alpha^2 + alpha + beta - beta^2", "beta - alpha - 1", "(beta-1)*(beta+3) - alpha^2"),
    ),
    "example2": PrintedTables(
        name="example2",
        n=2,
        lc_connection={
            (0, 1): "p*e2 + q*e4", (1, 0): "e3", (0, 2): "-p*e1 - q*e3", (2, 0): "e4",
            (0, 3): "q*e2 + p*e4", (3, 0): "e1", (0, 4): "-q*e1 - p*e3", (4, 0): "e2",
            (1, 3): "-e0", (2, 4): "-e0", (3, 1): "-e0", (4, 2): "-e0",
        },
        lc_curvature={
            (0, 1, 1, 0): "-1", (0, 2, 2, 0): "-1", (0, 3, 3, 0): "-1", (0, 4, 4, 0): "-1",
            (1, 2, 3, 4): "1", (1, 4, 3, 2): "1", (1, 3, 3, 1): "1", (2, 4, 4, 2): "1",
        },
        lc_ricci={(0, 0): "-4"},
        lc_lie_xi={(1, 3): "2", (2, 4): "2", (3, 1): "2", (4, 2): "2"},
        lc_einstein=("0", "0", "-4"),
        lc_soliton=("0", "-1", "5"),
        gsm_connection={
            (0, 1): "p*e2 + q*e4", (1, 0): "(1-beta)*e3 - alpha*e1",
            (0, 2): "-p*e1 - q*e3", (2, 0): "(1-beta)*e4 - alpha*e2",
            (0, 3): "q*e2 + p*e4", (3, 0): "(1-beta)*e1 - alpha*e3",
            (0, 4): "-q*e1 - p*e3", (4, 0): "(1-beta)*e2 - alpha*e4",
            (1, 3): "(beta-1)*e0", (3, 1): "(beta-1)*e0", (2, 4): "(beta-1)*e0", (4, 2): "(beta-1)*e0",
            **_diag_alpha((1, 2, 3, 4)),
        },
        gsm_curvature={
            (0, 1, 0, 1): "1 - beta", (0, 4, 4, 0): "-(1 - beta)",
            (0, 2, 0, 2): "1 - beta", (0, 3, 3, 0): "-(1 - beta)",
            (0, 1, 0, 3): "-alpha", (0, 4, 0, 2): "-alpha",
            (1, 4, 1, 2): "alpha*(beta-1)", (3, 4, 2, 3): "-alpha*(beta-1)",
            (3, 4, 4, 1): "-alpha*(beta-1)", (2, 3, 1, 2): "-alpha*(beta-1)",
            (3, 4, 3, 4): "alpha^2", (2, 3, 2, 3): "alpha^2", (1, 4, 1, 4): "alpha^2", (1, 2, 1, 2): "alpha^2",
            (1, 3, 1, 3): "alpha^2 - (beta-1)^2", (2, 4, 2, 4): "alpha^2 - (beta-1)^2",
            (1, 2, 3, 4): "(beta-1)^2", (2, 3, 1, 4): "-(beta-1)^2",
        },
        gsm_ricci={(0, 0): "4*(beta-1)",
                   **{(i, i): "beta^2 - beta - 3*alpha^2" for i in (1, 2, 3, 4)},
                   (1, 3): "3*alpha - 2*alpha*beta", (2, 4): "3*alpha - 2*alpha*beta"},
        gsm_scalar="4*(beta^2 - 3*alpha^2 - 1)",
        gsm_lie_xi={**{(i, i): "-2*alpha" for i in (1, 2, 3, 4)},
                    (1, 3): "2*(1-beta)", (2, 4): "2*(1-beta)"},
        gsm_einstein=("beta^2 - beta - 3*alpha^2", "-2*alpha*beta + 3*alpha",
                      "3*alpha^2 + 2*alpha*beta - 3*alpha + 5*beta - beta^2 - 4"),
        gsm_soliton=("3*alpha^2 + alpha - beta^2 + beta", "2*alpha*beta + beta - 3*alpha - 1",
                     "beta^2 - 3*alpha^2 - 2*alpha*beta - 6*beta + 2*alpha + 5"),
    ),
}


def printed_for(spec: ManifoldSpec):
    """Printed tables for a spec that is exactly one of the built-ins, else None."""
    for name, text in SOURCES.items():
        if parse_manifold(text) == spec:
            return PRINTED[name]
    return None


def expand_connection(table: dict, spec: ManifoldSpec) -> dict:
    """(i, j, k) -> Poly over all components."""
    out = {}
    for (i, j), text in table.items():
        vec = parse_vector(text, spec.frame, spec.params)
        for k, v in enumerate(vec):
            if not v.is_zero:
                out[(i, j, k)] = v
    return out


class SymmetryConflict(ValueError):
    pass


def expand_curvature(table: dict, params=()) -> dict:
    """Close a list of representatives under R_ijkl = -R_jikl = -R_ijlk = R_klij."""
    out = {}
    for (i, j, k, l), text in table.items():
        v = parse_poly(text, allowed=params)
        orbit = {(i, j, k, l): v, (j, i, k, l): -v, (i, j, l, k): -v, (j, i, l, k): v,
                 (k, l, i, j): v, (l, k, i, j): -v, (k, l, j, i): -v, (l, k, j, i): v}
        for idx, val in orbit.items():
            if idx in out and out[idx] != val:
                raise SymmetryConflict(f"printed component {idx} has two values: {out[idx]} and {val}")
            out[idx] = val
    return {k: v for k, v in out.items() if not v.is_zero}


def expand_symmetric(table: dict, params=()) -> dict:
    out = {}
    for (i, j), text in table.items():
        v = parse_poly(text, allowed=params)
        out[(i, j)] = v
        out[(j, i)] = v
    return {k: v for k, v in out.items() if not v.is_zero}


def parse_triple(texts: tuple, params=()) -> tuple:
    return tuple(parse_poly(t, allowed=params) for t in texts)
