"""Random frame changes and function jets for property checks."""

from __future__ import annotations

import random
from fractions import Fraction

from .algebra import ONE, ZERO, LinearSystem, Poly, solve_exact
from .connections import FunctionJet
from .errors import StructureError
from .frames import (
    ApapRStructure,
    FrameAlgebra,
    MetricFrame,
    mat_inverse,
    matmul,
    matvec,
    transpose,
)


def random_invertible(n: int, rng: random.Random, spread: int = 2) -> tuple:
    """Random rational matrix with nonzero determinant."""
    while True:
        m = tuple(tuple(Poly.const(Fraction(rng.randint(-spread, spread), rng.randint(1, 2)))
                        for _ in range(n)) for _ in range(n))
        sol = solve_exact(LinearSystem(m, (ONE,) + (ZERO,) * (n - 1), tuple(range(n))))
        if sol.status == "unique":
            return m


def change_frame(fa: FrameAlgebra, s: ApapRStructure, P) -> tuple:
    """Express the algebra and structure in the frame f_a = sum_i P[i][a] e_i."""
    n = fa.dim
    Pinv = mat_inverse(P)
    c = fa.constants
    new_c = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
    for a in range(n):
        for b in range(n):
            # [f_a, f_b] in e-components, then back to f-components
            vec = [ZERO] * n
            for i in range(n):
                if not P[i][a]:
                    continue
                for j in range(n):
                    if not P[j][b]:
                        continue
                    w = P[i][a] * P[j][b]
                    for m in range(n):
                        if c[i][j][m]:
                            vec[m] = vec[m] + w * c[i][j][m]
            new_c[a][b] = list(matvec(Pinv, vec))
    fa2 = FrameAlgebra(tuple(f"f{i}" for i in range(n)), new_c, fa.check_jacobi)
    g2 = matmul(matmul(transpose(P), s.g), P)
    phi2 = matmul(matmul(Pinv, s.phi), P)
    xi2 = matvec(Pinv, s.xi)
    eta2 = matvec(transpose(P), s.eta)
    return fa2, ApapRStructure(phi2, xi2, eta2, MetricFrame(g2))


def random_frame_change(fa: FrameAlgebra, s: ApapRStructure, rng: random.Random) -> tuple:
    return change_frame(fa, s, random_invertible(fa.dim, rng))


def standard_apapr(n: int) -> ApapRStructure:
    """xi = e0, phi swapping e_i and e_{i+n}, identity metric, on R^{2n+1}."""
    N = 2 * n + 1
    phi = [[ZERO] * N for _ in range(N)]
    for i in range(1, n + 1):
        phi[i + n][i] = ONE
        phi[i][i + n] = ONE
    xi = tuple(ONE if k == 0 else ZERO for k in range(N))
    return ApapRStructure(phi, xi, xi, MetricFrame.identity(N))


def random_jet(fa: FrameAlgebra, rng: random.Random, spread: int = 3) -> FunctionJet:
    """Jet whose antisymmetric second-derivative part matches the brackets."""
    n = fa.dim
    r = lambda: Poly.const(Fraction(rng.randint(-spread, spread), rng.randint(1, 3)))
    first = tuple(r() for _ in range(n))
    sym = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            sym[i][j] = sym[j][i] = r()
    half = Fraction(1, 2)
    second = []
    for i in range(n):
        row = []
        for j in range(n):
            lie = sum((fa.constants[i][j][k] * first[k] for k in range(n)), ZERO)
            row.append(sym[i][j] + lie * half)
        second.append(tuple(row))
    jet = FunctionJet(r(), first, tuple(second))
    if jet.commutator_residual(fa) is not None:
        raise StructureError("generated jet is inconsistent")
    return jet


def random_vector(n: int, rng: random.Random, spread: int = 3) -> tuple:
    return tuple(Poly.const(Fraction(rng.randint(-spread, spread), rng.randint(1, 3))) for _ in range(n))
