"""Left-invariant frame data: Lie algebra, metric, apapR structure, tensors."""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Mapping, Sequence

from .algebra import ONE, ZERO, LinearSystem, Poly, RationalFunction, solve_exact
from .errors import JacobiError, StructureError

# ---------------------------------------------------------------------------
# small dense linear algebra on tuples of Poly


def zeros(n: int, m: int | None = None) -> tuple:
    m = n if m is None else m
    return tuple(tuple(ZERO for _ in range(m)) for _ in range(n))


def identity(n: int) -> tuple:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def as_matrix(rows) -> tuple:
    return tuple(tuple(Poly.coerce(a) for a in row) for row in rows)


def transpose(a) -> tuple:
    return tuple(zip(*a))


def matmul(a, b) -> tuple:
    bt = transpose(b)
    return tuple(tuple(_dot(row, col) for col in bt) for row in a)


def matvec(a, v) -> tuple:
    return tuple(_dot(row, v) for row in a)


def _dot(u, v) -> Poly:
    total = ZERO
    for x, y in zip(u, v):
        if x and y:
            total = total + x * y
    return total


def outer(u, v) -> tuple:
    return tuple(tuple(x * y for y in v) for x in u)


def mat_add(a, b) -> tuple:
    return tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(a, b))


def mat_sub(a, b) -> tuple:
    return tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(a, b))


def mat_scale(c, a) -> tuple:
    c = Poly.coerce(c)
    return tuple(tuple(c * x for x in r) for r in a)


def mat_inverse(a) -> tuple:
    """Exact inverse.  Raises StructureError when singular or when the inverse
    leaves the polynomial ring."""
    n = len(a)
    cols = []
    for j in range(n):
        e = tuple(ONE if i == j else ZERO for i in range(n))
        sol = solve_exact(LinearSystem(a, e, tuple(range(n))))
        if sol.status != "unique":
            raise StructureError("matrix is singular")
        col = []
        for i in range(n):
            v = sol.values[i]
            if isinstance(v, RationalFunction):
                raise StructureError("matrix inverse is not polynomial in the parameters")
            col.append(v)
        cols.append(col)
    return transpose(cols)


def signature(a) -> tuple:
    """(positive, negative, zero) inertia of a symmetric rational matrix, by
    congruence diagonalisation."""
    n = len(a)
    m = [[Poly.coerce(x).constant_value() for x in row] for row in a]
    diag = []
    size = n
    while size:
        k = n - size
        if m[k][k] == 0:
            j = next((j for j in range(k + 1, n) if m[j][j] != 0), None)
            if j is not None:
                m[k], m[j] = m[j], m[k]
                for row in m:
                    row[k], row[j] = row[j], row[k]
            else:
                j = next((j for j in range(k + 1, n) if m[k][j] != 0), None)
                if j is None:
                    diag.append(Fraction(0))
                    size -= 1
                    continue
                # x_k <- x_k + x_j makes the pivot 2*m[k][j] (diagonal entries are zero)
                for c in range(n):
                    m[k][c] += m[j][c]
                for r in range(n):
                    m[r][k] += m[r][j]
        p = m[k][k]
        diag.append(p)
        for r in range(k + 1, n):
            f = m[r][k] / p
            if f:
                for c in range(k, n):
                    m[r][c] -= f * m[k][c]
        for c in range(k + 1, n):
            m[k][c] = Fraction(0)
        for r in range(k + 1, n):
            m[r][k] = Fraction(0)
        size -= 1
    return (sum(1 for d in diag if d > 0), sum(1 for d in diag if d < 0), sum(1 for d in diag if d == 0))


def is_rational(rows) -> bool:
    return all(Poly.coerce(x).is_constant for row in rows for x in row)


# ---------------------------------------------------------------------------
# tensors


class TensorField:
    """Dense array of frame components.

    ``valence`` is a string of ``'d'`` (covariant) and ``'u'`` (contravariant)
    slots, e.g. ``'ddu'`` for T(e_i, e_j) = T[i, j, k] e_k.
    """

    __slots__ = ("valence", "dim", "_data")

    def __init__(self, valence: str, dim: int, data: Mapping[tuple, Poly] | None = None):
        self.valence = valence
        self.dim = dim
        self._data = {}
        for idx in itertools.product(range(dim), repeat=len(valence)):
            value = data.get(idx, ZERO) if data else ZERO
            self._data[idx] = Poly.coerce(value)

    @classmethod
    def from_function(cls, valence: str, dim: int, fn: Callable[..., object]) -> "TensorField":
        data = {idx: Poly.coerce(fn(*idx))
                for idx in itertools.product(range(dim), repeat=len(valence))}
        return cls(valence, dim, data)

    @classmethod
    def from_matrix(cls, rows, valence: str = "dd") -> "TensorField":
        n = len(rows)
        return cls(valence, n, {(i, j): rows[i][j] for i in range(n) for j in range(n)})

    @property
    def rank(self) -> int:
        return len(self.valence)

    def __getitem__(self, idx) -> Poly:
        if isinstance(idx, int):
            idx = (idx,)
        return self._data[tuple(idx)]

    def items(self) -> Iterator:
        return iter(self._data.items())

    def nonzero(self) -> dict:
        return {k: v for k, v in self._data.items() if not v.is_zero}

    @property
    def is_zero(self) -> bool:
        return all(v.is_zero for v in self._data.values())

    def first_nonzero(self):
        for k, v in self._data.items():
            if not v.is_zero:
                return k, v
        return None

    def to_matrix(self) -> tuple:
        if self.rank != 2:
            raise ValueError("only rank-2 tensors convert to matrices")
        n = self.dim
        return tuple(tuple(self._data[i, j] for j in range(n)) for i in range(n))

    def map(self, fn: Callable[[Poly], Poly]) -> "TensorField":
        return TensorField(self.valence, self.dim, {k: fn(v) for k, v in self._data.items()})

    def substitute(self, bindings: Mapping[str, object]) -> "TensorField":
        return self.map(lambda p: p.substitute(bindings, strict=False))

    def _check_compatible(self, other: "TensorField"):
        if self.valence != other.valence or self.dim != other.dim:
            raise ValueError(
                f"incompatible tensors: {self.valence}/{self.dim} vs {other.valence}/{other.dim}"
            )

    def __add__(self, other: "TensorField") -> "TensorField":
        self._check_compatible(other)
        return TensorField(self.valence, self.dim,
                           {k: v + other._data[k] for k, v in self._data.items()})

    def __sub__(self, other: "TensorField") -> "TensorField":
        self._check_compatible(other)
        return TensorField(self.valence, self.dim,
                           {k: v - other._data[k] for k, v in self._data.items()})

    def __neg__(self) -> "TensorField":
        return self.map(lambda v: -v)

    def scale(self, c) -> "TensorField":
        c = Poly.coerce(c)
        return self.map(lambda v: c * v)

    def __eq__(self, other):
        if not isinstance(other, TensorField):
            return NotImplemented
        return self.valence == other.valence and self.dim == other.dim and self._data == other._data

    __hash__ = None

    def lower(self, slot: int, g) -> "TensorField":
        """Lower contravariant slot ``slot`` with the metric matrix ``g``."""
        if self.valence[slot] != "u":
            raise ValueError(f"slot {slot} is not contravariant")
        return self._contract_slot(slot, g, "d")

    def raise_index(self, slot: int, g_inv) -> "TensorField":
        if self.valence[slot] != "d":
            raise ValueError(f"slot {slot} is not covariant")
        return self._contract_slot(slot, g_inv, "u")

    def _contract_slot(self, slot: int, mat, new: str) -> "TensorField":
        valence = self.valence[:slot] + new + self.valence[slot + 1:]
        n = self.dim

        def comp(*idx):
            total = ZERO
            for m in range(n):
                coeff = mat[idx[slot]][m]
                if coeff:
                    src = idx[:slot] + (m,) + idx[slot + 1:]
                    total = total + coeff * self._data[src]
            return total

        return TensorField.from_function(valence, n, comp)

    def __repr__(self):
        return f"TensorField({self.valence!r}, dim={self.dim}, nonzero={len(self.nonzero())})"


# ---------------------------------------------------------------------------
# Lie algebra


@dataclass(frozen=True)
class FrameAlgebra:
    """Structure constants ``constants[i][j][k]`` with [e_i, e_j] = sum_k c^k_ij e_k."""

    names: tuple
    constants: tuple
    check_jacobi: bool = field(default=True, compare=False)

    def __post_init__(self):
        n = len(self.names)
        if n % 2 == 0:
            raise StructureError("dimension must be odd (2n+1)")
        c = tuple(tuple(tuple(Poly.coerce(x) for x in cij) for cij in ci) for ci in self.constants)
        if len(c) != n or any(len(ci) != n or any(len(cij) != n for cij in ci) for ci in c):
            raise StructureError("structure constants must be an N x N x N array")
        object.__setattr__(self, "constants", c)
        object.__setattr__(self, "names", tuple(self.names))
        for i, j, k in itertools.product(range(n), repeat=3):
            if c[i][j][k] != -c[j][i][k]:
                raise StructureError(
                    f"structure constants not antisymmetric at [{self.names[i]}, {self.names[j]}]"
                )
        residual = self.jacobi_residual()
        if residual is not None:
            (i, j, k, l), value = residual
            msg = (f"Jacobi identity fails for ({self.names[i]}, {self.names[j]}, {self.names[k]}): "
                   f"{self.names[l]}-component {value}")
            if self.check_jacobi:
                raise JacobiError(msg)
            warnings.warn(msg, stacklevel=2)

    @classmethod
    def from_brackets(cls, names: Sequence[str], brackets: Mapping[tuple, Sequence],
                      check_jacobi: bool = True) -> "FrameAlgebra":
        """``brackets[(i, j)]`` is the component vector of [e_i, e_j] for i < j."""
        n = len(names)
        c = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
        for (i, j), vec in brackets.items():
            for k, v in enumerate(vec):
                v = Poly.coerce(v)
                c[i][j][k] = v
                c[j][i][k] = -v
        return cls(tuple(names), c, check_jacobi)

    @property
    def dim(self) -> int:
        return len(self.names)

    @property
    def n(self) -> int:
        return (self.dim - 1) // 2

    def bracket_of_basis(self, i: int, j: int) -> tuple:
        return self.constants[i][j]

    def jacobi_residual(self):
        """First nonzero component of the cyclic Jacobi sum, or None."""
        c = self.constants
        n = len(self.names)
        for i, j, k in itertools.combinations(range(n), 3):
            for l in range(n):
                total = ZERO
                for m in range(n):
                    total = (total + c[j][k][m] * c[i][m][l] + c[k][i][m] * c[j][m][l]
                             + c[i][j][m] * c[k][m][l])
                if not total.is_zero:
                    return (i, j, k, l), total
        return None

    def substitute(self, bindings) -> "FrameAlgebra":
        c = [[[x.substitute(bindings, strict=False) for x in cij] for cij in ci] for ci in self.constants]
        return FrameAlgebra(self.names, c, self.check_jacobi)


def lie_bracket(fa: FrameAlgebra, x: Sequence, y: Sequence) -> tuple:
    n = fa.dim
    x = [Poly.coerce(v) for v in x]
    y = [Poly.coerce(v) for v in y]
    out = [ZERO] * n
    for i in range(n):
        if not x[i]:
            continue
        for j in range(n):
            if not y[j]:
                continue
            coeff = x[i] * y[j]
            for k, ck in enumerate(fa.constants[i][j]):
                if ck:
                    out[k] = out[k] + coeff * ck
    return tuple(out)


# ---------------------------------------------------------------------------
# metric and structure


@dataclass(frozen=True)
class MetricFrame:
    matrix: tuple
    inverse: tuple = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        m = as_matrix(self.matrix)
        object.__setattr__(self, "matrix", m)
        n = len(m)
        for i in range(n):
            for j in range(i + 1, n):
                if m[i][j] != m[j][i]:
                    raise StructureError(f"metric is not symmetric at ({i}, {j})")
        object.__setattr__(self, "inverse", mat_inverse(m))

    @classmethod
    def identity(cls, n: int) -> "MetricFrame":
        return cls(identity(n))

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def __call__(self, x, y) -> Poly:
        return _dot(x, matvec(self.matrix, y))

    def __getitem__(self, idx) -> Poly:
        i, j = idx
        return self.matrix[i][j]


@dataclass(frozen=True)
class ApapRStructure:
    """phi[k][i] is the e_k-component of phi(e_i)."""

    phi: tuple
    xi: tuple
    eta: tuple
    metric: MetricFrame

    def __post_init__(self):
        object.__setattr__(self, "phi", as_matrix(self.phi))
        object.__setattr__(self, "xi", tuple(Poly.coerce(v) for v in self.xi))
        object.__setattr__(self, "eta", tuple(Poly.coerce(v) for v in self.eta))
        n = self.metric.dim
        if len(self.phi) != n or any(len(r) != n for r in self.phi):
            raise StructureError("phi must be an N x N matrix")
        if len(self.xi) != n or len(self.eta) != n:
            raise StructureError("xi and eta must have N components")

    @classmethod
    def from_xi(cls, phi, xi, metric: MetricFrame, eta=None) -> "ApapRStructure":
        """Derive eta = g(., xi); a supplied ``eta`` must agree."""
        derived = matvec(metric.matrix, tuple(Poly.coerce(v) for v in xi))
        if eta is not None:
            eta = tuple(Poly.coerce(v) for v in eta)
            if eta != derived:
                raise StructureError("supplied eta does not equal g(., xi)")
        return cls(phi, xi, derived, metric)

    @property
    def dim(self) -> int:
        return self.metric.dim

    @property
    def n(self) -> int:
        return (self.dim - 1) // 2

    @property
    def g(self) -> tuple:
        return self.metric.matrix

    def phi_of(self, v) -> tuple:
        return matvec(self.phi, v)

    def g_phi(self) -> tuple:
        """Matrix of g(phi x, y): entry (i, j) = g(phi e_i, e_j)."""
        return matmul(transpose(self.phi), self.g)

    def substitute(self, bindings) -> "ApapRStructure":
        sub = lambda p: p.substitute(bindings, strict=False)
        metric = MetricFrame(tuple(tuple(sub(x) for x in r) for r in self.g))
        return ApapRStructure(tuple(tuple(sub(x) for x in r) for r in self.phi),
                              tuple(sub(x) for x in self.xi), tuple(sub(x) for x in self.eta), metric)


def basis_vector(n: int, i: int) -> tuple:
    return tuple(ONE if k == i else ZERO for k in range(n))


@dataclass
class AxiomResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class ValidationReport:
    axioms: list

    @property
    def ok(self) -> bool:
        return all(a.passed for a in self.axioms)

    def failures(self) -> list:
        return [a for a in self.axioms if not a.passed]

    def __getitem__(self, name) -> AxiomResult:
        for a in self.axioms:
            if a.name == name:
                return a
        raise KeyError(name)


def _first_offender(residual, labels) -> str:
    if isinstance(residual[0], tuple):
        for i, row in enumerate(residual):
            for j, v in enumerate(row):
                if not v.is_zero:
                    return f"({labels[i]}, {labels[j]}) component is {v}"
    else:
        for i, v in enumerate(residual):
            if not v.is_zero:
                return f"{labels[i]} component is {v}"
    return ""


def _is_zero(residual) -> bool:
    if residual and isinstance(residual[0], tuple):
        return all(v.is_zero for row in residual for v in row)
    return all(v.is_zero for v in residual)


def validate_apapr(fa: FrameAlgebra, s: ApapRStructure) -> ValidationReport:
    if fa.dim != s.dim:
        raise StructureError(f"dimension mismatch: algebra has {fa.dim}, structure has {s.dim}")
    names = fa.names
    n = s.dim
    g, phi, xi, eta = s.g, s.phi, s.xi, s.eta
    eta_row = (eta,)
    checks = []

    def add(name, residual, labels=names):
        ok = _is_zero(residual)
        checks.append(AxiomResult(name, ok, "" if ok else _first_offender(residual, labels)))

    add("eta(xi) is 1", (_dot(eta, xi) - ONE,), ("eta(xi)",))
    add("phi xi is 0", matvec(phi, xi))
    add("phi^2 is Id - xi (x) eta", mat_sub(matmul(phi, phi), mat_sub(identity(n), outer(xi, eta))))
    add("tr phi is 0", (sum((phi[i][i] for i in range(n)), ZERO),), ("trace",))
    add("g(phi x, phi y) is g(x, y) - eta(x) eta(y)",
        mat_sub(matmul(matmul(transpose(phi), g), phi), mat_sub(g, matmul(transpose(eta_row), eta_row))))
    add("g(x, xi) is eta(x)", tuple(a - b for a, b in zip(matvec(g, xi), eta)))
    add("g(xi, xi) is 1", (_dot(xi, matvec(g, xi)) - ONE,), ("g(xi,xi)",))
    gp = matmul(g, phi)
    add("g(phi x, y) is g(x, phi y)", mat_sub(gp, transpose(gp)))
    gt = associated_metric(s)
    if is_rational(g) and is_rational(gt) and _is_zero(mat_sub(gt, transpose(gt))):
        sig = signature(gt)
        want = (s.n + 1, s.n, 0)
        checks.append(AxiomResult("signature of associated metric is (n+1, n)", sig == want,
                                  "" if sig == want else f"signature is {sig[:2]} with {sig[2]} null"))
    return ValidationReport(checks)


def associated_metric(s: ApapRStructure) -> tuple:
    """g~(x, y) = g(x, phi y) + eta(x) eta(y), as a matrix."""
    return mat_add(matmul(s.g, s.phi), outer(s.eta, s.eta))
