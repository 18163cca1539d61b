"""Reading and writing manifold description files.

Line-oriented, ``#`` starts a comment::

    dim = 3
    params = p, q
    frame = e0, e1, e2
    xi = e0
    bracket e0 e1 = -e2            # only i < j; omitted pairs are zero
    metric = identity              # or: metric e0 e1 = <poly>
    phi e1 = e2                    # omitted -> zero
    eta = e0                       # optional, must equal g(., xi)

Vector expressions are sums of ``<poly>*<frame name>`` terms, or ``0``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .algebra import ALPHA_NAME, BETA_NAME, ONE, ZERO, Poly, PolyParseError, parse_poly
from .errors import ManifoldParseError
from .frames import ApapRStructure, FrameAlgebra, MetricFrame, identity

_NAME = r"[A-Za-z_][A-Za-z0-9_]*"
_ASSIGN = re.compile(rf"^({_NAME})\s*=\s*(.*)$")
_INDEXED = re.compile(rf"^(bracket|metric)\s+({_NAME})\s+({_NAME})\s*=\s*(.*)$")
_PHI = re.compile(rf"^phi\s+({_NAME})\s*=\s*(.*)$")
_RESERVED = {ALPHA_NAME, BETA_NAME}
_POTENTIAL = "k"  # potential k*xi in soliton computations


@dataclass
class ManifoldSpec:
    dim: int
    params: tuple
    frame: tuple
    xi: tuple
    brackets: dict = field(default_factory=dict)  # (i, j), i < j -> component vector
    metric: tuple | None = None  # None means the identity matrix
    phi: dict = field(default_factory=dict)  # i -> component vector of phi(e_i)
    eta: tuple | None = None
    lines: dict = field(default_factory=dict, compare=False, repr=False)

    def metric_matrix(self) -> tuple:
        return identity(self.dim) if self.metric is None else self.metric

    def phi_matrix(self) -> tuple:
        n = self.dim
        cols = [self.phi.get(i, (ZERO,) * n) for i in range(n)]
        return tuple(tuple(cols[i][k] for i in range(n)) for k in range(n))

    def build(self, check_jacobi: bool = True) -> "Manifold":
        """Raises StructureError for algebraically invalid data (Jacobi
        failure, singular metric, inconsistent eta)."""
        fa = FrameAlgebra.from_brackets(self.frame, self.brackets, check_jacobi)
        metric = MetricFrame(self.metric_matrix())
        s = ApapRStructure.from_xi(self.phi_matrix(), self.xi, metric, self.eta)
        return Manifold(self, fa, s)

    def substitute(self, bindings: dict) -> "ManifoldSpec":
        unknown = set(bindings) - set(self.params)
        if unknown:
            raise ManifoldParseError(f"unknown parameter(s): {', '.join(sorted(unknown))}")
        for name, value in bindings.items():
            if isinstance(value, Poly) and set(value.variables) & _RESERVED:
                raise ManifoldParseError(f"value for {name} may not involve alpha or beta")
        sub = lambda p: p.substitute(bindings, strict=False)
        vec = lambda v: tuple(sub(x) for x in v)
        return ManifoldSpec(
            self.dim,
            tuple(p for p in self.params if p not in bindings),
            self.frame,
            vec(self.xi),
            {k: vec(v) for k, v in self.brackets.items()},
            None if self.metric is None else tuple(vec(r) for r in self.metric),
            {k: vec(v) for k, v in self.phi.items()},
            None if self.eta is None else vec(self.eta),
        )


@dataclass
class Manifold:
    spec: ManifoldSpec
    algebra: FrameAlgebra
    structure: ApapRStructure

    @property
    def names(self) -> tuple:
        return self.algebra.names


def _split_list(text: str) -> list:
    text = text.strip()
    return [t.strip() for t in text.split(",")] if text else []


def _no_connection_parameters(poly: Poly, text: str) -> Poly:
    if set(poly.variables) & _RESERVED:
        raise PolyParseError("alpha and beta belong to the connection, not the manifold", text)
    return poly


def parse_vector(text: str, frame: tuple, params: tuple) -> tuple:
    """Parse ``p*e2 - e3 + q*e4`` into a component tuple over ``frame``."""
    text = text.strip()
    poly = parse_poly(text, allowed=tuple(frame) + tuple(params))
    frame_set = set(frame)
    comps = {name: {} for name in frame}
    for mono, coeff in poly.terms.items():
        hits = [(v, e) for v, e in mono if v in frame_set]
        if len(hits) != 1 or hits[0][1] != 1:
            raise PolyParseError(f"term is not of the form <poly>*<frame name>: {Poly({mono: coeff})}", text)
        name = hits[0][0]
        rest = tuple((v, e) for v, e in mono if v not in frame_set)
        comps[name][rest] = comps[name].get(rest, 0) + coeff
    return tuple(Poly(comps[name]) for name in frame)


def parse_manifold(text: str) -> ManifoldSpec:
    raw = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if line:
            raw.append((lineno, line))

    scalars: dict = {}
    bracket_lines, metric_lines, phi_lines = [], [], []
    for lineno, line in raw:
        if m := _INDEXED.match(line):
            (bracket_lines if m.group(1) == "bracket" else metric_lines).append(
                (lineno, m.group(2), m.group(3), m.group(4)))
        elif m := _PHI.match(line):
            phi_lines.append((lineno, m.group(1), m.group(2)))
        elif m := _ASSIGN.match(line):
            key = m.group(1)
            if key not in ("dim", "params", "frame", "xi", "eta", "metric"):
                raise ManifoldParseError(f"unknown setting {key!r}", lineno)
            if key in scalars:
                raise ManifoldParseError(f"duplicate assignment of {key!r}", lineno)
            scalars[key] = (lineno, m.group(2).strip())
        else:
            raise ManifoldParseError(f"cannot parse line: {line!r}", lineno)

    if "dim" not in scalars:
        raise ManifoldParseError("missing 'dim'")
    lineno, value = scalars["dim"]
    if not re.fullmatch(r"\d+", value):
        raise ManifoldParseError(f"dimension must be a positive integer, got {value!r}", lineno)
    dim = int(value)
    if dim % 2 == 0 or dim < 1:
        raise ManifoldParseError("dimension must be odd (2n+1)", lineno)

    lines = {k: v[0] for k, v in scalars.items()}
    params = ()
    if "params" in scalars:
        lineno, value = scalars["params"]
        params = tuple(_split_list(value))
        for p in params:
            if not re.fullmatch(_NAME, p):
                raise ManifoldParseError(f"invalid parameter name {p!r}", lineno)
            if p in _RESERVED:
                raise ManifoldParseError(f"{p!r} is reserved for the connection parameters", lineno)
            if p == _POTENTIAL:
                raise ManifoldParseError(f"{p!r} is reserved for the soliton potential factor", lineno)
        if len(set(params)) != len(params):
            raise ManifoldParseError("duplicate parameter name", lineno)

    if "frame" in scalars:
        lineno, value = scalars["frame"]
        frame = tuple(_split_list(value))
        if len(frame) != dim:
            raise ManifoldParseError(f"frame has {len(frame)} names but dim = {dim}", lineno)
        for f in frame:
            if not re.fullmatch(_NAME, f) or f in _RESERVED:
                raise ManifoldParseError(f"invalid frame name {f!r}", lineno)
        if len(set(frame)) != len(frame):
            raise ManifoldParseError("duplicate frame name", lineno)
        clash = set(frame) & set(params)
        if clash:
            raise ManifoldParseError(f"name used as both frame and parameter: {sorted(clash)[0]}", lineno)
    else:
        frame = tuple(f"e{i}" for i in range(dim))
    index = {name: i for i, name in enumerate(frame)}

    def vector(text, lineno):
        try:
            out = parse_vector(text, frame, params)
            for v in out:
                _no_connection_parameters(v, text)
            return out
        except PolyParseError as exc:
            raise ManifoldParseError(str(exc), lineno) from None

    def frame_index(name, lineno):
        if name not in index:
            raise ManifoldParseError(f"unknown frame name {name!r}", lineno)
        return index[name]

    if "xi" not in scalars:
        raise ManifoldParseError("missing 'xi'")
    xi = vector(scalars["xi"][1], scalars["xi"][0])
    eta = vector(scalars["eta"][1], scalars["eta"][0]) if "eta" in scalars else None

    brackets = {}
    for lineno, a, b, expr in bracket_lines:
        i, j = frame_index(a, lineno), frame_index(b, lineno)
        if i >= j:
            raise ManifoldParseError(f"bracket pairs must be listed with the first index lower: {a} {b}", lineno)
        if (i, j) in brackets:
            raise ManifoldParseError(f"duplicate assignment of bracket {a} {b}", lineno)
        brackets[(i, j)] = vector(expr, lineno)
        lines.setdefault("bracket", lineno)

    metric = None
    if "metric" in scalars:
        lineno, value = scalars["metric"]
        if value != "identity":
            raise ManifoldParseError("'metric =' accepts only 'identity'", lineno)
        if metric_lines:
            raise ManifoldParseError("duplicate assignment: metric given as identity and by entries",
                                     metric_lines[0][0])
    elif metric_lines:
        entries = [[ZERO] * dim for _ in range(dim)]
        seen = set()
        for lineno, a, b, expr in metric_lines:
            i, j = frame_index(a, lineno), frame_index(b, lineno)
            key = (min(i, j), max(i, j))
            if key in seen:
                raise ManifoldParseError(f"duplicate assignment of metric {a} {b}", lineno)
            seen.add(key)
            try:
                value = _no_connection_parameters(parse_poly(expr, allowed=params), expr)
            except PolyParseError as exc:
                raise ManifoldParseError(str(exc), lineno) from None
            entries[i][j] = entries[j][i] = value
        metric = tuple(tuple(r) for r in entries)
        lines["metric"] = metric_lines[0][0]
    else:
        raise ManifoldParseError("missing metric (use 'metric = identity' or 'metric <ei> <ej> = <poly>')")

    phi = {}
    for lineno, a, expr in phi_lines:
        i = frame_index(a, lineno)
        if i in phi:
            raise ManifoldParseError(f"duplicate assignment of phi {a}", lineno)
        phi[i] = vector(expr, lineno)

    return ManifoldSpec(dim, params, frame, xi, brackets, metric, phi, eta, lines)


def load_manifold(text: str, check_jacobi: bool = True) -> Manifold:
    return parse_manifold(text).build(check_jacobi)


# ---------------------------------------------------------------------------
# writing


def format_vector(vec, frame) -> str:
    parts = []
    for coeff, name in zip(vec, frame):
        if coeff.is_zero:
            continue
        terms = coeff.sorted_terms()
        if len(terms) == 1:
            mono, c = terms[0]
            sign = "-" if c < 0 else "+"
            mag = Poly({mono: -c if c < 0 else c})
            body = name if mag == ONE else f"{mag}*{name}"
        else:
            sign, body = "+", f"({coeff})*{name}"
        parts.append((sign, body))
    if not parts:
        return "0"
    out = parts[0][1] if parts[0][0] == "+" else f"-{parts[0][1]}"
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def format_manifold(spec: ManifoldSpec, header: str | None = None) -> str:
    frame = spec.frame
    out = []
    if header:
        out.extend(f"# {line}" for line in header.splitlines())
    out.append(f"dim = {spec.dim}")
    out.append(f"params = {', '.join(spec.params)}".rstrip())
    out.append(f"frame = {', '.join(frame)}")
    out.append(f"xi = {format_vector(spec.xi, frame)}")
    for (i, j) in sorted(spec.brackets):
        vec = spec.brackets[(i, j)]
        if any(not c.is_zero for c in vec):
            out.append(f"bracket {frame[i]} {frame[j]} = {format_vector(vec, frame)}")
    if spec.metric is None or spec.metric == identity(spec.dim):
        out.append("metric = identity")
    else:
        for i in range(spec.dim):
            for j in range(i, spec.dim):
                if not spec.metric[i][j].is_zero:
                    out.append(f"metric {frame[i]} {frame[j]} = {spec.metric[i][j]}")
    for i in sorted(spec.phi):
        vec = spec.phi[i]
        if any(not c.is_zero for c in vec):
            out.append(f"phi {frame[i]} = {format_vector(vec, frame)}")
    if spec.eta is not None:
        out.append(f"eta = {format_vector(spec.eta, frame)}")
    return "\n".join(out) + "\n"
