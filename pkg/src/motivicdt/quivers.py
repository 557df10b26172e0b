"""Quivers with potential: parsing, cyclic calculus, and exact linear algebra.

Conventions.  An arrow a: s -> t is realised on a representation by a matrix
of shape (dim t) x (dim s), i.e. a linear map from the source space to the
target space.  A potential word w1 w2 ... wk is a path read left to right
(t(w_i) = s(w_{i+1}), cyclically), and its trace on a representation is
Tr(M(wk) ... M(w1)).  This is the right-module reading of the standard
figures; the reduced-quiver presets below fix arrow directions accordingly,
which for the reduced and multi-vertex quivers reverses the direction tables
one sometimes sees written for left modules.

All matrices are exact rationals; there is no floating point anywhere.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple


class QuiverSyntaxError(ValueError):
    """Parse or validation failure, carrying 1-based line and column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class Arrow(NamedTuple):
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]
    framing: str | None = None

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex names")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise ValueError("duplicate arrow names")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.source not in vs or a.target not in vs:
                raise ValueError(f"arrow {a.name} has an unknown endpoint")
        if self.framing is not None and self.framing not in vs:
            raise ValueError("framing vertex is not a vertex")

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise KeyError(name)

    def arrow_names(self) -> list[str]:
        return [a.name for a in self.arrows]


@dataclass(frozen=True)
class Potential:
    """Signed sum of cyclic words; each word is a tuple of arrow names."""

    terms: tuple[tuple[int, tuple[str, ...]], ...]

    def arrows_used(self) -> set[str]:
        return {w for _, word in self.terms for w in word}


def validate_potential(quiver: Quiver, potential: Potential):
    for _, word in potential.terms:
        if not word:
            raise ValueError("empty potential word")
        for i, name in enumerate(word):
            a = quiver.arrow(name)
            b = quiver.arrow(word[(i + 1) % len(word)])
            if a.target != b.source:
                raise ValueError(
                    f"word {' '.join(word)} is not cyclic: "
                    f"{a.name}: {a.source}->{a.target} cannot compose with "
                    f"{b.name}: {b.source}->{b.target}"
                )


# -- file format ---------------------------------------------------------------
#
#   # comment
#   vertex <name> [framing]
#   arrow <name>: <src> -> <tgt>
#   potential: + w1 w2 ... - w1 w2 ...


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0]


def parse_quiver(text: str) -> Quiver:
    vertices: list[str] = []
    arrows: list[Arrow] = []
    framing = None
    seen_v: dict[str, int] = {}
    seen_a: dict[str, int] = {}
    arrow_re = re.compile(r"^arrow\s+(\S+)\s*:\s*(\S+)\s*->\s*(\S+)\s*$")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).strip()
        if not line:
            continue
        if line.startswith("vertex"):
            parts = line.split()
            if len(parts) not in (2, 3) or (len(parts) == 3 and parts[2] != "framing"):
                raise QuiverSyntaxError("malformed vertex line", lineno, 1)
            name = parts[1]
            if name in seen_v:
                raise QuiverSyntaxError(
                    f"duplicate vertex {name!r} (first at line {seen_v[name]})",
                    lineno, raw.find(name) + 1,
                )
            seen_v[name] = lineno
            vertices.append(name)
            if len(parts) == 3:
                if framing is not None:
                    raise QuiverSyntaxError("second framing vertex", lineno, 1)
                framing = name
        elif line.startswith("arrow"):
            m = arrow_re.match(line)
            if not m:
                raise QuiverSyntaxError("malformed arrow line", lineno, 1)
            name, src, tgt = m.groups()
            if name in seen_a:
                raise QuiverSyntaxError(
                    f"duplicate arrow {name!r} (first at line {seen_a[name]})",
                    lineno, raw.find(name) + 1,
                )
            seen_a[name] = lineno
            for v in (src, tgt):
                if v not in seen_v:
                    raise QuiverSyntaxError(
                        f"unknown vertex {v!r}", lineno, raw.find(v) + 1
                    )
            arrows.append(Arrow(name, src, tgt))
        elif line.startswith("potential"):
            continue  # handled by parse_potential
        else:
            raise QuiverSyntaxError(f"unrecognised line {line!r}", lineno, 1)
    return Quiver(tuple(vertices), tuple(arrows), framing)


def parse_potential(text: str, quiver: Quiver) -> Potential:
    terms: list[tuple[int, tuple[str, ...]]] = []
    found = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).strip()
        if not line.startswith("potential"):
            continue
        found = True
        body = line.split(":", 1)
        if len(body) != 2:
            raise QuiverSyntaxError("potential line needs a ':'", lineno, 1)
        tokens = body[1].replace("−", "-").split()
        sign = None
        word: list[str] = []
        col = raw.find(":") + 1

        def flush():
            if sign is not None:
                if not word:
                    raise QuiverSyntaxError("sign with no word", lineno, col)
                terms.append((sign, tuple(word)))

        for tok in tokens:
            if tok in ("+", "-"):
                flush()
                sign = 1 if tok == "+" else -1
                word = []
            else:
                if sign is None:
                    raise QuiverSyntaxError(
                        f"potential word must start with a sign, got {tok!r}",
                        lineno, raw.find(tok) + 1,
                    )
                try:
                    quiver.arrow(tok)
                except KeyError:
                    raise QuiverSyntaxError(
                        f"unknown arrow {tok!r}", lineno, raw.find(tok) + 1
                    ) from None
                word.append(tok)
        flush()
    if not found:
        raise QuiverSyntaxError("no potential line", 1, 1)
    potential = Potential(tuple(terms))
    try:
        validate_potential(quiver, potential)
    except ValueError as e:
        raise QuiverSyntaxError(str(e), 1, 1) from None
    return potential


def render_quiver_file(quiver: Quiver, potential: Potential | None = None, header=()) -> str:
    lines = [f"# {h}" for h in header]
    for v in quiver.vertices:
        lines.append(f"vertex {v} framing" if v == quiver.framing else f"vertex {v}")
    for a in quiver.arrows:
        lines.append(f"arrow {a.name}: {a.source} -> {a.target}")
    if potential is not None:
        chunks = []
        for sign, word in potential.terms:
            chunks.append("+" if sign > 0 else "-")
            chunks.extend(word)
        lines.append("potential: " + " ".join(chunks))
    return "\n".join(lines) + "\n"


# -- cyclic calculus -----------------------------------------------------------


class PathPolynomial:
    """Integer combination of paths, stored as {word tuple: coefficient}."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {w: c for w, c in (terms or {}).items() if c}

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, PathPolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for word in sorted(self.terms):
            c = self.terms[word]
            body = " ".join(word) if abs(c) == 1 else f"{abs(c)} {' '.join(word)}"
            if not parts:
                parts.append(body if c > 0 else "- " + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    __repr__ = __str__


def cyclic_derivative(potential: Potential, arrow: str) -> PathPolynomial:
    """Noncommutative derivative: rotate each occurrence to the front, delete it.

    For a term c * w1..wk and an occurrence wi = arrow the contribution is
    c * w(i+1)..wk w1..w(i-1).
    """
    out: dict[tuple[str, ...], int] = {}
    for coeff, word in potential.terms:
        for i, name in enumerate(word):
            if name == arrow:
                rotated = word[i + 1:] + word[:i]
                out[rotated] = out.get(rotated, 0) + coeff
    return PathPolynomial(out)


def superpotential_relations(potential: Potential, arrows=None) -> dict[str, PathPolynomial]:
    """All cyclic derivatives, indexed by arrow name."""
    if arrows is None:
        arrows = sorted(potential.arrows_used())
    return {a: cyclic_derivative(potential, a) for a in arrows}


def specialize(relations, zeroed) -> list[PathPolynomial]:
    """Set the given arrows to zero and drop the relations that vanish."""
    zeroed = set(zeroed)
    out = []
    values = relations.values() if isinstance(relations, dict) else relations
    for rel in values:
        kept = {w: c for w, c in rel.terms.items() if not set(w) & zeroed}
        if kept:
            out.append(PathPolynomial(kept))
    return out


# -- numeric forms ---------------------------------------------------------------


def euler_form(quiver: Quiver, d: dict, dprime: dict, include_framing: bool = True) -> int:
    """sum_i d_i d'_i - sum_a d_s(a) d'_t(a), optionally dropping the framing."""
    skip = None if include_framing else quiver.framing
    total = sum(
        d.get(v, 0) * dprime.get(v, 0) for v in quiver.vertices if v != skip
    )
    for a in quiver.arrows:
        if skip is not None and skip in (a.source, a.target):
            continue
        total -= d.get(a.source, 0) * dprime.get(a.target, 0)
    return total


def moduli_dim(quiver: Quiver, d: dict) -> int:
    """Representation-space dimension minus gauge dimension at non-framing vertices."""
    if quiver.framing is None:
        raise ValueError("moduli_dim needs a framed quiver")
    rep = sum(d.get(a.source, 0) * d.get(a.target, 0) for a in quiver.arrows)
    gauge = sum(d.get(v, 0) ** 2 for v in quiver.vertices if v != quiver.framing)
    return rep - gauge


# -- exact matrices ----------------------------------------------------------------

Matrix = tuple  # tuple of row tuples


def matrix(rows) -> Matrix:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def zeros(nrows: int, ncols: int) -> Matrix:
    return tuple((Fraction(0),) * ncols for _ in range(nrows))


def identity(n: int) -> Matrix:
    return tuple(
        tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n)
    )


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if a and b and len(a[0]) != len(b):
        raise ValueError(f"shape mismatch: {len(a)}x{len(a[0])} times {len(b)}x{len(b[0])}")
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]) if b else 0))
        for i in range(len(a))
    )


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))

def mat_scale(c, a: Matrix) -> Matrix:
    return tuple(tuple(c * x for x in row) for row in a)


def mat_trace(a: Matrix):
    if len(a) != (len(a[0]) if a else 0):
        raise ValueError("trace of a non-square matrix")
    return sum(a[i][i] for i in range(len(a)))


def mat_rank(a: Matrix) -> int:
    rows = [list(r) for r in a]
    nr, nc = len(rows), len(rows[0]) if rows else 0
    rank, row = 0, 0
    for col in range(nc):
        pivot = next((r for r in range(row, nr) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[row], rows[pivot] = rows[pivot], rows[row]
        inv = 1 / rows[row][col]
        rows[row] = [x * inv for x in rows[row]]
        for r in range(nr):
            if r != row and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[row])]
        row += 1
        rank += 1
        if row == nr:
            break
    return rank


def mat_inverse(a: Matrix) -> Matrix:
    n = len(a)
    aug = [list(ra) + list(ri) for ra, ri in zip(a, identity(n))]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise ValueError("singular matrix")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def hstack(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(ra) + tuple(rb) for ra, rb in zip(a, b))


@dataclass(frozen=True)
class Representation:
    quiver: Quiver
    dims: dict
    maps: dict  # arrow name -> Matrix of shape (dim target) x (dim source)

    def __post_init__(self):
        for a in self.quiver.arrows:
            m = self.maps.get(a.name)
            if m is None:
                raise ValueError(f"missing matrix for arrow {a.name}")
            nt, ns = self.dims[a.target], self.dims[a.source]
            if len(m) != nt or any(len(row) != ns for row in m):
                raise ValueError(
                    f"arrow {a.name}: expected shape {nt}x{ns}"
                )

    def matrix(self, arrow: str) -> Matrix:
        return self.maps[arrow]


def evaluate_word(rep: Representation, word: tuple[str, ...]) -> Matrix:
    """Matrix of a path, M(wk) ... M(w1)."""
    result = identity(rep.dims[rep.quiver.arrow(word[0]).source])
    for name in word:
        result = mat_mul(rep.matrix(name), result)
    return result


def evaluate_path_polynomial(rep: Representation, poly: PathPolynomial,
                             shape: tuple[int, int]) -> Matrix:
    out = zeros(*shape)
    for word, coeff in poly.terms.items():
        out = mat_add(out, mat_scale(Fraction(coeff), evaluate_word(rep, word)))
    return out


def trace_potential(rep: Representation, potential: Potential) -> Fraction:
    total = Fraction(0)
    for coeff, word in potential.terms:
        total += coeff * mat_trace(evaluate_word(rep, word))
    return total


def derivative_evaluated(rep: Representation, potential: Potential, arrow: str) -> Matrix:
    """The cyclic derivative with respect to ``arrow`` evaluated at ``rep``.

    Shape (dim source) x (dim target) of the arrow, so that it pairs with a
    perturbation E of the arrow matrix via Tr(E . result).
    """
    a = rep.quiver.arrow(arrow)
    shape = (rep.dims[a.source], rep.dims[a.target])
    return evaluate_path_polynomial(rep, cyclic_derivative(potential, arrow), shape)


def critical_check(rep: Representation, potential: Potential) -> bool:
    """True iff every evaluated cyclic derivative vanishes at the representation."""
    z = Fraction(0)
    for name in rep.quiver.arrow_names():
        if any(x != z for row in derivative_evaluated(rep, potential, name) for x in row):
            return False
    return True


# first-order oracle: matrices over Q[eps], multiplied generically


class _Poly(NamedTuple):
    """Univariate polynomial over Fraction, dense coefficient tuple."""

    c: tuple

    def __add__(self, other):
        n = max(len(self.c), len(other.c))
        a = self.c + (Fraction(0),) * (n - len(self.c))
        b = other.c + (Fraction(0),) * (n - len(other.c))
        return _Poly(tuple(x + y for x, y in zip(a, b)))

    def __mul__(self, other):
        out = [Fraction(0)] * (len(self.c) + len(other.c) - 1)
        for i, x in enumerate(self.c):
            if x:
                for j, y in enumerate(other.c):
                    out[i + j] += x * y
        return _Poly(tuple(out))

    def coefficient(self, k: int) -> Fraction:
        return self.c[k] if k < len(self.c) else Fraction(0)


def first_order_trace(rep: Representation, potential: Potential, arrow: str,
                      direction: Matrix) -> Fraction:
    """d/de Tr W(rep with ``arrow`` perturbed by e*direction) at e = 0.

    Computed by multiplying matrices over Q[e] and reading the linear
    coefficient; independent of the cyclic-derivative code path.
    """
    def lift(m: Matrix) -> tuple:
        return tuple(tuple(_Poly((x,)) for x in row) for row in m)

    perturbed = {name: lift(m) for name, m in rep.maps.items()}
    a = rep.quiver.arrow(arrow)
    perturbed[arrow] = tuple(
        tuple(_Poly((x, Fraction(e))) for x, e in zip(row_m, row_e))
        for row_m, row_e in zip(rep.maps[arrow], direction)
    )
    total = _Poly((Fraction(0),))
    for coeff, word in potential.terms:
        prod = tuple(
            tuple(_Poly((Fraction(1 if i == j else 0),))
                  for j in range(rep.dims[rep.quiver.arrow(word[0]).source]))
            for i in range(rep.dims[rep.quiver.arrow(word[0]).source])
        )
        for name in word:
            m = perturbed[name]
            prod = tuple(
                tuple(
                    _sum_poly(m[i][k] * prod[k][j] for k in range(len(prod)))
                    for j in range(len(prod[0]))
                )
                for i in range(len(m))
            )
        tr = _sum_poly(prod[i][i] for i in range(len(prod)))
        total = total + _Poly(tuple(coeff * x for x in tr.c))
    return total.coefficient(1)


def _sum_poly(polys) -> _Poly:
    total = _Poly((Fraction(0),))
    for p in polys:
        total = total + p
    return total


def trace_pairing(rep: Representation, potential: Potential, arrow: str,
                  direction: Matrix) -> Fraction:
    """Tr(direction . derivative_evaluated); must equal :func:`first_order_trace`."""
    return mat_trace(mat_mul(direction, derivative_evaluated(rep, potential, arrow)))


def gauge_transform(rep: Representation, g: dict) -> Representation:
    """Conjugate by invertible matrices at the non-framing vertices."""
    full = dict(g)
    for v in rep.quiver.vertices:
        full.setdefault(v, identity(rep.dims[v]))
    inv = {v: mat_inverse(m) for v, m in full.items()}
    maps = {}
    for a in rep.quiver.arrows:
        maps[a.name] = mat_mul(full[a.target], mat_mul(rep.maps[a.name], inv[a.source]))
    return Representation(rep.quiver, rep.dims, maps)


def nn_open_conditions(rep: Representation) -> tuple[bool, bool]:
    """The two open conditions cutting out the good locus of the framed conifold.

    For dimension vector (n+1, n, 1): (1) the matrix of b2 is injective;
    (2) the images of iota and b2 together span the whole vertex-1 space.
    """
    if rep.dims.get("1") != rep.dims.get("2", 0) + 1 or rep.dims.get("inf") != 1:
        raise ValueError("dimension vector must be (n+1, n, 1)")
    b2 = rep.matrix("b2")
    iota = rep.matrix("iota")
    n = rep.dims["2"]
    injective = mat_rank(b2) == n
    spanning = mat_rank(hstack(iota, b2)) == rep.dims["1"]
    return injective, spanning


# -- presets ---------------------------------------------------------------------


def _bbs() -> tuple[Quiver, Potential]:
    q = Quiver(
        vertices=("1", "inf"),
        arrows=(
            Arrow("x", "1", "1"),
            Arrow("y", "1", "1"),
            Arrow("z", "1", "1"),
            Arrow("u", "inf", "1"),
        ),
        framing="inf",
    )
    w = Potential(((1, ("x", "y", "z")), (-1, ("x", "z", "y"))))
    return q, w


def _conifold_framed() -> tuple[Quiver, Potential]:
    q = Quiver(
        vertices=("1", "2", "inf"),
        arrows=(
            Arrow("a1", "1", "2"),
            Arrow("a2", "1", "2"),
            Arrow("b1", "2", "1"),
            Arrow("b2", "2", "1"),
            Arrow("iota", "inf", "1"),
        ),
        framing="inf",
    )
    w = Potential(((1, ("a1", "b1", "a2", "b2")), (-1, ("a1", "b2", "a2", "b1"))))
    return q, w


def _q_reduced() -> tuple[Quiver, Potential]:
    q = Quiver(
        vertices=("2", "inf"),
        arrows=(
            Arrow("a1p", "inf", "2"),
            Arrow("a2p", "inf", "2"),
            Arrow("b1p", "2", "inf"),
            Arrow("a1pp", "2", "2"),
            Arrow("a2pp", "2", "2"),
            Arrow("b1pp", "2", "2"),
        ),
        framing="inf",
    )
    w = Potential(
        (
            (1, ("a1pp", "b1p", "a2p")),
            (-1, ("a2pp", "b1p", "a1p")),
            (1, ("a1pp", "b1pp", "a2pp")),
            (-1, ("a2pp", "b1pp", "a1pp")),
        )
    )
    return q, w


def _q_alpha(parts: tuple[int, ...]) -> tuple[Quiver, Potential]:
    l = len(parts)
    vertices = tuple(f"2_{i}" for i in range(1, l + 1)) + ("inf",)
    arrows = []
    for i in range(1, l + 1):
        arrows += [
            Arrow(f"a1p_{i}", "inf", f"2_{i}"),
            Arrow(f"a2p_{i}", "inf", f"2_{i}"),
            Arrow(f"b1p_{i}", f"2_{i}", "inf"),
            Arrow(f"b1pp_{i}", f"2_{i}", f"2_{i}"),
        ]
    for i in range(1, l + 1):
        for j in range(1, l + 1):
            # loops-with-indices: the (i, j) family runs 2_j -> 2_i
            arrows += [
                Arrow(f"a1pp_{i}_{j}", f"2_{j}", f"2_{i}"),
                Arrow(f"a2pp_{i}_{j}", f"2_{j}", f"2_{i}"),
            ]
    terms = []
    for i in range(1, l + 1):
        for j in range(1, l + 1):
            terms.append((1, (f"a1pp_{j}_{i}", f"b1p_{j}", f"a2p_{i}")))
            terms.append((-1, (f"a2pp_{j}_{i}", f"b1p_{j}", f"a1p_{i}")))
            terms.append((1, (f"a1pp_{j}_{i}", f"b1pp_{j}", f"a2pp_{i}_{j}")))
            terms.append((-1, (f"a2pp_{j}_{i}", f"b1pp_{j}", f"a1pp_{i}_{j}")))
    return Quiver(vertices, tuple(arrows), "inf"), Potential(tuple(terms))


def preset(name: str) -> tuple[Quiver, Potential]:
    """Built-in quivers: bbs, conifold-framed, q-r, q-alpha:<parts>."""
    if name == "bbs":
        return _bbs()
    if name == "conifold-framed":
        return _conifold_framed()
    if name == "q-r":
        return _q_reduced()
    if name.startswith("q-alpha:"):
        spec = name.split(":", 1)[1]
        try:
            parts = tuple(int(p) for p in spec.split(",") if p)
        except ValueError:
            raise ValueError(f"bad partition spec {spec!r}") from None
        if not parts or any(p < 1 for p in parts):
            raise ValueError(f"bad partition spec {spec!r}")
        return _q_alpha(parts)
    raise KeyError(name)


PRESET_NAMES = ("bbs", "conifold-framed", "q-r", "q-alpha:<parts>")
