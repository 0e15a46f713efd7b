"""Lie algebras presented by structure constants over the rationals.

The bracket tensor is stored sparsely for index pairs i < j only, so
antisymmetry holds by construction.  The module provides the two
constructors everything else builds on (semidirect sum of a line with an
abelian algebra by a derivation, and the cotangent extension by the
coadjoint action), plus the structural invariants: Jacobi verification,
lower central series, center, and nilpotency step.

Algebras, subspaces, and linear maps are immutable after construction; all
operations are pure functions, so concurrent use on shared inputs is safe.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import DimensionMismatch, NonSquareMatrix, ParseError, SizeTooSmall
from .exactnum import ONE, ZERO, Scalar, as_scalar
from .verification import VerificationReport, Witness, make_report

Vector = tuple[Scalar, ...]

_LABEL_RE = re.compile(r"^([ef])([1-9]\d*)$")


# ---------------------------------------------------------------------------
# basis labels
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BasisLabel:
    """Symbolic name of a basis vector: t, z, e_i, f_i, or free-form."""

    kind: str  # "t" | "z" | "e" | "f" | "generic"
    index: int | None = None
    name: str | None = None

    def __post_init__(self):
        if self.kind in ("t", "z"):
            if self.index is not None or self.name is not None:
                raise ValueError(f"label {self.kind!r} takes no index or name")
        elif self.kind in ("e", "f"):
            if self.index is None or self.index < 1:
                raise ValueError(f"label {self.kind!r} needs a positive index")
        elif self.kind == "generic":
            if not self.name:
                raise ValueError("generic label needs a name")
        else:
            raise ValueError(f"unknown label kind {self.kind!r}")

    @classmethod
    def t(cls) -> "BasisLabel":
        return cls("t")

    @classmethod
    def z(cls) -> "BasisLabel":
        return cls("z")

    @classmethod
    def e(cls, i: int) -> "BasisLabel":
        return cls("e", index=i)

    @classmethod
    def f(cls, i: int) -> "BasisLabel":
        return cls("f", index=i)

    @classmethod
    def generic(cls, name: str) -> "BasisLabel":
        return cls("generic", name=name)

    @classmethod
    def parse(cls, text: str) -> "BasisLabel":
        if text == "t":
            return cls.t()
        if text == "z":
            return cls.z()
        m = _LABEL_RE.match(text)
        if m:
            return cls(m.group(1), index=int(m.group(2)))
        return cls.generic(text)

    def __str__(self) -> str:
        if self.kind in ("t", "z"):
            return self.kind
        if self.kind in ("e", "f"):
            return f"{self.kind}{self.index}"
        return self.name  # type: ignore[return-value]


# ---------------------------------------------------------------------------
# dense rational linear algebra (internal helpers)
# ---------------------------------------------------------------------------

def zero_vector(dim: int) -> Vector:
    return (ZERO,) * dim

def basis_vector(dim: int, i: int) -> Vector:
    return tuple(ONE if j == i else ZERO for j in range(dim))

def vector_of(seq: Sequence, dim: int | None = None) -> Vector:
    v = tuple(as_scalar(x) for x in seq)
    if dim is not None and len(v) != dim:
        raise DimensionMismatch(f"expected a vector of length {dim}, got {len(v)}")
    return v


def _mat_mul(A, B):
    n, m, p = len(A), len(B), len(B[0])
    out = [[ZERO] * p for _ in range(n)]
    for i in range(n):
        row = A[i]
        acc = out[i]
        for k in range(m):
            a = row[k]
            if a:
                brow = B[k]
                for j in range(p):
                    if brow[j]:
                        acc[j] += a * brow[j]
    return out


def _mat_vec(A, v):
    return tuple(sum((row[j] * v[j] for j in range(len(v)) if v[j]), ZERO) for row in A)


def _transpose(A):
    return [list(col) for col in zip(*A)]


def _identity_rows(n):
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def _det(rows) -> Scalar:
    m = [list(r) for r in rows]
    n = len(m)
    det = ONE
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            return ZERO
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        inv = ONE / m[c][c]
        for r in range(c + 1, n):
            if m[r][c]:
                f = m[r][c] * inv
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return det


def _inverse(rows):
    n = len(rows)
    m = [list(r) + ident for r, ident in zip(rows, _identity_rows(n))]
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            raise ValueError("matrix is singular")
        m[c], m[piv] = m[piv], m[c]
        inv = ONE / m[c][c]
        m[c] = [x * inv for x in m[c]]
        for r in range(n):
            if r != c and m[r][c]:
                f = m[r][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return [row[n:] for row in m]


def _rref(rows):
    """Reduced row echelon form; returns (nonzero rows as tuples, pivot cols)."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = ONE / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return [tuple(row) for row in m[:r]], pivots


def _nullspace(rows, ncols):
    """Canonical basis of the kernel of the matrix given by ``rows``."""
    reduced, pivots = _rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [ZERO] * ncols
        v[fc] = ONE
        for r, pc in enumerate(pivots):
            v[pc] = -reduced[r][fc]
        basis.append(tuple(v))
    return basis


# ---------------------------------------------------------------------------
# linear maps and subspaces
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LinearMap:
    """Square matrix of scalars acting on coordinate columns."""

    rows: tuple[tuple[Scalar, ...], ...]

    def __post_init__(self):
        n = len(self.rows)
        if n == 0 or any(len(r) != n for r in self.rows):
            raise NonSquareMatrix("a linear map needs a square, nonempty matrix")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence]) -> "LinearMap":
        return cls(tuple(tuple(as_scalar(x) for x in row) for row in rows))

    @classmethod
    def identity(cls, dim: int) -> "LinearMap":
        return cls(tuple(basis_vector(dim, i) for i in range(dim)))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def apply(self, vec: Sequence[Scalar]) -> Vector:
        if len(vec) != self.dim:
            raise DimensionMismatch("vector length does not match the map")
        return _mat_vec(self.rows, tuple(vec))

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.rows)

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        if self.dim != other.dim:
            raise DimensionMismatch("cannot compose maps of different dimensions")
        return LinearMap(tuple(tuple(r) for r in _mat_mul(self.rows, other.rows)))

    def transpose(self) -> "LinearMap":
        return LinearMap(tuple(tuple(r) for r in _transpose(self.rows)))

    def det(self) -> Scalar:
        return _det(self.rows)

    def is_invertible(self) -> bool:
        return self.det() != 0

    def inverse(self) -> "LinearMap":
        return LinearMap(tuple(tuple(r) for r in _inverse(self.rows)))


@dataclass(frozen=True)
class Subspace:
    """Subspace in reduced echelon form; equal subspaces compare equal."""

    ambient_dim: int
    rows: tuple[tuple[Scalar, ...], ...]

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        rows = [vector_of(v, ambient_dim) for v in vectors]
        reduced, _ = _rref(rows)
        return cls(ambient_dim, tuple(reduced))

    @classmethod
    def whole(cls, dim: int) -> "Subspace":
        return cls(dim, tuple(basis_vector(dim, i) for i in range(dim)))

    @classmethod
    def zero(cls, dim: int) -> "Subspace":
        return cls(dim, ())

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def is_zero(self) -> bool:
        return not self.rows

    def reduce(self, vec: Sequence[Scalar]) -> Vector:
        """Remainder of a vector after elimination against the basis."""
        v = list(vector_of(vec, self.ambient_dim))
        for row in self.rows:
            lead = next(c for c in range(self.ambient_dim) if row[c])
            if v[lead]:
                f = v[lead]
                for c in range(self.ambient_dim):
                    if row[c]:
                        v[c] -= f * row[c]
        return tuple(v)

    def contains(self, vec: Sequence[Scalar]) -> bool:
        return all(x == 0 for x in self.reduce(vec))


# ---------------------------------------------------------------------------
# Lie algebras
# ---------------------------------------------------------------------------

BracketTable = Mapping[tuple[int, int], Mapping[int, Scalar]]


@dataclass(frozen=True)
class LieAlgebra:
    """Finite-dimensional Lie algebra given by labelled structure constants.

    ``brackets``: sparse tensor {(i, j): {k: c}} with i < j; the bracket of a
    swapped pair is synthesized with the opposite sign, so antisymmetry can
    never be violated by the stored data.
    """

    dim: int
    labels: tuple[BasisLabel, ...]
    brackets: BracketTable

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dimension must be positive")
        if len(self.labels) != self.dim:
            raise DimensionMismatch("one label per basis vector is required")
        for (i, j), column in self.brackets.items():
            if not 0 <= i < j < self.dim:
                raise ValueError(f"bracket pair ({i}, {j}) is not canonical (need i < j)")
            for k, c in column.items():
                if not 0 <= k < self.dim:
                    raise ValueError(f"bracket target {k} out of range")
                if c == 0:
                    raise ValueError("zero structure constants must not be stored")

    @classmethod
    def from_triplets(cls, dim: int, labels: Sequence[BasisLabel],
                      triplets: Iterable[tuple[int, int, int, Scalar]]) -> "LieAlgebra":
        table: dict[tuple[int, int], dict[int, Scalar]] = {}
        seen = set()
        for i, j, k, c in triplets:
            if (i, j, k) in seen:
                raise ValueError(f"duplicate bracket entry ({i}, {j}, {k})")
            seen.add((i, j, k))
            val = as_scalar(c)
            if val:
                table.setdefault((i, j), {})[k] = val
        return cls(dim, tuple(labels), table)

    def label_str(self, i: int) -> str:
        return str(self.labels[i])

    def bracket_basis(self, i: int, j: int) -> dict[int, Scalar]:
        """[x_i, x_j] as a sparse vector, with antisymmetry synthesized."""
        if i == j:
            return {}
        if i < j:
            return dict(self.brackets.get((i, j), {}))
        return {k: -c for k, c in self.brackets.get((j, i), {}).items()}

    def triplets(self) -> list[tuple[int, int, int, Scalar]]:
        out = []
        for (i, j), column in self.brackets.items():
            for k, c in column.items():
                out.append((i, j, k, c))
        out.sort(key=lambda t: t[:3])
        return out

    def ad_matrix(self, i: int) -> list[list[Scalar]]:
        """Matrix of ad_{x_i}: columns are [x_i, x_j]."""
        rows = [[ZERO] * self.dim for _ in range(self.dim)]
        for j in range(self.dim):
            for k, c in self.bracket_basis(i, j).items():
                rows[k][j] = c
        return rows

    def is_abelian(self) -> bool:
        return not self.brackets


def bracket(L: LieAlgebra, x: Sequence[Scalar], y: Sequence[Scalar]) -> Vector:
    """Bilinear, antisymmetric evaluation of the structure tensor."""
    xv = vector_of(x, L.dim)
    yv = vector_of(y, L.dim)
    out = [ZERO] * L.dim
    for (i, j), column in L.brackets.items():
        coeff = xv[i] * yv[j] - xv[j] * yv[i]
        if coeff:
            for k, c in column.items():
                out[k] += coeff * c
    return tuple(out)


def _bracket_sparse(L: LieAlgebra, left: Mapping[int, Scalar],
                    right: Mapping[int, Scalar]) -> dict[int, Scalar]:
    out: dict[int, Scalar] = {}
    for i, a in left.items():
        for j, b in right.items():
            coeff = a * b
            if not coeff:
                continue
            for k, c in L.bracket_basis(i, j).items():
                s = out.get(k, ZERO) + coeff * c
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
    return out


def check_jacobi(L: LieAlgebra) -> VerificationReport:
    """Cyclic Jacobi sum over all basis triples i < j < k; exact."""
    witnesses = []
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            for k in range(j + 1, L.dim):
                total: dict[int, Scalar] = {}
                for (a, b, c) in ((i, j, k), (j, k, i), (k, i, j)):
                    inner = L.bracket_basis(b, c)
                    term = _bracket_sparse(L, {a: ONE}, inner)
                    for m, v in term.items():
                        s = total.get(m, ZERO) + v
                        if s:
                            total[m] = s
                        else:
                            total.pop(m, None)
                if total:
                    lhs = tuple(total.get(m, ZERO) for m in range(L.dim))
                    witnesses.append(Witness(
                        indices=(i, j, k),
                        labels=(L.label_str(i), L.label_str(j), L.label_str(k)),
                        lhs=lhs,
                        rhs=zero_vector(L.dim),
                        detail="cyclic Jacobi sum is nonzero",
                    ))
    return make_report("check_jacobi", witnesses)


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def jordan_nilpotent_block(n: int) -> LinearMap:
    """n x n block with ones on the superdiagonal, so column i+1 maps to row i."""
    if n < 2:
        raise SizeTooSmall("Jordan block needs n >= 2")
    rows = [[ONE if j == i + 1 else ZERO for j in range(n)] for i in range(n)]
    return LinearMap.from_rows(rows)


def _matrix_rows(D) -> list[list[Scalar]]:
    if isinstance(D, LinearMap):
        return [list(r) for r in D.rows]
    rows = [[as_scalar(x) for x in row] for row in D]
    if not rows or any(len(r) != len(rows) for r in rows):
        raise NonSquareMatrix("derivation matrix must be square and nonempty")
    return rows


def semidirect_sum(D) -> LieAlgebra:
    """Line extension of an abelian algebra by the derivation D.

    Basis {t, e_1 .. e_n} with [t, e_j] = D(e_j) and all other brackets zero.
    """
    rows = _matrix_rows(D)
    n = len(rows)
    labels = [BasisLabel.t()] + [BasisLabel.e(i) for i in range(1, n + 1)]
    triplets = []
    for j in range(n):
        for i in range(n):
            if rows[i][j]:
                triplets.append((0, j + 1, i + 1, rows[i][j]))
    return LieAlgebra.from_triplets(n + 1, labels, triplets)


def cotangent(L: LieAlgebra) -> LieAlgebra:
    """Cotangent extension: the algebra acting on its dual by the coadjoint action.

    Basis order is the original basis followed by its dual basis; brackets are
    [x_i, x_j] as in L, [x_i, x^j] = -sum_k c_{ik}^j x^k, and duals commute.
    Jacobi-valid whenever L is.
    """
    d = L.dim
    labels = list(L.labels) + [BasisLabel.generic(f"{L.label_str(i)}*") for i in range(d)]
    triplets = [(i, j, k, c) for (i, j, k, c) in L.triplets()]
    for i in range(d):
        for j in range(d):
            for k in range(d):
                c = L.bracket_basis(i, k).get(j)
                if c:
                    triplets.append((i, d + j, d + k, -c))
    return LieAlgebra.from_triplets(2 * d, labels, triplets)


# Fixed basis ordering for the cotangent model algebras:
# {z, e_1, f_1, ..., e_n, f_n, t}.  Every tensor, report, and file uses it.
Z_INDEX = 0

def e_index(i: int) -> int:
    return 2 * i - 1

def f_index(i: int) -> int:
    return 2 * i

def t_index(n: int) -> int:
    return 2 * n + 1


def cotangent_filiform(n: int) -> LieAlgebra:
    """Cotangent extension of the filiform algebra of the size-n Jordan block.

    Built directly from its bracket table in the fixed basis ordering
    {z, e_1, f_1, ..., e_n, f_n, t}:

        [t, e_{i+1}] = e_i,  [t, f_{i+1}] = -f_i,  [e_{i+1}, f_{n-i+1}] = z

    for i = 1 .. n-1.  The cross-check against cotangent(semidirect_sum(J_n))
    lives in the test suite.
    """
    if n < 2:
        raise SizeTooSmall("the construction needs n >= 2")
    dim = 2 * n + 2
    labels = [BasisLabel.z()]
    for i in range(1, n + 1):
        labels += [BasisLabel.e(i), BasisLabel.f(i)]
    labels.append(BasisLabel.t())
    t = t_index(n)
    triplets = []
    for i in range(1, n):
        # stored pairs must satisfy i < j; swap and negate where needed
        triplets.append((e_index(i + 1), t, e_index(i), Fraction(-1)))
        triplets.append((f_index(i + 1), t, f_index(i), Fraction(1)))
        a, b = e_index(i + 1), f_index(n - i + 1)
        if a < b:
            triplets.append((a, b, Z_INDEX, Fraction(1)))
        else:
            triplets.append((b, a, Z_INDEX, Fraction(-1)))
    return LieAlgebra.from_triplets(dim, labels, triplets)


def cotangent_filiform_permutation(n: int) -> tuple[int, ...]:
    """Relabeling taking cotangent(semidirect_sum(J_n)) to the fixed ordering.

    Entry a is the index, in the raw cotangent construction ordering
    [t, e_1..e_n, t*, e^1..e^n], of the basis vector sitting at position a of
    {z, e_1, f_1, ..., e_n, f_n, t}; the duals pair up as z = t* and
    f_i = e^{n-i+1}.
    """
    perm = [0] * (2 * n + 2)
    perm[Z_INDEX] = n + 1
    perm[t_index(n)] = 0
    for i in range(1, n + 1):
        perm[e_index(i)] = i
        perm[f_index(i)] = 2 * n + 2 - i
    return tuple(perm)


def relabeled(L: LieAlgebra, perm: Sequence[int], labels: Sequence[BasisLabel]) -> LieAlgebra:
    """Algebra in a permuted basis; ``perm[new]`` is the old index."""
    if sorted(perm) != list(range(L.dim)):
        raise ValueError("perm must be a permutation of the basis indices")
    inv = {old: new for new, old in enumerate(perm)}
    triplets = []
    for (i, j, k, c) in L.triplets():
        a, b = inv[i], inv[j]
        if a < b:
            triplets.append((a, b, inv[k], c))
        else:
            triplets.append((b, a, inv[k], -c))
    return LieAlgebra.from_triplets(L.dim, labels, triplets)


# ---------------------------------------------------------------------------
# structural invariants
# ---------------------------------------------------------------------------

def subspace_bracket(L: LieAlgebra, A: Subspace, B: Subspace) -> Subspace:
    """Span of all brackets between basis vectors of two subspaces."""
    vectors = []
    for u in A.rows:
        for v in B.rows:
            w = bracket(L, u, v)
            if any(w):
                vectors.append(w)
    return Subspace.span(vectors, L.dim)


def lower_central_series(L: LieAlgebra) -> list[Subspace]:
    """Descending series of iterated bracket spans, listed until it stabilizes."""
    whole = Subspace.whole(L.dim)
    series = [whole]
    for _ in range(L.dim + 1):  # hard cap; guarantees termination
        nxt = subspace_bracket(L, series[-1], whole)
        if nxt == series[-1]:
            break
        series.append(nxt)
        if nxt.is_zero:
            break
    return series


def center(L: LieAlgebra) -> Subspace:
    """Kernel of the joint adjoint action: all x with [x, y] = 0 for every y."""
    stacked = []
    for j in range(L.dim):
        block = [[ZERO] * L.dim for _ in range(L.dim)]
        for i in range(L.dim):
            for k, c in L.bracket_basis(i, j).items():
                block[k][i] = c
        stacked.extend(block)
    return Subspace.span(_nullspace(stacked, L.dim), L.dim)


def nilpotency_step(L: LieAlgebra) -> int | None:
    """Smallest k with vanishing k-th series term, or None when not nilpotent."""
    series = lower_central_series(L)
    if series[-1].is_zero:
        return len(series) - 1
    return None
