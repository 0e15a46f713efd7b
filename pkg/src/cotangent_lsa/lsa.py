"""Left-symmetric (pre-Lie) products as tensors over a base Lie algebra.

A product is a full, non-symmetric tensor p_{ij}^k; the two defining axioms
are checked, never assumed:

  (1)  the associator x*(y*z) - (x*y)*z is symmetric in x and y, and
  (2)  x*y - y*x reproduces the Lie bracket of the base.

Completeness (nilpotency of every right translation) is certified by two
independent routes: a fast simultaneous-triangularization pass, and the
characteristic-zero power-trace criterion applied to a symbolic generic
element.  Both are exact.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .algebra_core import (
    BasisLabel,
    LieAlgebra,
    LinearMap,
    Vector,
    basis_vector,
    bracket,
    lower_central_series,
    vector_of,
    zero_vector,
)
from .errors import AxiomsNotVerified, DimensionMismatch
from .exactnum import (
    ONE,
    ZERO,
    MultiPoly,
    Scalar,
    as_scalar,
    nonzero_point,
    poly_mat_mul,
)
from .verification import VerificationReport, Witness, make_report

ProductTable = Mapping[tuple[int, int], Mapping[int, Scalar]]


@dataclass(frozen=True)
class LsaProduct:
    """Bilinear product over a base Lie algebra, stored as a sparse tensor.

    Both orientations (i, j) and (j, i) are stored when nonzero; no symmetry
    of any kind is assumed.
    """

    base: LieAlgebra
    products: ProductTable

    def __post_init__(self):
        d = self.base.dim
        for (i, j), column in self.products.items():
            if not (0 <= i < d and 0 <= j < d):
                raise ValueError(f"product pair ({i}, {j}) out of range")
            for k, c in column.items():
                if not 0 <= k < d:
                    raise ValueError(f"product target {k} out of range")
                if c == 0:
                    raise ValueError("zero product coefficients must not be stored")

    @classmethod
    def from_triplets(cls, base: LieAlgebra,
                      triplets: Iterable[tuple[int, int, int, Scalar]]) -> "LsaProduct":
        table: dict[tuple[int, int], dict[int, Scalar]] = {}
        seen = set()
        for i, j, k, c in triplets:
            if (i, j, k) in seen:
                raise ValueError(f"duplicate product entry ({i}, {j}, {k})")
            seen.add((i, j, k))
            val = as_scalar(c)
            if val:
                table.setdefault((i, j), {})[k] = val
        return cls(base, table)

    def product_basis(self, i: int, j: int) -> dict[int, Scalar]:
        return dict(self.products.get((i, j), {}))

    def triplets(self) -> list[tuple[int, int, int, Scalar]]:
        out = []
        for (i, j), column in self.products.items():
            for k, c in column.items():
                out.append((i, j, k, c))
        out.sort(key=lambda t: t[:3])
        return out


def lsa_product(S: LsaProduct, x: Sequence[Scalar], y: Sequence[Scalar]) -> Vector:
    """Bilinear evaluation of the product tensor."""
    d = S.base.dim
    xv = vector_of(x, d)
    yv = vector_of(y, d)
    out = [ZERO] * d
    for (i, j), column in S.products.items():
        coeff = xv[i] * yv[j]
        if coeff:
            for k, c in column.items():
                out[k] += coeff * c
    return tuple(out)


def left_translation(S: LsaProduct, x: Sequence[Scalar]) -> LinearMap:
    """Matrix of y -> x*y in the fixed basis."""
    d = S.base.dim
    xv = vector_of(x, d)
    rows = [[ZERO] * d for _ in range(d)]
    for (i, j), column in S.products.items():
        if xv[i]:
            for k, c in column.items():
                rows[k][j] += xv[i] * c
    return LinearMap(tuple(tuple(r) for r in rows))


def right_translation(S: LsaProduct, x: Sequence[Scalar]) -> LinearMap:
    """Matrix of y -> y*x in the fixed basis."""
    d = S.base.dim
    xv = vector_of(x, d)
    rows = [[ZERO] * d for _ in range(d)]
    for (i, j), column in S.products.items():
        if xv[j]:
            for k, c in column.items():
                rows[k][i] += xv[j] * c
    return LinearMap(tuple(tuple(r) for r in rows))


# ---------------------------------------------------------------------------
# axiom checks
# ---------------------------------------------------------------------------

def _sparse_sub(a: Mapping[int, Scalar], b: Mapping[int, Scalar]) -> dict[int, Scalar]:
    out = dict(a)
    for k, v in b.items():
        s = out.get(k, ZERO) - v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def _left_mul(S: LsaProduct, i: int, vec: Mapping[int, Scalar]) -> dict[int, Scalar]:
    """x_i * v for a sparse vector v."""
    out: dict[int, Scalar] = {}
    for j, a in vec.items():
        for k, c in S.products.get((i, j), {}).items():
            s = out.get(k, ZERO) + a * c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return out


def _right_mul(S: LsaProduct, vec: Mapping[int, Scalar], j: int) -> dict[int, Scalar]:
    """v * x_j for a sparse vector v."""
    out: dict[int, Scalar] = {}
    for i, a in vec.items():
        for k, c in S.products.get((i, j), {}).items():
            s = out.get(k, ZERO) + a * c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return out


def _associator(S: LsaProduct, a: int, b: int, c: int) -> dict[int, Scalar]:
    return _sparse_sub(
        _left_mul(S, a, S.product_basis(b, c)),
        _right_mul(S, S.product_basis(a, b), c),
    )


def _dense(vec: Mapping[int, Scalar], dim: int) -> Vector:
    return tuple(vec.get(i, ZERO) for i in range(dim))


def check_bracket_compatibility(S: LsaProduct) -> VerificationReport:
    """x_i*x_j - x_j*x_i must equal the bracket of the base, pair by pair."""
    d = S.base.dim
    witnesses = []
    for i in range(d):
        for j in range(i + 1, d):
            comm = _sparse_sub(S.product_basis(i, j), S.product_basis(j, i))
            br = S.base.bracket_basis(i, j)
            if comm != br:
                witnesses.append(Witness(
                    indices=(i, j),
                    labels=(S.base.label_str(i), S.base.label_str(j)),
                    lhs=_dense(comm, d),
                    rhs=_dense(br, d),
                    detail="commutator of the product differs from the bracket",
                ))
    return make_report("check_bracket_compatibility", witnesses)


def check_associator_symmetry(S: LsaProduct) -> VerificationReport:
    """Associator symmetry in the first two slots, over all basis triples."""
    d = S.base.dim
    witnesses = []
    for i in range(d):
        for j in range(i + 1, d):
            for k in range(d):
                lhs = _associator(S, i, j, k)
                rhs = _associator(S, j, i, k)
                if lhs != rhs:
                    witnesses.append(Witness(
                        indices=(i, j, k),
                        labels=(S.base.label_str(i), S.base.label_str(j), S.base.label_str(k)),
                        lhs=_dense(lhs, d),
                        rhs=_dense(rhs, d),
                        detail="associator is not symmetric in the first two arguments",
                    ))
    return make_report("check_associator_symmetry", witnesses)


def check_left_symmetric(S: LsaProduct) -> VerificationReport:
    """Both product axioms at once; witnesses carry the failing sides."""
    witnesses = list(check_associator_symmetry(S).witnesses)
    witnesses += list(check_bracket_compatibility(S).witnesses)
    return make_report("check_left_symmetric", witnesses)


def _left_sparse_matrices(S: LsaProduct) -> list[dict[int, dict[int, Scalar]]]:
    """Row-major sparse matrix of each basis left translation."""
    mats: list[dict[int, dict[int, Scalar]]] = [{} for _ in range(S.base.dim)]
    for (i, j), column in S.products.items():
        for k, c in column.items():
            mats[i].setdefault(k, {})[j] = c
    return mats


def _sp_mul(A: dict[int, dict[int, Scalar]], B: dict[int, dict[int, Scalar]]):
    out: dict[int, dict[int, Scalar]] = {}
    for r, row in A.items():
        acc: dict[int, Scalar] = {}
        for m, a in row.items():
            brow = B.get(m)
            if not brow:
                continue
            for c, b in brow.items():
                s = acc.get(c, ZERO) + a * b
                if s:
                    acc[c] = s
                else:
                    acc.pop(c, None)
        if acc:
            out[r] = acc
    return out


def _sp_addmul(acc: dict[int, dict[int, Scalar]], coeff: Scalar,
               M: dict[int, dict[int, Scalar]]):
    for r, row in M.items():
        arow = acc.setdefault(r, {})
        for c, v in row.items():
            s = arow.get(c, ZERO) + coeff * v
            if s:
                arow[c] = s
            else:
                arow.pop(c, None)
        if not arow:
            acc.pop(r, None)


def check_left_hom(S: LsaProduct) -> VerificationReport:
    """Left translation must send brackets to matrix commutators, pairwise.

    Checked as stated even when the commutator axiom fails, so a perturbed
    product can be diagnosed one axiom at a time.
    """
    d = S.base.dim
    mats = _left_sparse_matrices(S)
    witnesses = []
    for i in range(d):
        for j in range(i + 1, d):
            lhs: dict[int, dict[int, Scalar]] = {}
            _sp_addmul(lhs, ONE, _sp_mul(mats[i], mats[j]))
            _sp_addmul(lhs, -ONE, _sp_mul(mats[j], mats[i]))
            rhs: dict[int, dict[int, Scalar]] = {}
            for k, c in S.base.bracket_basis(i, j).items():
                _sp_addmul(rhs, c, mats[k])
            if lhs != rhs:
                witnesses.append(Witness(
                    indices=(i, j),
                    labels=(S.base.label_str(i), S.base.label_str(j)),
                    detail="commutator of left translations differs from the "
                           "left translation of the bracket",
                ))
    return make_report("check_left_hom", witnesses)


# ---------------------------------------------------------------------------
# completeness
# ---------------------------------------------------------------------------

class CompletenessVerdict(enum.Enum):
    COMPLETE_BY_TRIANGULARIZATION = "CompleteByTriangularization"
    COMPLETE_BY_TRACE_CRITERION = "CompleteByTraceCriterion"
    NOT_COMPLETE = "NotComplete"


@dataclass(frozen=True)
class CompletenessWitness:
    """Rational point whose right translation has a nonzero power trace."""

    point: tuple[Scalar, ...]
    power: int
    trace_value: Scalar


@dataclass(frozen=True)
class CompletenessResult:
    verdict: CompletenessVerdict
    witness: CompletenessWitness | None = None
    order: tuple[int, ...] | None = None


def _family_order(base: LieAlgebra) -> list[int] | None:
    """The ordering t, e_n, f_n, ..., e_1, f_1, z, read off the labels."""
    slots: dict[str, int] = {}
    for idx in range(base.dim):
        slots[str(base.labels[idx])] = idx
    if base.dim % 2 != 0:
        return None
    n = base.dim // 2 - 1
    if n < 1 or "t" not in slots or "z" not in slots:
        return None
    order = [slots["t"]]
    for i in range(n, 0, -1):
        if f"e{i}" not in slots or f"f{i}" not in slots:
            return None
        order += [slots[f"e{i}"], slots[f"f{i}"]]
    order.append(slots["z"])
    return order if len(set(order)) == base.dim else None


def _series_depth_order(base: LieAlgebra) -> list[int]:
    """Basis indices sorted by how deep they sit in the lower central series."""
    series = lower_central_series(base)
    depth = []
    for i in range(base.dim):
        v = basis_vector(base.dim, i)
        d = 0
        for k, term in enumerate(series):
            if term.contains(v):
                d = k
        depth.append(d)
    return sorted(range(base.dim), key=lambda i: (depth[i], i))


def _strictly_triangular_under(S: LsaProduct, order: Sequence[int]) -> bool:
    """True when every right translation strictly lowers the given ordering."""
    pos = {idx: p for p, idx in enumerate(order)}
    for (i, _j), column in S.products.items():
        for k in column:
            if pos[k] <= pos[i]:
                return False
    return True


def triangularization_order(S: LsaProduct) -> tuple[int, ...] | None:
    """Ordering under which all right translations are strictly triangular.

    Only the orderings induced by the lower central series and the fixed
    family ordering are tried; a full permutation search is never attempted.
    """
    candidates = []
    fam = _family_order(S.base)
    if fam is not None:
        candidates.append(fam)
    candidates.append(_series_depth_order(S.base))
    for order in candidates:
        if _strictly_triangular_under(S, order):
            return tuple(order)
    return None


def generic_right_translation(S: LsaProduct) -> list[list[MultiPoly]]:
    """Right translation by a generic element, one variable per coordinate."""
    d = S.base.dim
    zero = MultiPoly(d)
    rows = [[zero] * d for _ in range(d)]
    for (i, j), column in S.products.items():
        xj = MultiPoly.variable(d, j)
        for k, c in column.items():
            rows[k][i] = rows[k][i] + c * xj
    return rows


def check_complete(S: LsaProduct, method: str = "auto") -> CompletenessResult:
    """Decide whether every right translation is nilpotent.

    Fast path: a single basis ordering making all right translations strictly
    triangular certifies nilpotency of every linear combination at once.
    Full path: all power traces of the generic right translation must vanish
    identically, which over a field of characteristic zero is equivalent to
    nilpotency at every point; a nonzero trace yields an explicit rational
    witness.  The product axioms are re-verified first.
    """
    if method not in ("auto", "trace"):
        raise ValueError(f"unknown method {method!r}")
    axioms = check_left_symmetric(S)
    if not axioms.passed:
        raise AxiomsNotVerified(
            "completeness is only defined for verified left-symmetric products")
    if method == "auto":
        order = triangularization_order(S)
        if order is not None:
            return CompletenessResult(
                CompletenessVerdict.COMPLETE_BY_TRIANGULARIZATION, order=order)
    d = S.base.dim
    generic = generic_right_translation(S)
    power = generic
    for k in range(1, d + 1):
        if k > 1:
            power = poly_mat_mul(power, generic)
        trace = MultiPoly(d)
        for i in range(d):
            trace = trace + power[i][i]
        if not trace.is_zero:
            point = nonzero_point(trace)
            return CompletenessResult(
                CompletenessVerdict.NOT_COMPLETE,
                witness=CompletenessWitness(point, k, trace.evaluate(point)),
            )
    return CompletenessResult(CompletenessVerdict.COMPLETE_BY_TRACE_CRITERION)


# ---------------------------------------------------------------------------
# isomorphism certificates
# ---------------------------------------------------------------------------

def verify_lsa_isomorphism(S: LsaProduct, S2: LsaProduct, phi: LinearMap) -> VerificationReport:
    """Check a candidate isomorphism certificate between two products.

    Passes exactly when phi is invertible, intertwines the base brackets, and
    intertwines the products on every ordered basis pair.
    """
    d = S.base.dim
    if S2.base.dim != d or phi.dim != d:
        raise DimensionMismatch("certificate and products must share one dimension")
    if not phi.is_invertible():
        return make_report("verify_lsa_isomorphism", [Witness(
            indices=(), labels=(), detail="certificate matrix is singular")])
    witnesses = []
    images = [phi.column(i) for i in range(d)]
    for i in range(d):
        for j in range(i + 1, d):
            lhs = phi.apply(_dense(S.base.bracket_basis(i, j), d))
            rhs = bracket(S2.base, images[i], images[j])
            if lhs != rhs:
                witnesses.append(Witness(
                    indices=(i, j),
                    labels=(S.base.label_str(i), S.base.label_str(j)),
                    lhs=lhs, rhs=rhs,
                    detail="bracket is not intertwined",
                ))
    for i in range(d):
        for j in range(d):
            lhs = phi.apply(_dense(S.product_basis(i, j), d))
            rhs = lsa_product(S2, images[i], images[j])
            if lhs != rhs:
                witnesses.append(Witness(
                    indices=(i, j),
                    labels=(S.base.label_str(i), S.base.label_str(j)),
                    lhs=lhs, rhs=rhs,
                    detail="product is not intertwined",
                ))
    return make_report("verify_lsa_isomorphism", witnesses)
