"""Generic finite-dimensional associative algebras given by structure constants.

Used for the extension algebra, for the base block algebra, and for
hand-built negative controls in tests.  Provides the radical by the
characteristic-zero trace-form criterion, quotients by a verified ideal,
and Wedderburn identification of a semisimple table through its center.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import AlgebraSpec
from .errors import IllConditioned, NonSquareComponent, NotAnIdeal, NotSemisimple

_GAP_FACTOR = 1e3


@dataclass(frozen=True, eq=False)
class StructureConstantAlgebra:
    """Multiplication table: basis_a * basis_b = sum_c table[a, b, c] basis_c."""

    table: np.ndarray
    unit: np.ndarray

    def __post_init__(self):
        table = np.asarray(self.table, dtype=complex)
        unit = np.asarray(self.unit, dtype=complex)
        d = table.shape[0]
        if table.shape != (d, d, d):
            raise ValueError(f"table must be cubic, got {table.shape}")
        if unit.shape != (d,):
            raise ValueError("unit coordinates do not match the table")
        table.setflags(write=False)
        unit.setflags(write=False)
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "unit", unit)

    @property
    def dim(self) -> int:
        return self.table.shape[0]

    def product(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return y @ np.tensordot(x, self.table, axes=(0, 0))

    def left_matrix(self, x: np.ndarray) -> np.ndarray:
        """Matrix of left multiplication by x on the coordinate space."""
        return np.tensordot(x, self.table, axes=(0, 0)).T

    def right_matrix(self, x: np.ndarray) -> np.ndarray:
        return np.tensordot(x, self.table, axes=(0, 1)).T

    def associativity_residual(self) -> float:
        """Worst deviation between the two association orders over all basis triples."""
        worst = 0.0
        for a in range(self.dim):
            left = np.einsum("bd,dce->bce", self.table[a], self.table)
            right = np.einsum("bcd,de->bce", self.table, self.table[a])
            worst = max(worst, float(np.abs(left - right).max()))
        return worst

    def unit_residual(self) -> float:
        worst = 0.0
        for b in range(self.dim):
            e = np.zeros(self.dim, dtype=complex)
            e[b] = 1.0
            worst = max(worst, float(np.abs(self.product(self.unit, e) - e).max()))
            worst = max(worst, float(np.abs(self.product(e, self.unit) - e).max()))
        return worst


def block_algebra(spec: AlgebraSpec) -> StructureConstantAlgebra:
    """Structure constants of the block algebra itself on its matrix-unit basis."""
    labels = [
        (i, k, l)
        for i, n in enumerate(spec.block_dims)
        for k in range(n)
        for l in range(n)
    ]
    index = {lab: a for a, lab in enumerate(labels)}
    d = len(labels)
    table = np.zeros((d, d, d), dtype=complex)
    for a, (i, k, l) in enumerate(labels):
        for b, (i2, k2, l2) in enumerate(labels):
            if i == i2 and l == k2:
                table[a, b, index[(i, k, l2)]] = 1.0
    unit = np.zeros(d, dtype=complex)
    for i, n in enumerate(spec.block_dims):
        for k in range(n):
            unit[index[(i, k, k)]] = 1.0
    return StructureConstantAlgebra(table, unit)


def _trace_form_gram(alg: StructureConstantAlgebra) -> np.ndarray:
    """Gram matrix of the regular-representation trace form,
    G[a, b] = trace(L_a L_b)."""
    d = alg.dim
    # (L_a)_{c, b} = table[a, b, c]; flatten so the contraction is one GEMM
    l_flat = np.transpose(alg.table, (0, 2, 1)).reshape(d, d * d)
    lt_flat = alg.table.reshape(d, d * d)
    return l_flat @ lt_flat.T


def radical(alg: StructureConstantAlgebra, tol: float = 1e-9) -> np.ndarray:
    """Orthonormal basis of the radical, found as the nullspace of the
    trace-form Gram matrix.  The rank split must show a clean gap (factor
    1000) between kept and discarded singular values, otherwise the decision
    would be unreliable and IllConditioned is raised.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    gram = _trace_form_gram(alg)
    u, s, vh = np.linalg.svd(gram)
    if s[0] == 0.0:
        return vh  # the zero algebra direction: everything is radical
    thr = tol * s[0]
    null_mask = s <= thr
    if null_mask.any() and not null_mask.all():
        kept_min = s[~null_mask].min()
        null_max = s[null_mask].max()
        if null_max > 0 and kept_min / null_max < _GAP_FACTOR:
            raise IllConditioned(
                f"singular values cluster at the threshold: {kept_min} vs {null_max}"
            )
    return vh[null_mask].conj()


def quotient(
    alg: StructureConstantAlgebra, radical_basis: np.ndarray, tol: float = 1e-9
) -> StructureConstantAlgebra:
    """Quotient by the span of radical_basis, on the orthogonal complement basis.

    The basis must span a two-sided ideal; products of the candidate vectors
    with every basis vector are checked to stay in the span.
    """
    radical_basis = np.asarray(radical_basis, dtype=complex)
    if radical_basis.size == 0:
        return alg
    d = alg.dim
    q_rad, _ = np.linalg.qr(radical_basis.T)
    proj_rad = q_rad @ q_rad.conj().T

    for r_vec in radical_basis:
        for b in range(d):
            e = np.zeros(d, dtype=complex)
            e[b] = 1.0
            for prod in (alg.product(r_vec, e), alg.product(e, r_vec)):
                out = prod - proj_rad @ prod
                if np.linalg.norm(out) > tol * (1.0 + np.linalg.norm(prod)):
                    raise NotAnIdeal("candidate radical is not closed under multiplication")

    # orthogonal complement of the radical span
    u, s, vh = np.linalg.svd(radical_basis)
    rank_r = int(np.sum(s > tol * s[0]))
    comp = vh[rank_r:]  # rows: orthonormal basis, orthogonal to every radical vector
    m = comp.shape[0]
    table = np.zeros((m, m, m), dtype=complex)
    for a in range(m):
        for b in range(m):
            prod = alg.product(comp[a], comp[b])
            table[a, b] = comp.conj() @ prod
    unit = comp.conj() @ alg.unit
    return StructureConstantAlgebra(table, unit)


def _center_basis(alg: StructureConstantAlgebra, tol: float) -> np.ndarray:
    d = alg.dim
    stacked = np.zeros((d * d, d), dtype=complex)
    for b in range(d):
        e = np.zeros(d, dtype=complex)
        e[b] = 1.0
        stacked[b * d : (b + 1) * d] = alg.left_matrix(e) - alg.right_matrix(e)
    _, s, vh = np.linalg.svd(stacked, full_matrices=False)
    thr = tol * max(s[0], 1.0)
    n_null = int(np.sum(s <= thr))
    return vh[d - n_null :].conj()


def wedderburn_identify(
    alg: StructureConstantAlgebra, tol: float = 1e-9, seed: int = 7
) -> list[int]:
    """Dimensions of the simple components of a semisimple table.

    A random central element acts on the algebra with one eigenvalue per
    simple component; the eigenvalue multiplicities are the component
    dimensions, each a perfect square over the complex field.
    """
    rad = radical(alg, tol)
    if rad.shape[0] > 0:
        raise NotSemisimple(f"radical has dimension {rad.shape[0]}")
    center = _center_basis(alg, tol)
    m = center.shape[0]
    if m == 0:
        raise NotSemisimple("unital algebra must have a nonzero center")
    rng = np.random.default_rng(seed)
    for _ in range(8):
        coeffs = rng.normal(size=m) + 1j * rng.normal(size=m)
        z = coeffs @ center
        lz = alg.left_matrix(z)
        eigs = np.linalg.eigvals(lz)
        scale = max(float(np.abs(eigs).max()), 1.0)
        clusters = _cluster_eigs(eigs, 1e-6 * scale)
        centers = [c for c, _ in clusters]
        if len(centers) == 1 or _min_pairwise(centers) > 1e-3 * scale:
            dims = sorted(cnt for _, cnt in clusters)
            for cnt in dims:
                root = round(np.sqrt(cnt))
                if root * root != cnt:
                    raise NonSquareComponent(f"component dimension {cnt}")
            return dims
    raise NonSquareComponent("central eigenvalues stayed clustered across retries")


def _cluster_eigs(values: np.ndarray, radius: float) -> list[tuple[complex, int]]:
    remaining = sorted(values, key=lambda v: (v.real, v.imag))
    clusters: list[list[complex]] = []
    for v in remaining:
        placed = False
        for members in clusters:
            if any(abs(v - m) <= radius for m in members):
                members.append(v)
                placed = True
                break
        if not placed:
            clusters.append([v])
    return [(complex(np.mean(ms)), len(ms)) for ms in clusters]


def _min_pairwise(values: list[complex]) -> float:
    best = np.inf
    for i in range(len(values)):
        for j in range(i + 1, len(values)):
            best = min(best, abs(values[i] - values[j]))
    return float(best)
