"""Core operator-frame representation and operations.

An operator frame is an ordered family of complex blocks Lambda_j of shape
(d_j, n), each mapping the ambient space C^n into its own target C^{d_j}.
The family is a frame when the summed block energies sum_j ||Lambda_j f||^2
are sandwiched between A ||f||^2 and B ||f||^2 with A > 0.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .errors import (
    DimensionMismatch,
    NotAFrame,
    ShapeMismatch,
    Singular,
)
from .linalg import TOL_EQ, TOL_PD, TOL_RANK, as_cmatrix, fro


@dataclass(frozen=True)
class GFrame:
    """Ordered family of complex blocks, all with the same column count."""

    hilbert_dim: int
    blocks: tuple

    def __post_init__(self):
        if self.hilbert_dim < 1:
            raise DimensionMismatch("hilbert_dim must be >= 1")
        if not self.blocks:
            raise DimensionMismatch("block list must be nonempty")
        checked = []
        for j, B in enumerate(self.blocks):
            A = as_cmatrix(B)
            if A.shape[1] != self.hilbert_dim:
                raise ShapeMismatch(
                    f"block {j} has {A.shape[1]} columns, expected {self.hilbert_dim}"
                )
            if A.shape[0] < 1:
                raise ShapeMismatch(f"block {j} has zero rows")
            A.setflags(write=False)
            checked.append(A)
        object.__setattr__(self, "blocks", tuple(checked))

    @property
    def block_dims(self):
        return tuple(B.shape[0] for B in self.blocks)

    @property
    def total_dim(self):
        """Dimension of the stacked target space, sum of the d_j."""
        return sum(self.block_dims)

    def map_blocks(self, fn) -> "GFrame":
        return GFrame(self.hilbert_dim, tuple(fn(B) for B in self.blocks))

    def same_shape(self, other: "GFrame") -> bool:
        return (
            self.hilbert_dim == other.hilbert_dim
            and self.block_dims == other.block_dims
        )


@dataclass(frozen=True)
class StackedOperator:
    """The analysis operator as one tall matrix with a block-row index map."""

    matrix: np.ndarray
    offsets: tuple

    def block(self, j: int) -> np.ndarray:
        end = self.offsets[j + 1] if j + 1 < len(self.offsets) else self.matrix.shape[0]
        return self.matrix[self.offsets[j]:end]


@dataclass(frozen=True)
class FrameBounds:
    lower: float
    upper: float
    is_frame: bool
    is_tight: bool
    is_parseval: bool


@dataclass(frozen=True)
class Classification:
    is_bessel: bool
    is_frame: bool
    is_complete: bool
    is_orthonormal_set: bool
    is_on_basis: bool
    is_riesz_basis: bool

    def __post_init__(self):
        # implication chain: on basis => Riesz => frame => Bessel and complete
        if self.is_on_basis and not self.is_riesz_basis:
            raise ValueError("on basis must be a Riesz basis")
        if self.is_riesz_basis and not self.is_frame:
            raise ValueError("Riesz basis must be a frame")
        if self.is_frame and not (self.is_bessel and self.is_complete):
            raise ValueError("frame must be Bessel and complete")


def analysis(F: GFrame) -> StackedOperator:
    """Stack the blocks of F into one (sum d_j) x n matrix."""
    offsets = []
    pos = 0
    for B in F.blocks:
        offsets.append(pos)
        pos += B.shape[0]
    return StackedOperator(np.vstack(F.blocks), tuple(offsets))


def frame_operator(F: GFrame) -> np.ndarray:
    """S = T†T = sum_j Lambda_j† Lambda_j, Hermitian n x n."""
    T = analysis(F).matrix
    S = T.conj().T @ T
    return (S + S.conj().T) / 2.0


def frame_bounds(F: GFrame, tol_eq: float = TOL_EQ, tol_pd: float = TOL_PD) -> FrameBounds:
    """Optimal bounds: the spectral extremes of the frame operator.

    A non-frame (degenerate lower bound) is a value, not an error.
    """
    w, _ = linalg.herm_eig(frame_operator(F))
    lower = float(max(w[0], 0.0))
    upper = float(max(w[-1], 0.0))
    is_frame = lower > tol_pd * upper
    is_tight = is_frame and abs(lower - upper) <= tol_eq * upper
    is_parseval = is_tight and abs(lower - 1.0) <= tol_eq
    return FrameBounds(lower, upper, is_frame, is_tight, is_parseval)


def canonical_dual(F: GFrame, tol_eq: float = TOL_EQ) -> GFrame:
    """The family Lambda_j S^{-1}; a (1/B, 1/A) frame whose own dual is F."""
    if not frame_bounds(F, tol_eq=tol_eq).is_frame:
        raise NotAFrame("canonical dual requires a frame")
    S_inv = linalg.herm_func(frame_operator(F), "inverse")
    return F.map_blocks(lambda B: B @ S_inv)


def parseval_transform(F: GFrame, tol_eq: float = TOL_EQ) -> GFrame:
    """The family Lambda_j S^{-1/2}; always Parseval, and an orthonormal
    operator basis whenever F is a Riesz operator basis."""
    if not frame_bounds(F, tol_eq=tol_eq).is_frame:
        raise NotAFrame("Parseval transform requires a frame")
    S_is = linalg.herm_func(frame_operator(F), "inv_sqrt")
    return F.map_blocks(lambda B: B @ S_is)


def classify(F: GFrame, tol_eq: float = TOL_EQ, tol_rank: float = TOL_RANK) -> Classification:
    """Classification flags for an arbitrary operator family.

    Completeness <=> rank(T) = n; Riesz basis <=> frame whose analysis
    operator is surjective, i.e. rank(T) = sum d_j.
    """
    T = analysis(F).matrix
    bounds = frame_bounds(F, tol_eq=tol_eq)
    rank = linalg.numerical_rank(T, tol_rank=tol_rank)
    n = F.hilbert_dim
    is_complete = rank == n
    is_frame = bounds.is_frame
    is_riesz = is_frame and rank == F.total_dim

    # orthonormal set: Lambda_j Lambda_k† = delta_jk * identity on each target
    is_on_set = True
    for j, Bj in enumerate(F.blocks):
        for k, Bk in enumerate(F.blocks):
            G = Bj @ Bk.conj().T
            target = np.eye(Bj.shape[0]) if j == k else np.zeros_like(G)
            if fro(G - target) > tol_eq * max(1.0, fro(G)):
                is_on_set = False
                break
        if not is_on_set:
            break
    s_is_identity = fro(frame_operator(F) - np.eye(n)) <= tol_eq * max(1.0, float(n))
    is_on_basis = is_on_set and s_is_identity

    return Classification(
        is_bessel=True,  # finite families always admit an upper bound
        is_frame=is_frame,
        is_complete=is_complete,
        is_orthonormal_set=is_on_set,
        is_on_basis=is_on_basis,
        is_riesz_basis=is_riesz or is_on_basis,
    )


def check_dual_pair(F: GFrame, G: GFrame, tol_eq: float = TOL_EQ) -> bool:
    """True iff T_G† T_F = identity (reconstruction from both sides)."""
    if not F.same_shape(G):
        raise ShapeMismatch("dual-pair check needs identical block shapes")
    TF = analysis(F).matrix
    TG = analysis(G).matrix
    M = TG.conj().T @ TF
    return fro(M - np.eye(F.hilbert_dim)) <= tol_eq * max(1.0, fro(M))


def check_biorthogonal(F: GFrame, G: GFrame, tol_eq: float = TOL_EQ) -> bool:
    """True iff G_k F_j† = delta_jk * identity for all j, k."""
    if not F.same_shape(G):
        raise ShapeMismatch("biorthogonality check needs identical block shapes")
    for j, Bj in enumerate(F.blocks):
        for k, Gk in enumerate(G.blocks):
            M = Gk @ Bj.conj().T
            target = np.eye(M.shape[0]) if j == k else np.zeros_like(M)
            if fro(M - target) > tol_eq * max(1.0, fro(M)):
                return False
    return True


def induce_vector_frame(F: GFrame) -> list:
    """The vectors Lambda_j† e_k, i.e. the conjugated rows of each block,
    listed block by block.  Their ordinary-frame bounds equal frame_bounds(F)."""
    vectors = []
    for B in F.blocks:
        for row in B:
            vectors.append(row.conj().copy())
    return vectors


def make_gon_basis(n: int, dims, rotation=None) -> GFrame:
    """Coordinate-slicing orthonormal operator basis, optionally composed with
    a unitary rotation: block j takes rows offset..offset+d_j of U."""
    dims = tuple(int(d) for d in dims)
    if sum(dims) != n:
        raise DimensionMismatch(f"sum of block dims {sum(dims)} != {n}")
    if rotation is None:
        U = np.eye(n, dtype=np.complex128)
    else:
        U = linalg.check_unitary(rotation)
        if U.shape[0] != n:
            raise DimensionMismatch("rotation size does not match hilbert_dim")
    blocks = []
    pos = 0
    for d in dims:
        blocks.append(U[pos:pos + d].copy())
        pos += d
    return GFrame(n, tuple(blocks))


def make_griesz(gon: GFrame, X, tol_pd: float = TOL_PD) -> GFrame:
    """Riesz operator basis theta_j X from an orthonormal operator basis and an
    invertible X.  Bounds land in [||X^{-1}||^{-2}, ||X||^2]."""
    from .errors import NotOnBasis

    if not classify(gon).is_on_basis:
        raise NotOnBasis("make_griesz requires an orthonormal operator basis")
    A = as_cmatrix(X)
    if A.shape != (gon.hilbert_dim, gon.hilbert_dim):
        raise DimensionMismatch("X must be square of size hilbert_dim")
    s = np.linalg.svd(A, compute_uv=False)
    if s[-1] <= tol_pd * s[0]:
        raise Singular(f"condition number {s[0] / max(s[-1], 1e-300):.3e} too large")
    return gon.map_blocks(lambda B: B @ A)
