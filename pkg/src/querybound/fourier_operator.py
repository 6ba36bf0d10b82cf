"""The truncated Fourier operator and its spectral norm.

For a sign table f, conjugating the diagonal matrix F = diag(f) by the
Hadamard transform gives a symmetric orthogonal matrix with entries
fhat(s XOR t).  Restricting rows and columns to strings of weight <= T
yields the B x B principal submatrix handled here, either materialized
densely or applied matrix-free through two Walsh-Hadamard transforms.
"""

from __future__ import annotations

from dataclasses import dataclass

import math

import numpy as np

from .boolfn import BooleanFunction, fourier
from .transforms import WeightIndex, build_weight_index, fwht_in_place

# B x B doubles at 4096 is 128 MiB; larger truncations must go matrix-free.
DENSE_LIMIT = 4096


@dataclass(frozen=True, eq=False)
class TruncatedFourierOperator:
    f: BooleanFunction
    t: int
    index: WeightIndex
    mode: str  # "dense" | "matrix_free"
    dense_matrix: np.ndarray | None = None

    @property
    def size(self) -> int:
        return self.index.size

    def apply(self, v: np.ndarray) -> np.ndarray:
        v = np.asarray(v, dtype=np.float64)
        if v.shape != (self.size,):
            raise ValueError(f"vector must have length {self.size}, got shape {v.shape}")
        if self.mode == "dense":
            assert self.dense_matrix is not None
            return self.dense_matrix @ v
        # Scatter to the full cube, conjugate by the transform, gather back.
        # Fresh scratch per call keeps concurrent applies on one operator safe.
        n = self.f.n
        buf = np.zeros(1 << n)
        buf[self.index.strings] = v
        fwht_in_place(buf)
        buf *= self.f.signs
        fwht_in_place(buf)
        buf /= float(1 << n)
        return buf[self.index.strings]


@dataclass(frozen=True)
class NormEstimate:
    value: float
    method: str  # "dense_eigen" | "power_iteration"
    residual: float
    iterations: int
    converged: bool


def build_dense(f: BooleanFunction, t: int) -> TruncatedFourierOperator:
    """Materialize the B x B matrix fhat(s XOR t) over weight-<= t strings."""
    index = build_weight_index(f.n, t)
    if index.size > DENSE_LIMIT:
        raise ValueError(
            f"B={index.size} exceeds the dense budget {DENSE_LIMIT}; use build_matrix_free"
        )
    coeffs = fourier(f).coeffs
    xor_table = index.strings[:, None] ^ index.strings[None, :]
    dense = coeffs[xor_table]
    dense.flags.writeable = False
    return TruncatedFourierOperator(f=f, t=t, index=index, mode="dense", dense_matrix=dense)


def build_matrix_free(f: BooleanFunction, t: int) -> TruncatedFourierOperator:
    index = build_weight_index(f.n, t)
    return TruncatedFourierOperator(f=f, t=t, index=index, mode="matrix_free")


def apply(op: TruncatedFourierOperator, v: np.ndarray) -> np.ndarray:
    return op.apply(v)


def spectral_norm(
    op: TruncatedFourierOperator,
    tol: float = 1e-8,
    max_iter: int = 10000,
    seed: int = 0,
) -> NormEstimate:
    """Largest |eigenvalue| of the (symmetric) operator.

    Dense mode uses a full symmetric eigendecomposition.  Matrix-free mode
    runs power iteration on the squared operator, whose spectrum is the
    squared eigenvalues, so the dominant one is the norm squared and sign
    flips cannot stall convergence.  Iteration stops once successive
    Rayleigh quotients differ by less than tol; the returned value is a
    lower estimate of the true norm up to the reported residual.
    """
    if tol <= 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    if op.mode == "dense":
        assert op.dense_matrix is not None
        eigs = np.linalg.eigvalsh(op.dense_matrix)
        value = float(np.max(np.abs(eigs)))
        return NormEstimate(value=value, method="dense_eigen", residual=0.0, iterations=0, converged=True)

    b = op.size
    rng = np.random.Generator(np.random.PCG64(seed))
    v = rng.standard_normal(b)
    v /= math.sqrt(float(v @ v))
    rho_prev = None
    rho = 0.0
    converged = False
    iterations = 0
    w = np.zeros(b)
    for iterations in range(1, max_iter + 1):
        w = op.apply(op.apply(v))
        rho = float(v @ w)
        norm_w = math.sqrt(float(w @ w))
        if norm_w == 0.0:
            # v is annihilated exactly; the operator is zero on this start.
            return NormEstimate(value=0.0, method="power_iteration", residual=0.0,
                                iterations=iterations, converged=True)
        if rho_prev is not None and abs(rho - rho_prev) < tol:
            converged = True
            break
        rho_prev = rho
        v = w / norm_w
    residual = math.sqrt(float(np.sum((w - rho * v) ** 2)))
    value = math.sqrt(max(rho, 0.0))
    return NormEstimate(value=value, method="power_iteration", residual=residual,
                        iterations=iterations, converged=converged)
