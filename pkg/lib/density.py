"""
L1 approximation of boundary functions by finite linear combinations of Poisson
kernels sum_j w_j P_{z_j}, the constructive face of the density of span{P_z} in L1(T).

The L1 objective is minimized by iteratively reweighted least squares: each
step solves the weighted normal equations (A^T W A + damping I) w = A^T W b with
W = diag(1 / max(|residual_k|, eps)).
"""

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
import scipy.linalg

from lib.circle import UnitGridFunction, grid_angles
from lib.config import IRLS_DAMPING, IRLS_EPS, IRLS_MAX_ITER, IRLS_TOL
from lib.errors import ConditioningError, DomainError
from lib.kernel import DiskPoint, eval_kernel_at
from lib.logger import logger
from lib.utils import check_radius


@dataclass
class FitOptions:
    max_iter: int = IRLS_MAX_ITER
    tol: float = IRLS_TOL
    eps: float = IRLS_EPS
    damping: float = IRLS_DAMPING
    # Restrict to real coefficients (meaningful for real targets)
    real: bool = False


@dataclass
class FitResult:
    nodes: List[DiskPoint]
    coefficients: np.ndarray
    residual_l1: float
    iterations: int
    converged: bool
    diagnostics: Dict[str, Any] = field(default_factory=dict)


def equiangular_nodes(count: int, r: float) -> List[DiskPoint]:
    """count nodes at radius r and angles -pi + 2 pi j / count (nested when counts divide)."""
    if count < 1:
        raise DomainError(f"need at least one node, got {count}")

    return [DiskPoint(r, sigma) for sigma in grid_angles(count)] if count > 1 else [DiskPoint(r, -math.pi)]


def check_nodes(nodes: Sequence[DiskPoint], N: int):
    if not nodes:
        raise DomainError("need at least one node")

    spacing = 2 * math.pi / N
    for (i, a), (j, b) in combinations(enumerate(nodes), 2):
        if abs(a.z - b.z) < spacing:
            raise ConditioningError(f"nodes {i} and {j} are closer than the grid spacing {spacing:.2e}")


def design_matrix(nodes: Sequence[DiskPoint], N: int) -> np.ndarray:
    t = grid_angles(N)
    return np.column_stack([eval_kernel_at(z, t) for z in nodes])


def fit_span(target: UnitGridFunction, nodes: Sequence[DiskPoint], opts: Optional[FitOptions] = None) -> FitResult:
    """Fits target ~ sum_j w_j P_{z_j} in the grid L1 norm.

    Args:
        target (UnitGridFunction): Function to approximate.
        nodes (Sequence[DiskPoint]): Distinct kernel centres.
        opts (FitOptions, optional): Solver options. Defaults to FitOptions().

    Returns:
        FitResult: Coefficients, grid L1 residual and solver diagnostics. A singular or
            diverging solve is reported through converged=False, not raised.
    """
    opts = opts or FitOptions()
    nodes = list(nodes)
    N = target.N
    check_nodes(nodes, N)

    A = design_matrix(nodes, N)
    b = target.samples
    rhs_target = b.real if opts.real else b

    weights = np.ones(N)
    coefficients = np.zeros(len(nodes), dtype=float if opts.real else complex)
    residual_l1 = float(np.mean(np.abs(b)))
    previous = math.inf
    converged = False
    iterations = 0
    diagnostics: Dict[str, Any] = {"N": N, "nodes": len(nodes)}

    for iterations in range(1, opts.max_iter + 1):
        weighted = A * weights[:, None]
        gram = A.T @ weighted / N
        gram[np.diag_indices_from(gram)] += opts.damping

        try:
            factor = scipy.linalg.cho_factor(gram)
            candidate = scipy.linalg.cho_solve(factor, weighted.T @ rhs_target / N)
        except (np.linalg.LinAlgError, ValueError) as err:
            diagnostics["error"] = str(err)
            logger.warning(f"IRLS solve failed at iteration {iterations}: {err}")
            break

        residual = b - A @ candidate
        l1 = float(np.mean(np.abs(residual)))
        if not math.isfinite(l1):
            diagnostics["error"] = "non-finite residual"
            break

        coefficients, residual_l1 = candidate, l1
        logger.debug(f"IRLS iteration {iterations}: residual {l1:.6e}")

        if abs(previous - l1) < opts.tol:
            converged = True
            break

        previous = l1
        weights = 1 / np.maximum(np.abs(residual), opts.eps)

    diagnostics["condition"] = float(np.linalg.cond(A.T @ A / N))
    if not converged:
        logger.warning(f"IRLS did not converge after {iterations} iterations: {diagnostics}")

    return FitResult(nodes, coefficients, residual_l1, iterations, converged, diagnostics)


def residual_curve(
    target: UnitGridFunction,
    node_counts: Sequence[int],
    r_node: float,
    opts: Optional[FitOptions] = None,
) -> List[float]:
    """Residual of fits with m equiangular nodes at radius r_node, one per count.

    Counts that are multiples of their predecessor give nested spans, hence
    non-increasing residuals up to solver tolerance.
    """
    check_radius(r_node, "r_node")
    counts = list(node_counts)
    if not counts or any(m < 1 for m in counts) or any(b <= a for a, b in zip(counts, counts[1:])):
        raise DomainError(f"node counts must be positive and increasing, got {counts}")
    if any(b % a for a, b in zip(counts, counts[1:])):
        logger.warning(f"Node counts {counts} are not nested; residuals need not decrease")

    return [fit_span(target, equiangular_nodes(m, r_node), opts).residual_l1 for m in counts]
