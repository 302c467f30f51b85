"""
Strassen 耦合构造

给定 X、Y，若中心化后满足凸序，则存在联合分布使 Y = X + (E[Y]−E[X]) + ε，E[ε|X] = 0。
联合质量 m_ij 由可行性线性规划求出：
    Σ_j m_ij = P(X = x_i)
    Σ_i m_ij = P(Y = y_j)
    Σ_j m_ij (y_j − x_i − shift) = 0
"""
import logging
from typing import Optional

import numpy as np

from config.dominance_settings import settings
from src.distributions.discrete import DiscreteDist, mean
from src.utils.error_handler import InfeasibleCouplingError
from .checks import check_centered_convex
from .models import Coupling, CouplingCell
from .simplex import find_feasible_point

logger = logging.getLogger(__name__)

# 低于该值的联合质量视为0
MASS_FLOOR = 1e-15


def _constraint_system(X: DiscreteDist, Y: DiscreteDist, shift: float):
    nx, ny = len(X), len(Y)
    A = np.zeros((2 * nx + ny, nx * ny))
    b = np.zeros(2 * nx + ny)
    for i in range(nx):
        cols = slice(i * ny, (i + 1) * ny)
        A[i, cols] = 1.0
        b[i] = X.probs[i]
        A[nx + ny + i, cols] = Y.values - X.values[i] - shift
    for j in range(ny):
        A[nx + j, j::ny] = 1.0
        b[nx + j] = Y.probs[j]
    return A, b


def strassen_coupling(
    X: DiscreteDist,
    Y: DiscreteDist,
    tol: Optional[float] = None,
    verify_order: bool = True,
) -> Coupling:
    """
    构造见证中心化凸序的耦合

    Args:
        X, Y: 两个离散分布
        tol: 边缘与条件均值残差的容差，默认 coupling_residual_tolerance
        verify_order: 是否先做中心化凸序检验；关闭时由线性规划本身判定可行性

    Raises:
        InfeasibleCouplingError: 序关系不成立，或线性规划无可行解/残差超过容差
    """
    tol = settings.coupling_residual_tolerance if tol is None else tol

    verdict = None
    if verify_order:
        verdict = check_centered_convex(X, Y)
        if not verdict.holds:
            raise InfeasibleCouplingError(
                f"中心化凸序不成立 (min_gap={verdict.min_gap:.6g}, K={verdict.witness_strike:.6g})，耦合不存在",
                verdict=verdict,
            )

    shift = mean(Y) - mean(X)
    A, b = _constraint_system(X, Y, shift)
    result = find_feasible_point(A, b)
    if result.infeasibility > tol or result.residual > tol:
        raise InfeasibleCouplingError(
            f"耦合线性规划不可行: 一阶段目标 {result.infeasibility:.3e}, 残差 {result.residual:.3e}",
            verdict=verdict,
            residual=max(result.infeasibility, result.residual),
        )

    masses = result.x.reshape(len(X), len(Y))
    cells = [
        CouplingCell(x=float(X.values[i]), y=float(Y.values[j]), mass=float(masses[i, j]))
        for i in range(len(X))
        for j in range(len(Y))
        if masses[i, j] > MASS_FLOOR
    ]
    coupling = Coupling(joint=cells, shift=float(shift))

    residual = max(coupling.marginal_residual(X, Y), coupling.conditional_mean_residual())
    if residual > tol:
        raise InfeasibleCouplingError(f"耦合残差 {residual:.3e} 超过容差 {tol}", verdict=verdict, residual=residual)

    logger.info(f"Strassen 耦合: {len(cells)} 个格点, shift={shift:.6g}, 残差 {residual:.3e}, {result.iterations} 次主元")
    return coupling


__all__ = ["strassen_coupling"]
