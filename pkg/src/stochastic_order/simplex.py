"""
稠密一阶段单纯形法

只求可行点：min Σ 人工变量，s.t. A x + a = b, x ≥ 0, a ≥ 0。
进基与出基都采用最小下标规则（Bland），退化问题不会循环，结果可复现。
"""
import logging
from dataclasses import dataclass

import numpy as np

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FeasibilityResult:
    """一阶段单纯形求解结果"""
    x: np.ndarray
    infeasibility: float
    residual: float
    iterations: int

    def is_feasible(self, tol: float) -> bool:
        return self.residual <= tol


def _pivot(tableau: np.ndarray, row: int, col: int) -> None:
    tableau[row] /= tableau[row, col]
    column = tableau[:, col].copy()
    column[row] = 0.0
    tableau -= np.outer(column, tableau[row])


def find_feasible_point(A_eq, b_eq, tol: float = 1e-12, max_iterations: int = None) -> FeasibilityResult:
    """
    寻找满足 A_eq x = b_eq, x ≥ 0 的点

    Args:
        A_eq: (m, n) 约束矩阵
        b_eq: (m,) 右端
        tol: 主元与检验数的判零阈值
        max_iterations: 迭代上限，默认 50·(m+n)

    Returns:
        FeasibilityResult；infeasibility 为一阶段最优值（人工变量之和）
    """
    A = np.array(A_eq, dtype=float)
    b = np.array(b_eq, dtype=float).ravel()
    m, n = A.shape
    if max_iterations is None:
        max_iterations = 50 * (m + n)

    negative = b < 0
    A[negative] *= -1.0
    b[negative] *= -1.0

    # [A | I | b]，最后一行为一阶段目标的检验数
    tableau = np.zeros((m + 1, n + m + 1))
    tableau[:m, :n] = A
    tableau[:m, n:n + m] = np.eye(m)
    tableau[:m, -1] = b
    tableau[m, :n] = -A.sum(axis=0)
    tableau[m, -1] = -b.sum()
    basis = list(range(n, n + m))

    iterations = 0
    while iterations < max_iterations:
        reduced = tableau[m, :n + m]
        candidates = np.flatnonzero(reduced < -tol)
        if candidates.size == 0:
            break
        col = int(candidates[0])

        column = tableau[:m, col]
        rows = np.flatnonzero(column > tol)
        if rows.size == 0:
            # 一阶段目标有下界0，不会无界；数值上出现时停止
            logger.warning(f"单纯形第 {iterations} 步列 {col} 无正主元，提前终止")
            break
        ratios = tableau[rows, -1] / column[rows]
        best = ratios.min()
        ties = rows[ratios <= best + tol * max(1.0, abs(best))]
        row = int(min(ties, key=lambda r: basis[r]))

        _pivot(tableau, row, col)
        basis[row] = col
        iterations += 1
    else:
        logger.warning(f"单纯形达到迭代上限 {max_iterations}")

    x = np.zeros(n)
    for r, var in enumerate(basis):
        if var < n:
            x[var] = max(tableau[r, -1], 0.0)

    infeasibility = float(-tableau[m, -1])
    residual = float(np.abs(np.array(A_eq, dtype=float) @ x - np.asarray(b_eq, dtype=float).ravel()).max()) if m else 0.0
    logger.debug(f"单纯形: {m} 约束 × {n} 变量, {iterations} 次迭代, 残差 {residual:.3e}")
    return FeasibilityResult(x=x, infeasibility=infeasibility, residual=residual, iterations=iterations)


__all__ = ["FeasibilityResult", "find_feasible_point"]
