# stochastic_order/models.py
from enum import Enum
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from src.distributions.discrete import DiscreteDist


class OrderRelation(str, Enum):
    """二阶随机占优关系"""
    MONOTONE_CONVEX = "MC"
    CONVEX = "C"
    CENTERED_CONVEX = "centered-C"


class OrderVerdict(BaseModel):
    """序关系检验结果"""
    relation: OrderRelation = Field(..., description="检验的序关系")
    holds: bool = Field(..., description="X ≤ Y 是否成立")
    witness_strike: float = Field(..., description="看涨差最小的执行价；-inf 表示均值比较起决定作用")
    min_gap: float = Field(..., description="E[(Y−K)^+]−E[(X−K)^+] 的最小值")
    mean_gap: float = Field(..., description="E[Y]−E[X]")
    tolerance: float = Field(..., ge=0.0, description="判定使用的容差")
    boundary: bool = Field(default=False, description="成立但某个弱不等式在容差内取等")
    statistical: bool = Field(default=False, description="基于蒙特卡洛样本的统计判定")
    standard_error: Optional[float] = Field(None, description="见证执行价处看涨差的标准误")
    sigma_level: Optional[float] = Field(None, description="统计判定使用的标准误倍数")

    model_config = ConfigDict(frozen=True, ser_json_inf_nan="constants")


class CouplingCell(BaseModel):
    """联合分布的一个格点"""
    x: float
    y: float
    mass: float = Field(..., gt=0.0)

    model_config = ConfigDict(frozen=True)


class Coupling(BaseModel):
    """Strassen 耦合：Y = X + shift + ε，E[ε|X] = 0"""
    joint: List[CouplingCell] = Field(..., min_length=1, description="联合质量表")
    shift: float = Field(..., description="风险溢价 E[Y]−E[X]")

    model_config = ConfigDict(frozen=True)

    def _columns(self):
        xs = np.array([c.x for c in self.joint])
        ys = np.array([c.y for c in self.joint])
        ms = np.array([c.mass for c in self.joint])
        return xs, ys, ms

    def x_marginal(self) -> DiscreteDist:
        xs, _, ms = self._columns()
        return DiscreteDist.from_atoms(xs, ms / ms.sum())

    def y_marginal(self) -> DiscreteDist:
        _, ys, ms = self._columns()
        return DiscreteDist.from_atoms(ys, ms / ms.sum())

    def marginal_residual(self, X: DiscreteDist, Y: DiscreteDist) -> float:
        """两个边缘分布全变差距离中的较大者（未归一化质量直接比较）"""
        xs, ys, ms = self._columns()
        raw_x = _raw_tv(xs, ms, X)
        raw_y = _raw_tv(ys, ms, Y)
        return max(raw_x, raw_y)

    def conditional_mean_residual(self) -> float:
        """max_x |E[Y | X=x] − x − shift|"""
        xs, ys, ms = self._columns()
        worst = 0.0
        for x in np.unique(xs):
            mask = xs == x
            cond = float(np.dot(ms[mask], ys[mask]) / ms[mask].sum())
            worst = max(worst, abs(cond - x - self.shift))
        return worst


def _raw_tv(points: np.ndarray, masses: np.ndarray, target: DiscreteDist) -> float:
    """未归一化质量与目标分布之间的 ½Σ|差|"""
    net = {}
    for v, m in zip(points, masses):
        net[float(v)] = net.get(float(v), 0.0) + float(m)
    for v, p in target.atoms:
        net[v] = net.get(v, 0.0) - p
    return 0.5 * sum(abs(m) for m in net.values())


__all__ = ["OrderRelation", "OrderVerdict", "CouplingCell", "Coupling"]
