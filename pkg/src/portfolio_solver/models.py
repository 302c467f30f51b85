# portfolio_solver/models.py
from enum import Enum
from typing import Dict, Optional

from pydantic import BaseModel, ConfigDict, Field

from src.distributions.discrete import DiscreteDist
from src.utility.models import UtilitySpec


class ControlKind(str, Enum):
    """控制变量类型"""
    FRACTION = "fraction"   # 财富中投资风险资产的比例 π（power/log）
    AMOUNT = "amount"       # 持有风险资产的数量 θ（exp）


class SolveMethod(str, Enum):
    """求解方法"""
    DP = "dp"
    DUAL = "dual"


class Policy(BaseModel):
    """每个非终端节点的最优控制"""
    kind: ControlKind = Field(..., description="控制变量类型")
    controls: Dict[int, float] = Field(default_factory=dict, description="节点ID → 控制")

    model_config = ConfigDict(frozen=True)

    def control(self, node_id: int) -> float:
        return self.controls[node_id]


class Solution(BaseModel):
    """最优财富过程"""
    method: SolveMethod = Field(..., description="求解方法")
    utility: UtilitySpec = Field(..., description="效用函数")
    x0: float = Field(..., description="初始财富")
    policy: Policy = Field(..., description="最优策略")
    wealth: Dict[int, float] = Field(..., description="节点ID → 财富")
    leaf_probabilities: Dict[int, float] = Field(..., description="叶子ID → 路径概率")
    value: float = Field(..., description="期望效用 Σ P(leaf)·U(X(leaf))")
    multiplier: Optional[float] = Field(None, description="预算约束的拉格朗日乘子 y（仅对偶法）")

    model_config = ConfigDict(frozen=True)

    @property
    def terminal_dist(self) -> DiscreteDist:
        return terminal_distribution(self)

    def terminal_wealth(self) -> Dict[int, float]:
        return {leaf: self.wealth[leaf] for leaf in self.leaf_probabilities}


def terminal_distribution(sol: Solution) -> DiscreteDist:
    """叶子财富按路径概率聚合，相同取值合并"""
    leaves = list(sol.leaf_probabilities)
    return DiscreteDist.from_atoms(
        [sol.wealth[leaf] for leaf in leaves],
        [sol.leaf_probabilities[leaf] for leaf in leaves],
    )


__all__ = ["ControlKind", "SolveMethod", "Policy", "Solution", "terminal_distribution"]
