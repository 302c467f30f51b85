# utility/models.py
from enum import Enum
from typing import Any, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


class UtilityKind(str, Enum):
    """效用函数族"""
    POWER = "power"
    LOG = "log"
    EXPONENTIAL = "exp"


class UtilityDomain(str, Enum):
    """效用函数定义域"""
    POSITIVE_HALFLINE = "positive-halfline"
    WHOLE_REAL_LINE = "whole-real-line"


class RiskComparison(str, Enum):
    """绝对风险厌恶的逐点比较结果"""
    MORE = "more"
    LESS = "less"
    INCOMPARABLE = "incomparable"


class UtilitySpec(BaseModel):
    """
    闭式效用函数

    - power: x^{1−p}/(1−p)，p > 0 且 p ≠ 1（p = 1 自动映射为 log）
    - log: ln x
    - exp: −e^{−γx}，γ > 0
    """
    kind: UtilityKind = Field(..., description="效用函数族")
    p: Optional[float] = Field(None, gt=0.0, description="相对风险厌恶系数（power）")
    gamma: Optional[float] = Field(None, gt=0.0, description="绝对风险厌恶系数（exp）")

    model_config = ConfigDict(frozen=True, extra="forbid")

    @model_validator(mode="before")
    @classmethod
    def map_unit_power_to_log(cls, data: Any) -> Any:
        if isinstance(data, dict) and data.get("kind") in ("power", UtilityKind.POWER) and data.get("p") == 1:
            return {"kind": UtilityKind.LOG}
        return data

    @model_validator(mode="after")
    def check_parameters(self) -> "UtilitySpec":
        if self.kind is UtilityKind.POWER:
            if self.p is None or self.gamma is not None:
                raise ValueError("power 效用需要且仅需要参数 p")
        elif self.kind is UtilityKind.EXPONENTIAL:
            if self.gamma is None or self.p is not None:
                raise ValueError("exp 效用需要且仅需要参数 gamma")
        elif self.p is not None or self.gamma is not None:
            raise ValueError("log 效用不接受参数")
        return self

    @classmethod
    def power(cls, p: float) -> "UtilitySpec":
        return cls(kind=UtilityKind.POWER, p=p)

    @classmethod
    def log(cls) -> "UtilitySpec":
        return cls(kind=UtilityKind.LOG)

    @classmethod
    def exponential(cls, gamma: float) -> "UtilitySpec":
        return cls(kind=UtilityKind.EXPONENTIAL, gamma=gamma)

    @property
    def domain(self) -> UtilityDomain:
        if self.kind is UtilityKind.EXPONENTIAL:
            return UtilityDomain.WHOLE_REAL_LINE
        return UtilityDomain.POSITIVE_HALFLINE

    @property
    def relative_risk_aversion(self) -> Optional[float]:
        """常数相对风险厌恶（power 为 p，log 为 1），exp 没有常数相对风险厌恶"""
        if self.kind is UtilityKind.POWER:
            return self.p
        if self.kind is UtilityKind.LOG:
            return 1.0
        return None

    def label(self) -> str:
        if self.kind is UtilityKind.POWER:
            return f"power(p={self.p:g})"
        if self.kind is UtilityKind.EXPONENTIAL:
            return f"exp(gamma={self.gamma:g})"
        return "log"


__all__ = ["UtilityKind", "UtilityDomain", "RiskComparison", "UtilitySpec"]
