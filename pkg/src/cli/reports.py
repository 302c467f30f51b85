"""
命令行报告模型与输出
JSON 报告写到 stdout 或 --output；看涨差曲线写成固定表头的 CSV。
"""
import logging
import sys
from enum import Enum
from pathlib import Path
from typing import Dict, Optional

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, model_validator

from config.dominance_settings import settings
from src.distributions.discrete import DiscreteDist
from src.distributions.io import DistributionModel
from src.portfolio_solver.models import Solution
from src.stochastic_order.checks import call_gap_curve, kink_strikes
from src.stochastic_order.models import OrderVerdict
from src.tree_market.constructions import ProbabilityConvention
from src.utils.error_handler import ConfigurationError

logger = logging.getLogger(__name__)

CURVE_COLUMNS = ["strike", "call_x", "call_y", "gap"]

REPORT_CONFIG = ConfigDict(frozen=True, ser_json_inf_nan="constants")


class Command(str, Enum):
    SOLVE = "solve"
    ORDER = "order"
    COUNTEREXAMPLE = "counterexample"
    PERTURB = "perturb"
    IID = "iid"


class OutputFormat(str, Enum):
    JSON = "json"
    CSV = "csv"


class RunConfig(BaseModel):
    """一次命令行运行的完整配置（相同配置产生逐字节相同的报告）"""
    command: Command = Field(..., description="子命令")
    inputs: Dict[str, str] = Field(default_factory=dict, description="输入文件路径")
    parameters: Dict[str, float] = Field(default_factory=dict, description="数值参数")
    tolerance: Optional[float] = Field(None, gt=0.0, description="序关系检验容差覆盖")
    seed: Optional[int] = Field(None, ge=0, description="蒙特卡洛种子")
    paths: Optional[int] = Field(None, description="蒙特卡洛路径数")
    output_format: OutputFormat = Field(default=OutputFormat.JSON, description="输出格式")
    convention: ProbabilityConvention = Field(default=ProbabilityConvention.NORMALIZED, description="扰动模型概率约定")

    model_config = REPORT_CONFIG

    @model_validator(mode="after")
    def seed_required_for_monte_carlo(self) -> "RunConfig":
        if self.paths is not None and self.seed is None:
            raise ConfigurationError("蒙特卡洛需要显式的 --seed")
        return self


class SolveReport(BaseModel):
    """solve 子命令报告"""
    config: RunConfig
    solution: Solution
    terminal_distribution: DistributionModel

    model_config = REPORT_CONFIG


class OrderReport(BaseModel):
    """order 子命令报告"""
    config: RunConfig
    verdict: OrderVerdict
    mean_x: float
    mean_y: float
    curve_points: int

    model_config = REPORT_CONFIG


class StageFractions(BaseModel):
    """两个投资者在各阶段的最优比例"""
    base_root: float = Field(..., description="基准模型 t=0")
    inserted_branch: float = Field(..., description="单独的插入分支")
    perturbed_root: float = Field(..., description="扰动模型 t=0")
    perturbed_branch: Optional[float] = Field(None, description="扰动模型插入节点（eps=0 时为空）")

    model_config = REPORT_CONFIG


class CounterexampleReport(BaseModel):
    """counterexample 子命令报告"""
    config: RunConfig
    fractions_more: StageFractions
    fractions_less: StageFractions
    terminal_more: DistributionModel
    terminal_less: DistributionModel
    max_payoff_more: float
    max_payoff_less: float
    verdict: OrderVerdict
    centered_verdict: OrderVerdict

    model_config = REPORT_CONFIG


class IidReport(BaseModel):
    """iid 子命令报告"""
    config: RunConfig
    pi_more: float
    pi_less: float
    periods: int
    mode: str = Field(..., description="exact 或 monte_carlo")
    verdict: OrderVerdict

    model_config = REPORT_CONFIG


def gap_curve_frame(X: DiscreteDist, Y: DiscreteDist, fill_in: Optional[int] = None) -> pd.DataFrame:
    """所有拐点加上 fill_in 个均匀插值点处的看涨差"""
    fill_in = settings.fill_in_strikes if fill_in is None else fill_in
    kinks = kink_strikes(X, Y)
    strikes = np.union1d(kinks, np.linspace(kinks[0], kinks[-1], fill_in)) if fill_in > 0 else kinks
    call_x, call_y, gap = call_gap_curve(X, Y, strikes)
    return pd.DataFrame({"strike": strikes, "call_x": call_x, "call_y": call_y, "gap": gap}, columns=CURVE_COLUMNS)


def write_curve(frame: pd.DataFrame, path: Optional[str] = None) -> None:
    """写出 strike,call_x,call_y,gap 表头的 CSV"""
    frame = frame[CURVE_COLUMNS]
    if path is None:
        frame.to_csv(sys.stdout, index=False, float_format=settings.csv_float_format, lineterminator="\n")
        return
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, float_format=settings.csv_float_format, lineterminator="\n")
    logger.info(f"看涨差曲线已写入 {path} ({len(frame)} 行)")


def write_report(report: BaseModel, path: Optional[str] = None) -> None:
    """写出 JSON 报告"""
    text = report.model_dump_json(indent=2) + "\n"
    if path is None:
        sys.stdout.write(text)
        return
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    Path(path).write_text(text, encoding="utf-8")
    logger.info(f"报告已写入 {path}")


__all__ = [
    "CURVE_COLUMNS",
    "Command",
    "OutputFormat",
    "RunConfig",
    "SolveReport",
    "OrderReport",
    "StageFractions",
    "CounterexampleReport",
    "IidReport",
    "gap_curve_frame",
    "write_curve",
    "write_report",
]
