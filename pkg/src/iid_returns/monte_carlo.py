"""
Euler 乘积的蒙特卡洛模拟

路径按固定大小的块生成，每块使用 SeedSequence.spawn 派生的子种子，
因此结果只取决于 (seed, paths)，与线程数无关。比较两个比例时共用同一组收益抽样。
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from config.dominance_settings import settings
from src.distributions.discrete import DiscreteDist
from src.stochastic_order.models import OrderRelation, OrderVerdict
from src.utils.error_handler import InvalidParameterError
from .models import IncrementDist

logger = logging.getLogger(__name__)

# 默认执行价取合并样本的分位数
DEFAULT_QUANTILES = np.linspace(0.01, 0.99, 99)


@dataclass(frozen=True)
class MonteCarloSample:
    """Euler 乘积的样本"""
    values: np.ndarray
    pi: float
    periods: int
    seed: int
    centered: bool = True

    @property
    def paths(self) -> int:
        return int(self.values.size)

    @property
    def dist(self) -> DiscreteDist:
        """经验分布（每条路径等权）"""
        return DiscreteDist.from_atoms(self.values, np.full(self.paths, 1.0 / self.paths))

    def mean(self) -> float:
        return float(self.values.mean())

    def mean_standard_error(self) -> float:
        return float(self.values.std(ddof=1) / np.sqrt(self.paths))

    def call_values(self, strikes) -> np.ndarray:
        strikes = np.asarray(strikes, dtype=float)
        return np.array([np.maximum(self.values - k, 0.0).mean() for k in strikes])

    def call_standard_errors(self, strikes) -> np.ndarray:
        strikes = np.asarray(strikes, dtype=float)
        n = self.paths
        return np.array([np.maximum(self.values - k, 0.0).std(ddof=1) / np.sqrt(n) for k in strikes])


def _check_paths(paths: int) -> None:
    if paths < settings.mc_min_paths:
        raise InvalidParameterError(f"路径数至少为 {settings.mc_min_paths}: {paths}")


def _index_dtype(outcomes: int):
    return np.uint8 if outcomes <= np.iinfo(np.uint8).max else np.int64


def draw_outcomes(inc: IncrementDist, N: int, paths: int, seed: int, workers: int = 1) -> np.ndarray:
    """
    抽取 (paths, N) 的收益原子下标

    Raises:
        InvalidParameterError: 路径数过少、N < 0 或 workers < 1
    """
    _check_paths(paths)
    if N < 0:
        raise InvalidParameterError(f"期数不能为负: {N}")
    if workers < 1:
        raise InvalidParameterError(f"workers 必须不小于1: {workers}")

    block = settings.mc_block_size
    sizes = [min(block, paths - start) for start in range(0, paths, block)]
    children = np.random.SeedSequence(seed).spawn(len(sizes))
    cumulative = np.cumsum(inc.probs)
    cumulative[-1] = 1.0
    dtype = _index_dtype(len(inc.law))

    def draw(args) -> np.ndarray:
        child, size = args
        rng = np.random.default_rng(child)
        uniforms = rng.random((size, N))
        return np.searchsorted(cumulative, uniforms, side="right").astype(dtype)

    jobs = list(zip(children, sizes))
    if workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            blocks = list(executor.map(draw, jobs))
    else:
        blocks = [draw(job) for job in jobs]
    return np.concatenate(blocks, axis=0)


def products_from_outcomes(inc: IncrementDist, pi: float, outcomes: np.ndarray, centered: bool = True) -> np.ndarray:
    """按抽样下标计算每条路径的乘积"""
    shift = inc.drift if centered else 0.0
    factors = 1.0 + pi * (inc.returns - shift)
    if outcomes.shape[1] == 0:
        return np.ones(outcomes.shape[0])
    return np.prod(factors[outcomes], axis=1)


def mc_product_sample(
    inc: IncrementDist,
    pi: float,
    N: int,
    paths: int,
    seed: int,
    centered: bool = True,
    workers: int = 1,
) -> MonteCarloSample:
    """Π(1+π(R_i−b)) 的蒙特卡洛样本；给定种子时结果确定"""
    outcomes = draw_outcomes(inc, N, paths, seed, workers)
    values = products_from_outcomes(inc, pi, outcomes, centered)
    logger.info(f"蒙特卡洛: π={pi}, N={N}, paths={paths}, seed={seed}, 样本均值={values.mean():.6g}")
    return MonteCarloSample(values=values, pi=float(pi), periods=N, seed=seed, centered=centered)


def default_strikes(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """合并样本的 1%–99% 分位数，外加0（中心化后的均值）"""
    pooled = np.concatenate([x, y])
    return np.unique(np.append(np.quantile(pooled, DEFAULT_QUANTILES), 0.0))


def mc_order_check(
    inc: IncrementDist,
    pi_more: float,
    pi_less: float,
    N: int,
    paths: int,
    seed: int,
    strikes: Optional[Sequence[float]] = None,
    sigma_level: Optional[float] = None,
    workers: int = 1,
) -> Tuple[OrderVerdict, pd.DataFrame]:
    """
    在共同随机数上比较中心化乘积 X − 1 与 Y − 1 的看涨价值

    中心化使用精确均值1；每个执行价上差值 d = (Y−K)^+ − (X−K)^+ 按路径配对，
    标准误为 std(d)/√paths。所有执行价的看涨差 ≥ −σ·SE 时判定成立。

    Returns:
        (统计判定, 含 strike/call_x/call_y/gap/standard_error 列的 DataFrame)
    """
    sigma_level = settings.mc_sigma_level if sigma_level is None else sigma_level
    outcomes = draw_outcomes(inc, N, paths, seed, workers)
    x = products_from_outcomes(inc, pi_more, outcomes) - 1.0
    y = products_from_outcomes(inc, pi_less, outcomes) - 1.0

    ks = default_strikes(x, y) if strikes is None else np.asarray(strikes, dtype=float)
    rows: List[Tuple[float, float, float, float, float]] = []
    for k in ks:
        cx = np.maximum(x - k, 0.0)
        cy = np.maximum(y - k, 0.0)
        diff = cy - cx
        se = float(diff.std(ddof=1) / np.sqrt(paths))
        rows.append((float(k), float(cx.mean()), float(cy.mean()), float(diff.mean()), se))
    curve = pd.DataFrame(rows, columns=["strike", "call_x", "call_y", "gap", "standard_error"])

    tol = settings.order_tolerance
    holds = bool((curve["gap"] >= -sigma_level * curve["standard_error"] - tol).all())
    min_gap = float(curve["gap"].min())
    tied = curve.index[curve["gap"] <= min_gap + 1e-9 * abs(min_gap)]
    witness = curve.loc[tied[-1]]

    verdict = OrderVerdict(
        relation=OrderRelation.CENTERED_CONVEX,
        holds=holds,
        witness_strike=float(witness["strike"]),
        min_gap=min_gap,
        mean_gap=0.0,
        tolerance=tol,
        boundary=False,
        statistical=True,
        standard_error=float(witness["standard_error"]),
        sigma_level=float(sigma_level),
    )
    logger.info(
        f"蒙特卡洛凸序检验: holds={holds}, min_gap={min_gap:.3e}, SE={verdict.standard_error:.3e}, "
        f"{len(curve)} 个执行价"
    )
    return verdict, curve


__all__ = [
    "MonteCarloSample",
    "draw_outcomes",
    "products_from_outcomes",
    "mc_product_sample",
    "default_strikes",
    "mc_order_check",
]
