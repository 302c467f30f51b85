"""
有限离散分布
所有序关系检验的通用载体：原子按取值升序排列，相近取值合并，概率归一化。
"""
import logging
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from config.dominance_settings import settings
from src.utils.error_handler import InvalidDistributionError, InvalidParameterError

logger = logging.getLogger(__name__)

ArrayLike = Union[Sequence[float], np.ndarray]


def _group_sorted(values: np.ndarray, tol: float) -> np.ndarray:
    """为已排序的取值分配分组编号，相邻差值不超过tol的归为一组"""
    if values.size == 0:
        return np.zeros(0, dtype=np.int64)
    breaks = np.diff(values) > tol
    return np.concatenate(([0], np.cumsum(breaks)))


def merge_atoms(values: ArrayLike, probs: ArrayLike, tol: Optional[float] = None) -> Tuple[np.ndarray, np.ndarray]:
    """
    排序并合并相近原子

    合并后的取值为组内概率加权平均，保证均值不变。

    Args:
        values: 原子取值
        probs: 原子概率（须为正）
        tol: 合并容差，默认取配置 atom_merge_tolerance

    Returns:
        (取值, 概率)，取值严格递增
    """
    tol = settings.atom_merge_tolerance if tol is None else tol
    values = np.asarray(values, dtype=float).ravel()
    probs = np.asarray(probs, dtype=float).ravel()
    order = np.argsort(values, kind="stable")
    values = values[order]
    probs = probs[order]

    groups = _group_sorted(values, tol)
    n_groups = int(groups[-1]) + 1 if groups.size else 0
    merged_probs = np.bincount(groups, weights=probs, minlength=n_groups)
    weighted = np.bincount(groups, weights=probs * values, minlength=n_groups)
    merged_values = weighted / merged_probs
    # 单原子组直接保留原值，避免除法引入舍入
    counts = np.bincount(groups, minlength=n_groups)
    singles = counts == 1
    if np.any(singles):
        first_index = np.concatenate(([0], np.cumsum(counts)[:-1]))
        merged_values[singles] = values[first_index[singles]]
    return merged_values, merged_probs


@dataclass(frozen=True, eq=False)
class DiscreteDist:
    """有限离散分布（取值, 概率），构造后不可变"""
    values: np.ndarray
    probs: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=float).ravel()
        probs = np.array(self.probs, dtype=float).ravel()
        if values.size == 0 or values.size != probs.size:
            raise InvalidDistributionError("分布至少需要一个原子，且取值与概率长度一致")
        if not np.all(np.isfinite(values)) or not np.all(np.isfinite(probs)):
            raise InvalidDistributionError("原子取值与概率必须有限")
        if np.any(probs <= 0):
            raise InvalidDistributionError("原子概率必须严格为正")
        if values.size > 1 and np.any(np.diff(values) <= 0):
            raise InvalidDistributionError("原子取值必须严格递增，请使用 DiscreteDist.from_atoms")
        if abs(probs.sum() - 1.0) > 1e-12:
            raise InvalidDistributionError(f"概率和偏离1: {probs.sum()!r}")
        values.flags.writeable = False
        probs.flags.writeable = False
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "probs", probs)

    @classmethod
    def from_atoms(
        cls,
        values: ArrayLike,
        probs: ArrayLike,
        merge_tol: Optional[float] = None,
        prob_tol: Optional[float] = None,
    ) -> "DiscreteDist":
        """
        从任意顺序的原子构造分布：丢弃零概率原子、合并相近取值、重新归一化

        Raises:
            InvalidDistributionError: 概率为负、取值非有限或概率和偏离1超过prob_tol
        """
        prob_tol = settings.probability_tolerance if prob_tol is None else prob_tol
        values = np.asarray(values, dtype=float).ravel()
        probs = np.asarray(probs, dtype=float).ravel()
        if values.size != probs.size:
            raise InvalidDistributionError("取值与概率长度不一致")
        if not np.all(np.isfinite(values)) or not np.all(np.isfinite(probs)):
            raise InvalidDistributionError("原子取值与概率必须有限")
        if np.any(probs < 0):
            raise InvalidDistributionError("原子概率不能为负")
        total = probs.sum()
        if abs(total - 1.0) > prob_tol:
            raise InvalidDistributionError(f"概率和 {total!r} 偏离1超过 {prob_tol}")
        keep = probs > 0
        if not np.any(keep):
            raise InvalidDistributionError("分布没有正概率原子")
        merged_values, merged_probs = merge_atoms(values[keep], probs[keep], merge_tol)
        return cls(merged_values, merged_probs / merged_probs.sum())

    @classmethod
    def from_pairs(cls, atoms: Iterable[Tuple[float, float]], **kwargs) -> "DiscreteDist":
        """从 (取值, 概率) 对构造"""
        pairs = list(atoms)
        return cls.from_atoms([x for x, _ in pairs], [p for _, p in pairs], **kwargs)

    @classmethod
    def point_mass(cls, value: float) -> "DiscreteDist":
        return cls(np.array([float(value)]), np.array([1.0]))

    @property
    def atoms(self) -> List[Tuple[float, float]]:
        return [(float(x), float(p)) for x, p in zip(self.values, self.probs)]

    @property
    def support_min(self) -> float:
        return float(self.values[0])

    @property
    def support_max(self) -> float:
        return float(self.values[-1])

    def __len__(self) -> int:
        return int(self.values.size)

    def __repr__(self) -> str:
        shown = ", ".join(f"({x:.6g}, {p:.6g})" for x, p in self.atoms[:6])
        more = ", ..." if len(self) > 6 else ""
        return f"DiscreteDist([{shown}{more}])"


def mean(d: DiscreteDist) -> float:
    """期望 Σ value·prob"""
    return float(np.dot(d.values, d.probs))


def variance(d: DiscreteDist) -> float:
    m = mean(d)
    return float(np.dot((d.values - m) ** 2, d.probs))


def call_values(d: DiscreteDist, strikes: ArrayLike) -> np.ndarray:
    """向量化的看涨期权价值 E[(X−K)^+]"""
    strikes = np.asarray(strikes, dtype=float)
    payoff = np.maximum(d.values[None, :] - strikes.reshape(-1, 1), 0.0)
    return (payoff @ d.probs).reshape(strikes.shape)


def call_value(d: DiscreteDist, strike: float) -> float:
    """E[(X−K)^+]，关于K凸且不增"""
    return float(np.dot(np.maximum(d.values - strike, 0.0), d.probs))


def put_value(d: DiscreteDist, strike: float) -> float:
    """E[(X−K)^-]，与看涨满足平价 call − put = E[X] − K"""
    return float(np.dot(np.maximum(strike - d.values, 0.0), d.probs))


def shift(d: DiscreteDist, amount: float) -> DiscreteDist:
    """所有原子平移 amount"""
    return DiscreteDist.from_atoms(d.values + amount, d.probs)


def center(d: DiscreteDist) -> DiscreteDist:
    """中心化：X − E[X]"""
    return shift(d, -mean(d))


def scale_center(d: DiscreteDist, a: float) -> DiscreteDist:
    """
    保均值放大：aX − (a−1)E[X]，a ≥ 1

    Raises:
        InvalidParameterError: a < 1
    """
    if not a >= 1:
        raise InvalidParameterError(f"缩放系数必须不小于1: a={a}")
    if a == 1:
        return d
    m = mean(d)
    return DiscreteDist.from_atoms(a * d.values - (a - 1.0) * m, d.probs)


def product_independent(d1: DiscreteDist, d2: DiscreteDist) -> DiscreteDist:
    """独立乘积 X·Z 在乘积测度下的分布，相同取值合并"""
    values = np.multiply.outer(d1.values, d2.values).ravel()
    probs = np.multiply.outer(d1.probs, d2.probs).ravel()
    return DiscreteDist.from_atoms(values, probs)


def total_variation(d1: DiscreteDist, d2: DiscreteDist, tol: Optional[float] = None) -> float:
    """全变差距离 ½Σ|p−q|，取值差在tol以内视为同一原子"""
    tol = settings.atom_merge_tolerance if tol is None else tol
    values = np.concatenate([d1.values, d2.values])
    signed = np.concatenate([d1.probs, -d2.probs])
    order = np.argsort(values, kind="stable")
    groups = _group_sorted(values[order], tol)
    net = np.bincount(groups, weights=signed[order])
    return float(0.5 * np.abs(net).sum())


__all__ = [
    "DiscreteDist",
    "merge_atoms",
    "mean",
    "variance",
    "call_value",
    "call_values",
    "put_value",
    "shift",
    "center",
    "scale_center",
    "product_independent",
    "total_variation",
]
