# iid_returns/models.py
from dataclasses import dataclass
from typing import Iterable, Tuple

from src.distributions.discrete import DiscreteDist, mean
from src.utils.error_handler import InvalidParameterError


@dataclass(frozen=True)
class IncrementDist:
    """单期算术收益 R 的分布；既不几乎必然上涨也不几乎必然下跌"""
    law: DiscreteDist

    def __post_init__(self):
        if len(self.law) < 2 or not (self.law.support_min < 0 < self.law.support_max):
            raise InvalidParameterError(
                f"收益分布退化：需要至少一个负值和一个正值原子，实际支撑 [{self.law.support_min}, {self.law.support_max}]"
            )

    @property
    def drift(self) -> float:
        """b = E[R]"""
        return mean(self.law)

    @property
    def returns(self):
        return self.law.values

    @property
    def probs(self):
        return self.law.probs

    @classmethod
    def from_pairs(cls, atoms: Iterable[Tuple[float, float]]) -> "IncrementDist":
        return cls(DiscreteDist.from_pairs(atoms))

    @classmethod
    def binomial(cls, up: float, down: float, p_up: float) -> "IncrementDist":
        """两点收益：up 概率 p_up，down 概率 1 − p_up"""
        return cls(DiscreteDist.from_pairs([(up, p_up), (down, 1.0 - p_up)]))


__all__ = ["IncrementDist"]
