"""
分布JSON格式
{"atoms":[{"x":<number>,"p":<number>},...]}
"""
import json
from pathlib import Path
from typing import List, Union

from pydantic import BaseModel, ConfigDict, Field

from .discrete import DiscreteDist


class AtomModel(BaseModel):
    """单个原子"""
    x: float = Field(..., description="原子取值（财富单位）")
    p: float = Field(..., gt=0.0, le=1.0, description="原子概率")

    model_config = ConfigDict(frozen=True, extra="forbid")


class DistributionModel(BaseModel):
    """离散分布的文件表示"""
    atoms: List[AtomModel] = Field(..., min_length=1, description="原子列表")

    model_config = ConfigDict(frozen=True, extra="forbid")

    def to_dist(self) -> DiscreteDist:
        """转换为归一化的 DiscreteDist"""
        return DiscreteDist.from_atoms([a.x for a in self.atoms], [a.p for a in self.atoms])

    @classmethod
    def from_dist(cls, d: DiscreteDist) -> "DistributionModel":
        return cls(atoms=[AtomModel(x=x, p=p) for x, p in d.atoms])


def load_distribution(path: Union[str, Path]) -> DiscreteDist:
    """读取分布文件"""
    text = Path(path).read_text(encoding="utf-8")
    return DistributionModel.model_validate_json(text).to_dist()


def dump_distribution(d: DiscreteDist, path: Union[str, Path]) -> None:
    """写出分布文件（浮点数使用最短可往返表示，重读无损）"""
    payload = DistributionModel.from_dist(d).model_dump(mode="json")
    Path(path).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


__all__ = ["AtomModel", "DistributionModel", "load_distribution", "dump_distribution"]
