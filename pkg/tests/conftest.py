"""
pytest配置文件
"""
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import json

import numpy as np
import pytest

from src.distributions.discrete import DiscreteDist
from src.tree_market.constructions import build_base_example, build_perturbed_example
from src.utility.models import UtilitySpec


@pytest.fixture
def rng():
    """固定种子的随机数生成器"""
    return np.random.default_rng(20240611)


@pytest.fixture
def base_tree():
    """两期完备基准模型"""
    return build_base_example()


@pytest.fixture
def perturbed_tree():
    """eps=0.01, alpha=0.05, K=20 的扰动模型"""
    return build_perturbed_example(0.01, 0.05, 20.0)


@pytest.fixture
def u_more():
    """风险厌恶较高的投资者 p=0.9"""
    return UtilitySpec.power(0.9)


@pytest.fixture
def u_less():
    """风险厌恶较低的投资者 p=0.3"""
    return UtilitySpec.power(0.3)


@pytest.fixture
def symmetric_pair():
    """X ≡ 0，Y = ±1 等概率"""
    return DiscreteDist.point_mass(0.0), DiscreteDist.from_pairs([(-1.0, 0.5), (1.0, 0.5)])


@pytest.fixture
def write_json(tmp_path):
    """把字典写成临时JSON文件，返回路径字符串"""
    def _write(name, payload):
        path = tmp_path / name
        path.write_text(json.dumps(payload), encoding="utf-8")
        return str(path)
    return _write
