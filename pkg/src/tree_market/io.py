"""
事件树JSON格式
{"horizon":T,"nodes":[{"id":0,"parent":null,"prob":1,"price":1,"time":0},...]}
"""
import json
from pathlib import Path
from typing import Union

from .models import EventTree


def load_tree(path: Union[str, Path]) -> EventTree:
    """读取事件树文件（只做字段校验，结构校验见 validate_tree）"""
    return EventTree.model_validate_json(Path(path).read_text(encoding="utf-8"))


def dump_tree(tree: EventTree, path: Union[str, Path]) -> None:
    """写出事件树文件"""
    payload = tree.model_dump(mode="json")
    Path(path).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


__all__ = ["load_tree", "dump_tree"]
