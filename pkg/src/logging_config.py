"""集中式日志配置
提供统一的日志初始化，包含stderr控制台输出和可选的按大小轮转的文件日志。
stdout 保留给 JSON/CSV 报告，因此控制台处理器写到 stderr。
"""
import logging
import sys
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Optional, Union


def configure_logging(level: Union[int, str] = logging.WARNING, log_file: Optional[str] = None):
    """初始化日志：配置控制台处理器，如指定文件则追加轮转文件处理器。"""
    if isinstance(level, str):
        level = logging.getLevelName(level.upper())
        if not isinstance(level, int):
            level = logging.WARNING

    root = logging.getLogger()
    root.setLevel(level)

    formatter = logging.Formatter("%(asctime)s - %(name)s - %(levelname)s - %(message)s")

    # 如果已经配置则只更新级别（避免重复添加handler）
    console = [h for h in root.handlers if getattr(h, "_dominance_console", False)]
    if console:
        for handler in console:
            handler.setLevel(level)
    else:
        ch = logging.StreamHandler(sys.stderr)
        ch.setLevel(level)
        ch.setFormatter(formatter)
        ch._dominance_console = True
        root.addHandler(ch)

    if log_file is None or any(isinstance(h, RotatingFileHandler) for h in root.handlers):
        return

    log_path = Path(log_file)
    log_path.parent.mkdir(parents=True, exist_ok=True)

    # 文件处理器，按大小轮转
    fh = RotatingFileHandler(str(log_path), maxBytes=5 * 1024 * 1024, backupCount=5, encoding="utf-8")
    fh.setLevel(level)
    fh.setFormatter(formatter)
    root.addHandler(fh)


__all__ = ["configure_logging"]
