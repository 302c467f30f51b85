"""
错误处理与日志配置测试
"""
import json
import logging
from logging.handlers import RotatingFileHandler

import pytest

from src.distributions.io import DistributionModel
from src.logging_config import configure_logging
from src.utils.error_handler import (
    EXIT_INVALID_INPUT,
    DominanceError,
    EnumerationCapExceededError,
    InvalidParameterError,
    PreconditionError,
    exit_code_on_error,
)


class TestExitCodeOnError:
    """命令行错误到退出码的映射"""

    @pytest.mark.parametrize(
        "error",
        [
            InvalidParameterError("bad"),
            EnumerationCapExceededError("too many", atoms=10, cap=5),
            FileNotFoundError("missing.json"),
            json.JSONDecodeError("bad", "{", 0),
        ],
    )
    def test_known_errors_map_to_two(self, error, caplog):
        @exit_code_on_error
        def failing():
            raise error

        with caplog.at_level(logging.ERROR):
            assert failing() == EXIT_INVALID_INPUT
        assert "failing" in caplog.text

    def test_validation_error(self):
        @exit_code_on_error
        def parse():
            DistributionModel.model_validate({"atoms": []})
            return 0

        assert parse() == EXIT_INVALID_INPUT

    def test_success_passes_through(self):
        assert exit_code_on_error(lambda: 0)() == 0

    def test_unexpected_errors_propagate(self):
        """程序缺陷不被吞掉"""
        @exit_code_on_error
        def broken():
            raise KeyError("node")

        with pytest.raises(KeyError):
            broken()

    def test_hierarchy(self):
        assert issubclass(PreconditionError, DominanceError)
        assert issubclass(InvalidParameterError, ValueError)
        assert not issubclass(EnumerationCapExceededError, ValueError)


class TestConfigureLogging:

    @pytest.fixture(autouse=True)
    def restore_root(self):
        root = logging.getLogger()
        handlers, level = list(root.handlers), root.level
        yield
        for handler in root.handlers:
            if handler not in handlers:
                handler.close()
        root.handlers[:] = handlers
        root.setLevel(level)

    def test_idempotent_console_handler(self):
        """重复调用只更新级别"""
        configure_logging("INFO")
        configure_logging("DEBUG")
        root = logging.getLogger()
        console = [h for h in root.handlers if getattr(h, "_dominance_console", False)]
        assert len(console) == 1
        assert root.level == logging.DEBUG
        assert console[0].level == logging.DEBUG

    def test_unknown_level_falls_back(self):
        configure_logging("LOUD")
        assert logging.getLogger().level == logging.WARNING

    def test_rotating_file(self, tmp_path):
        log_file = tmp_path / "logs" / "run.log"
        configure_logging("INFO", str(log_file))
        assert any(isinstance(h, RotatingFileHandler) for h in logging.getLogger().handlers)
        logging.getLogger("src.test").info("写入文件")
        for handler in logging.getLogger().handlers:
            handler.flush()
        assert "写入文件" in log_file.read_text(encoding="utf-8")
