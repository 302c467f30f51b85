from typing import Optional, Tuple, Type

from pydantic import field_validator
from pydantic_settings import BaseSettings, PydanticBaseSettingsSource, SettingsConfigDict


class DominanceSettings(BaseSettings):
    """随机占优与组合求解的数值配置"""

    # 序关系检验
    order_tolerance: float = 1e-9
    coupling_residual_tolerance: float = 1e-8

    # 离散分布
    atom_merge_tolerance: float = 1e-12
    probability_tolerance: float = 1e-9

    # 事件树
    tree_probability_tolerance: float = 1e-12
    zero_return_tolerance: float = 1e-12

    # 求解器
    control_tolerance: float = 1e-12
    budget_rel_tolerance: float = 1e-12
    max_bracket_expansions: int = 200

    # i.i.d. 模型
    enumeration_cap: int = 1_000_000
    mc_min_paths: int = 1000
    mc_block_size: int = 10_000
    mc_sigma_level: float = 3.0

    # 输出
    fill_in_strikes: int = 50
    csv_float_format: str = "%.17g"

    # 日志配置
    log_level: str = "WARNING"
    log_file: Optional[str] = None  # 默认为None时只输出到stderr

    @field_validator(
        "order_tolerance",
        "coupling_residual_tolerance",
        "atom_merge_tolerance",
        "probability_tolerance",
        "tree_probability_tolerance",
        "zero_return_tolerance",
        "control_tolerance",
        "budget_rel_tolerance",
    )
    @classmethod
    def validate_tolerance(cls, v):
        """验证容差为正数"""
        if not v > 0:
            raise ValueError("tolerance must be strictly positive")
        return v

    @field_validator("mc_sigma_level")
    @classmethod
    def validate_sigma_level(cls, v):
        """验证统计判定的标准误倍数"""
        if not v > 0:
            raise ValueError("mc_sigma_level must be strictly positive")
        return v

    @field_validator("enumeration_cap", "mc_min_paths", "mc_block_size", "max_bracket_expansions")
    @classmethod
    def validate_positive_int(cls, v):
        if v < 1:
            raise ValueError("must be at least 1")
        return v

    model_config = SettingsConfigDict(extra="ignore")

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: Type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> Tuple[PydanticBaseSettingsSource, ...]:
        # 只接受显式参数，不读取环境变量，保证结果可复现
        return (init_settings,)


# 全局配置实例
settings = DominanceSettings()
