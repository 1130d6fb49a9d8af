"""
配置管理模块

从YAML文件加载分析参数的默认值; 命令行参数再覆盖这些值。
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, FrozenSet, List, Mapping, Optional

import yaml

from fbeta_plot.core.curves import DEFAULT_BETA_MAX, DEFAULT_BETA_MIN, DEFAULT_GRID_POINTS
from fbeta_plot.core.errors import ConfigError, InvalidConfig
from fbeta_plot.core.stats import DEFAULT_ALPHA


class Config:
    """配置管理器"""

    def __init__(self, config_path: Optional[str] = None):
        """
        初始化配置管理器

        Args:
            config_path: 配置文件路径，为 None 时全部使用默认值
        """
        self.config_path = Path(config_path) if config_path else None
        self._config: Dict[str, Any] = {}
        if self.config_path is not None:
            self.load()

    def load(self) -> None:
        """加载配置文件"""
        if not self.config_path.exists():
            raise FileNotFoundError(f"配置文件不存在: {self.config_path}")

        try:
            with open(self.config_path, 'r', encoding='utf-8') as f:
                loaded = yaml.safe_load(f) or {}
        except yaml.YAMLError as e:
            raise ConfigError(f"配置文件格式错误: {e}")

        if not isinstance(loaded, dict):
            raise ConfigError(f"配置文件顶层必须是映射: {self.config_path}")
        self._config = loaded

    def get(self, key: str, default: Any = None) -> Any:
        """
        获取配置值（支持点号分隔的嵌套键）

        Args:
            key: 配置键，支持点号分隔（如 "analysis.alpha"）
            default: 默认值

        Returns:
            配置值
        """
        keys = key.split('.')
        value = self._config

        for k in keys:
            if isinstance(value, dict):
                value = value.get(k)
                if value is None:
                    return default
            else:
                return default

        return value

    def get_section(self, section: str) -> Dict[str, Any]:
        """获取配置节"""
        return self._config.get(section, {})

    def get_all(self) -> Dict[str, Any]:
        """获取所有配置"""
        return self._config.copy()

    def _typed(self, key: str, default: Any, convert) -> Any:
        value = self.get(key, default)
        if isinstance(value, bool):
            raise InvalidConfig(f"配置项 {key} 必须是数值: {value!r}")
        try:
            return convert(value)
        except (TypeError, ValueError):
            raise InvalidConfig(f"配置项 {key} 必须是数值: {value!r}")

    @property
    def beta_min(self) -> float:
        return self._typed('analysis.beta_min', DEFAULT_BETA_MIN, float)

    @property
    def beta_max(self) -> float:
        return self._typed('analysis.beta_max', DEFAULT_BETA_MAX, float)

    @property
    def grid_points(self) -> int:
        value = self.get('analysis.grid_points', DEFAULT_GRID_POINTS)
        if not isinstance(value, int) or isinstance(value, bool):
            raise InvalidConfig(f"配置项 analysis.grid_points 必须是整数: {value!r}")
        return value

    @property
    def alpha(self) -> float:
        return self._typed('analysis.alpha', DEFAULT_ALPHA, float)

    @property
    def bonferroni(self) -> bool:
        value = self.get('analysis.bonferroni', False)
        if not isinstance(value, bool):
            raise InvalidConfig(f"配置项 analysis.bonferroni 必须是 true/false: {value!r}")
        return value

    @property
    def positive_label(self) -> str:
        return str(self.get('analysis.positive_label', '1'))

    @property
    def output_prefix(self) -> str:
        return str(self.get('output.prefix', 'fbeta_plot'))

    @property
    def output_formats(self) -> List[str]:
        formats = self.get('output.formats', [])
        if isinstance(formats, str):
            formats = [item.strip() for item in formats.split(',') if item.strip()]
        return list(formats)

    @property
    def render_options(self) -> Dict[str, Any]:
        """render 节原样传给 RenderOptions"""
        return dict(self.get_section('render'))

    @property
    def log_dir(self) -> Optional[str]:
        return self.get('logger.log_dir')

    @property
    def log_name(self) -> Optional[str]:
        return self.get('logger.log_name')

    @property
    def log_level(self) -> str:
        return self.get('logger.level', 'INFO')


INPUT_KINDS = ('counts-csv', 'predictions-csv', 'rates-json')
OUTPUT_FORMATS = ('svg', 'json', 'csv')


@dataclass(frozen=True)
class CliConfig:
    """一次命令行运行的完整参数(YAML 默认值 + 命令行覆盖)"""

    input_path: str
    input_kind: str = 'counts-csv'
    positive_label: str = '1'
    beta_min: float = DEFAULT_BETA_MIN
    beta_max: float = DEFAULT_BETA_MAX
    grid_points: int = DEFAULT_GRID_POINTS
    alpha: float = DEFAULT_ALPHA
    bonferroni: bool = False
    outputs: FrozenSet[str] = frozenset()
    output_prefix: str = 'fbeta_plot'
    significance: Optional[bool] = None
    render: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.input_kind not in INPUT_KINDS:
            raise InvalidConfig(f"未知的输入类型: {self.input_kind} (可用: {', '.join(INPUT_KINDS)})")
        if not 0 < self.beta_min < self.beta_max:
            raise InvalidConfig(f"需要 0 < beta_min < beta_max: {self.beta_min}, {self.beta_max}")
        if self.grid_points < 2:
            raise InvalidConfig(f"grid_points 至少为2: {self.grid_points}")
        if not 0 < self.alpha < 1:
            raise InvalidConfig(f"alpha 必须在 (0, 1) 内: {self.alpha}")
        unknown = sorted(set(self.outputs) - set(OUTPUT_FORMATS))
        if unknown:
            raise InvalidConfig(f"未知的输出格式: {', '.join(unknown)} (可用: {', '.join(OUTPUT_FORMATS)})")
        object.__setattr__(self, 'outputs', frozenset(self.outputs))

    @classmethod
    def build(cls, config: Config, **overrides) -> 'CliConfig':
        """
        合并配置文件与命令行参数, 值为 None 的覆盖项被忽略

        Args:
            config: YAML 配置
            overrides: 命令行给出的参数
        """
        values = {
            'input_kind': config.get('input.kind', 'counts-csv'),
            'positive_label': config.positive_label,
            'beta_min': config.beta_min,
            'beta_max': config.beta_max,
            'grid_points': config.grid_points,
            'alpha': config.alpha,
            'bonferroni': config.bonferroni,
            'outputs': frozenset(config.output_formats),
            'output_prefix': config.output_prefix,
            'render': config.render_options,
        }
        values.update({key: value for key, value in overrides.items() if value is not None})
        if 'input_path' not in values:
            values['input_path'] = config.get('input.path')
        if not values['input_path']:
            raise InvalidConfig("未指定输入文件 (--input 或配置项 input.path)")
        return cls(**values)
