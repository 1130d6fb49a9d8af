"""
核心模块: 指标、曲线、统计检验、配置与日志
"""

from fbeta_plot.core.config import CliConfig, Config
from fbeta_plot.core.curves import (
    BetaGrid,
    ClassifierRecord,
    CrossoverPoint,
    CurveSummary,
    Segment,
    all_crossovers,
    crossover_beta,
    dominance_partition,
    evaluate_curve,
    make_beta_grid,
)
from fbeta_plot.core.logger import Logger
from fbeta_plot.core.metrics import (
    ConfusionCounts,
    PointEstimate,
    RateSet,
    f_beta,
    simple_rates,
)
from fbeta_plot.core.stats import TestResult, paired_t, significance_mask, t_sf

__all__ = [
    'Config',
    'CliConfig',
    'Logger',
    'ConfusionCounts',
    'RateSet',
    'PointEstimate',
    'simple_rates',
    'f_beta',
    'BetaGrid',
    'ClassifierRecord',
    'CurveSummary',
    'CrossoverPoint',
    'Segment',
    'make_beta_grid',
    'evaluate_curve',
    'crossover_beta',
    'dominance_partition',
    'all_crossovers',
    'TestResult',
    'paired_t',
    't_sf',
    'significance_mask',
]
