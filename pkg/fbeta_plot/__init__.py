"""
fbeta-plot - 不平衡数据分类器的 F_beta 曲线分析

对一组二分类器在一段 beta 范围上计算 F_beta 曲线，精确求出曲线交点，
把 beta 轴划分为各分类器占优的区间(交叉验证时附带配对 t 检验的显著性标记)，
并输出确定性的 SVG 图与 JSON/CSV 报告。

基本用法:
    from fbeta_plot import make_beta_grid, build_report, render_svg
    from fbeta_plot.ingest import parse_rates_json, to_records

    with open("rates.json", encoding="utf-8") as f:
        records = to_records(parse_rates_json(f))

    grid = make_beta_grid(0.01, 100, 1001)
    doc = build_report(records, grid)
    svg = render_svg(doc)
"""

__version__ = "1.0.0"

from fbeta_plot.core import (
    BetaGrid,
    ClassifierRecord,
    CliConfig,
    Config,
    ConfusionCounts,
    CrossoverPoint,
    CurveSummary,
    Logger,
    PointEstimate,
    RateSet,
    Segment,
    TestResult,
    all_crossovers,
    crossover_beta,
    dominance_partition,
    evaluate_curve,
    f_beta,
    make_beta_grid,
    paired_t,
    significance_mask,
    simple_rates,
    t_sf,
)
from fbeta_plot.core.pipeline import AnalysisPipeline
from fbeta_plot.report import (
    RenderOptions,
    ReportDocument,
    build_report,
    emit_segments_csv,
    emit_segments_json,
    render_svg,
)

__all__ = [
    'Config',
    'CliConfig',
    'Logger',
    'AnalysisPipeline',
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
    'ReportDocument',
    'RenderOptions',
    'build_report',
    'render_svg',
    'emit_segments_json',
    'emit_segments_csv',
]
