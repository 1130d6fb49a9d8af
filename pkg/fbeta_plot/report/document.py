"""
报告文档

ReportDocument 汇总一次分析的全部结果(网格、曲线、交点、区间、显著性段)，
build_report 由分类器池组装出文档。
"""

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from fbeta_plot.core.curves import (
    BetaGrid,
    ClassifierRecord,
    CrossoverPoint,
    CurveSummary,
    Segment,
    all_crossovers,
    check_pool,
    dominance_partition,
    evaluate_curve,
    winners_in_order,
)
from fbeta_plot.core.errors import InvalidDocument, NotCVMode
from fbeta_plot.core.metrics import PointEstimate
from fbeta_plot.core.stats import DEFAULT_ALPHA, significance_mask

MODE_HOLD_OUT = 'hold-out'
MODE_CV = 'cross-validation'


@dataclass(frozen=True)
class ReportDocument:
    """一次 F_beta 分析的完整输出"""

    grid: BetaGrid
    curves: Tuple[CurveSummary, ...]
    crossovers: Tuple[CrossoverPoint, ...]
    segments: Tuple[Segment, ...]
    significance_runs: Tuple[Tuple[float, float], ...]
    alpha: float
    mode: str
    # 散点面板用: 每个分类器的全部 (PPV, TPR)
    points: Tuple[Tuple[str, Tuple[PointEstimate, ...]], ...] = ()

    def __post_init__(self):
        if self.mode not in (MODE_HOLD_OUT, MODE_CV):
            raise InvalidDocument(f"未知的模式: {self.mode}")

        names = {curve.name for curve in self.curves}
        for seg in self.segments:
            if seg.winner not in names:
                raise InvalidDocument(f"区间胜出者 {seg.winner} 没有对应的曲线")

        previous_hi = None
        for lo, hi in self.significance_runs:
            if lo > hi or lo < self.grid.beta_min or hi > self.grid.beta_max:
                raise InvalidDocument(f"显著性段 [{lo}, {hi}] 超出 beta 范围")
            if previous_hi is not None and lo <= previous_hi:
                raise InvalidDocument("显著性段必须有序且互不相交")
            previous_hi = hi

    @property
    def winners(self) -> Tuple[str, ...]:
        """按首次胜出顺序排列的胜出者"""
        return tuple(winners_in_order(self.segments))

    def points_of(self, name: str) -> Tuple[PointEstimate, ...]:
        return dict(self.points).get(name, ())


def build_report(pool: Sequence[ClassifierRecord], grid: BetaGrid,
                 alpha: float = DEFAULT_ALPHA, bonferroni: bool = False,
                 significance: Optional[bool] = None, logger=None) -> ReportDocument:
    """
    由分类器池生成报告文档

    Args:
        pool: 分类器池
        grid: beta 网格
        alpha: 显著性水平
        bonferroni: 是否做 Bonferroni 校正
        significance: None 表示交叉验证时自动检验; True 要求检验(单fold时报错); False 跳过
        logger: 日志记录器(可选)

    Raises:
        NotCVMode: 要求显著性检验但数据只有一个fold
    """
    records = check_pool(pool)
    hold_out = records[0].is_hold_out
    mode = MODE_HOLD_OUT if hold_out else MODE_CV

    if significance and hold_out:
        raise NotCVMode("显著性检验需要交叉验证数据, 当前输入每个分类器只有一个fold")
    run_significance = (not hold_out) if significance is None else significance

    if logger:
        logger.info(f"模式: {mode}, 分类器 {len(records)} 个, fold {records[0].fold_count} 个, 网格 {len(grid)} 点")

    curves = tuple(evaluate_curve(rec, grid) for rec in records)
    crossovers = tuple(all_crossovers(records)) if hold_out else ()
    segments = tuple(dominance_partition(records, grid))
    if logger:
        logger.info(f"优势区间 {len(segments)} 个, 交点 {len(crossovers)} 个")

    runs: Tuple[Tuple[float, float], ...] = ()
    if run_significance:
        result = significance_mask(records, grid, segments, alpha=alpha, bonferroni=bonferroni)
        segments = result.segments
        runs = result.runs
        if logger:
            significant = sum(1 for seg in segments if seg.significant)
            logger.info(f"显著性检验(alpha={result.effective_alpha:g}): {significant}/{len(segments)} 个区间显著")

    return ReportDocument(
        grid=grid,
        curves=curves,
        crossovers=crossovers,
        segments=segments,
        significance_runs=runs,
        alpha=alpha,
        mode=mode,
        points=tuple((rec.name, rec.folds) for rec in records),
    )
