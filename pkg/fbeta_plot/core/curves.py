"""
F_beta 曲线引擎

在对数均匀的 beta 网格上计算 F_beta 曲线，按闭式公式求两两交点，
并把 beta 轴划分为若干"优势区间"(所有曲线的上包络)。

支持两种模式:
- hold-out: 每个分类器只有一个 (PPV, TPR)，区间边界取闭式交点
- 交叉验证: 每个分类器有多个fold，按fold均值曲线扫描网格，边界用二分法细化
"""

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy import optimize

from fbeta_plot.core.errors import (
    DegenerateInput,
    DuplicateName,
    EmptyPool,
    FoldCountMismatch,
    InvalidRange,
    InvalidRecord,
    NotHoldOutMode,
    TooFewPoints,
    ZeroComponent,
)
from fbeta_plot.core.metrics import PointEstimate, f_beta_many

DEFAULT_BETA_MIN = 0.01
DEFAULT_BETA_MAX = 100.0
DEFAULT_GRID_POINTS = 1001

# 二分细化的相对容差(beta)
BOUNDARY_RTOL = 1e-12

PARTITION_METHODS = ('auto', 'exact', 'scan')


@dataclass(frozen=True)
class BetaGrid:
    """对数均匀的 beta 网格"""

    beta_min: float
    beta_max: float
    points: Tuple[float, ...]

    def __len__(self) -> int:
        return len(self.points)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.points, dtype=float)


@dataclass(frozen=True)
class ClassifierRecord:
    """一个分类器及其按fold排列的 (PPV, TPR)，只有一个fold时即 hold-out 模式"""

    name: str
    folds: Tuple[PointEstimate, ...]

    def __post_init__(self):
        if not self.name:
            raise InvalidRecord("分类器名称不能为空")
        if not self.folds:
            raise InvalidRecord(f"分类器 {self.name} 没有任何fold")
        object.__setattr__(self, 'folds', tuple(self.folds))

    @property
    def fold_count(self) -> int:
        return len(self.folds)

    @property
    def is_hold_out(self) -> bool:
        return len(self.folds) == 1

    def ppv_array(self) -> np.ndarray:
        return np.array([p.ppv for p in self.folds], dtype=float)

    def tpr_array(self) -> np.ndarray:
        return np.array([p.tpr for p in self.folds], dtype=float)

    def fold_values(self, betas) -> np.ndarray:
        """各fold在 betas 上的 F_beta，形状 (fold数, len(betas))"""
        betas = np.atleast_1d(np.asarray(betas, dtype=float))
        return f_beta_many(self.ppv_array()[:, None], self.tpr_array()[:, None], betas[None, :])


@dataclass(frozen=True)
class CurveSummary:
    """一个分类器在网格上的均值曲线与总体标准差"""

    name: str
    mean: Tuple[float, ...]
    std: Tuple[float, ...]


@dataclass(frozen=True)
class CrossoverPoint:
    """两条曲线的交点"""

    name_a: str
    name_b: str
    beta: float


@dataclass(frozen=True)
class Segment:
    """beta 区间及其胜出者; significant 由统计模块填写"""

    beta_lo: float
    beta_hi: float
    winner: str
    significant: bool = False


def make_beta_grid(beta_min: float, beta_max: float, n: int) -> BetaGrid:
    """
    生成从 beta_min 到 beta_max 的 n 点等比网格

    Raises:
        InvalidRange: 不满足 0 < beta_min < beta_max
        TooFewPoints: n < 2
    """
    if not (0 < beta_min < beta_max) or not math.isfinite(beta_max):
        raise InvalidRange(f"beta 范围非法: [{beta_min}, {beta_max}]")
    if n < 2:
        raise TooFewPoints(f"网格点数至少为2: {n}")

    points = np.geomspace(beta_min, beta_max, int(n))
    points[0] = beta_min
    points[-1] = beta_max
    return BetaGrid(beta_min=float(beta_min), beta_max=float(beta_max),
                    points=tuple(float(x) for x in points))


def mean_f_beta(rec: ClassifierRecord, beta) -> np.ndarray:
    """fold均值曲线在任意 beta 处的值"""
    return rec.fold_values(beta).mean(axis=0)


def evaluate_curve(rec: ClassifierRecord, grid: BetaGrid) -> CurveSummary:
    """
    计算分类器在网格上的均值曲线与总体标准差(单fold时标准差为0)
    """
    values = rec.fold_values(grid.as_array())
    mean = values.mean(axis=0)
    if rec.is_hold_out:
        std = np.zeros_like(mean)
    else:
        std = values.std(axis=0)
    return CurveSummary(name=rec.name,
                        mean=tuple(float(x) for x in mean),
                        std=tuple(float(x) for x in std))


def _has_zero_component(p: PointEstimate) -> bool:
    return p.ppv == 0.0 or p.tpr == 0.0


def crossover_beta(a: PointEstimate, b: PointEstimate) -> Optional[float]:
    """
    两条 hold-out 曲线交点的闭式解

    beta = sqrt( TPR_A * TPR_B * (PPV_B - PPV_A) / (PPV_A * PPV_B * (TPR_A - TPR_B)) )

    Returns:
        交点 beta; 根号内不为正或无定义时(一方占优、不相交)返回 None

    Raises:
        DegenerateInput: a 与 b 完全相同
        ZeroComponent: 任一分量为0
    """
    if a == b:
        raise DegenerateInput(f"两条曲线完全相同: {a}")
    if _has_zero_component(a) or _has_zero_component(b):
        raise ZeroComponent(f"交点公式要求所有分量为正: {a}, {b}")

    numerator = a.tpr * b.tpr * (b.ppv - a.ppv)
    denominator = a.ppv * b.ppv * (a.tpr - b.tpr)
    if denominator == 0.0:
        return None
    radicand = numerator / denominator
    if not math.isfinite(radicand) or radicand <= 0.0:
        return None
    return math.sqrt(radicand)


def check_pool(pool: Sequence[ClassifierRecord]) -> List[ClassifierRecord]:
    """
    校验分类器池，并按名称排序返回(保证结果与输入顺序无关)

    Raises:
        EmptyPool, DuplicateName, FoldCountMismatch
    """
    if not pool:
        raise EmptyPool("分类器池为空")

    names = [rec.name for rec in pool]
    duplicates = sorted({name for name in names if names.count(name) > 1})
    if duplicates:
        raise DuplicateName(f"分类器名称重复: {', '.join(duplicates)}")

    fold_counts = {rec.fold_count for rec in pool}
    if len(fold_counts) > 1:
        detail = ', '.join(f"{rec.name}={rec.fold_count}" for rec in pool)
        raise FoldCountMismatch(f"各分类器fold数量不一致: {detail}")

    return sorted(pool, key=lambda rec: rec.name)


def all_crossovers(pool: Sequence[ClassifierRecord]) -> List[CrossoverPoint]:
    """
    hold-out 池中所有两两交点，按 beta 升序

    完全相同或含0分量的组合没有唯一交点，跳过。

    Raises:
        NotHoldOutMode: 存在多fold的记录
    """
    multi_fold = [rec.name for rec in pool if not rec.is_hold_out]
    if multi_fold:
        raise NotHoldOutMode(f"交点计算只适用于 hold-out 数据, 以下分类器有多个fold: {', '.join(multi_fold)}")

    records = sorted(pool, key=lambda rec: rec.name)
    points = []
    for rec_a, rec_b in itertools.combinations(records, 2):
        a, b = rec_a.folds[0], rec_b.folds[0]
        if a == b or _has_zero_component(a) or _has_zero_component(b):
            continue
        beta = crossover_beta(a, b)
        if beta is not None:
            points.append(CrossoverPoint(name_a=rec_a.name, name_b=rec_b.name, beta=beta))

    points.sort(key=lambda cp: (cp.beta, cp.name_a, cp.name_b))
    return points


def _argmax_winners(mean_matrix: np.ndarray) -> np.ndarray:
    """逐列取最大值的行号; 完全相等时取靠前(名称较小)的一行"""
    return np.argmax(mean_matrix, axis=0)


def refine_boundary(rec_a: ClassifierRecord, rec_b: ClassifierRecord, lo: float, hi: float) -> float:
    """
    在 [lo, hi] 内用二分法求两条均值曲线之差的零点

    端点处差值为0时直接返回该端点; 两端同号(仅由名称决胜)时返回 hi。
    """
    def difference(beta):
        return float(mean_f_beta(rec_a, beta)[0] - mean_f_beta(rec_b, beta)[0])

    f_lo = difference(lo)
    f_hi = difference(hi)
    if f_lo == 0.0:
        return float(lo)
    if f_hi == 0.0:
        return float(hi)
    if (f_lo > 0) == (f_hi > 0):
        return float(hi)
    return float(optimize.bisect(difference, lo, hi, xtol=lo * 1e-15, rtol=BOUNDARY_RTOL, maxiter=500))


def _segments_from_breaks(breaks: List[float], winners: List[str]) -> List[Segment]:
    """由边界列表与胜出者列表构造区间，去掉零宽区间并合并相邻同名区间"""
    segments: List[Segment] = []
    for idx, winner in enumerate(winners):
        lo, hi = breaks[idx], breaks[idx + 1]
        if not lo < hi:
            continue
        if segments and segments[-1].winner == winner:
            segments[-1] = Segment(segments[-1].beta_lo, hi, winner)
        elif segments:
            # 去掉零宽区间后，保证相邻区间共享端点
            segments.append(Segment(segments[-1].beta_hi, hi, winner))
        else:
            segments.append(Segment(lo, hi, winner))
    return segments


def _exact_partition(records: List[ClassifierRecord], grid: BetaGrid) -> List[Segment]:
    """hold-out: 以所有闭式交点为候选，在每个候选子区间内部取胜出者"""
    estimates = [rec.folds[0] for rec in records]

    candidates = set()
    for a, b in itertools.combinations(estimates, 2):
        if a == b or _has_zero_component(a) or _has_zero_component(b):
            continue
        beta = crossover_beta(a, b)
        if beta is not None and grid.beta_min < beta < grid.beta_max:
            candidates.add(beta)

    edges = [grid.beta_min] + sorted(candidates) + [grid.beta_max]
    midpoints = np.sqrt(np.array(edges[:-1]) * np.array(edges[1:]))
    ppv = np.array([p.ppv for p in estimates])[:, None]
    tpr = np.array([p.tpr for p in estimates])[:, None]
    winner_idx = _argmax_winners(f_beta_many(ppv, tpr, midpoints[None, :]))

    # 只保留胜出者真正发生变化的边界，并以这两者的交点作为精确边界
    breaks = [grid.beta_min]
    winners = [records[winner_idx[0]].name]
    for k in range(1, len(winner_idx)):
        previous, current = winner_idx[k - 1], winner_idx[k]
        if previous == current:
            continue
        boundary = edges[k]
        a, b = estimates[previous], estimates[current]
        if a != b and not _has_zero_component(a) and not _has_zero_component(b):
            exact = crossover_beta(a, b)
            if exact is not None:
                boundary = exact
        breaks.append(boundary)
        winners.append(records[current].name)
    breaks.append(grid.beta_max)
    return _segments_from_breaks(breaks, winners)


def _scan_partition(records: List[ClassifierRecord], grid: BetaGrid) -> List[Segment]:
    """交叉验证: 网格扫描均值曲线的 argmax，变化处用二分法细化"""
    betas = grid.as_array()
    means = np.vstack([rec.fold_values(betas).mean(axis=0) for rec in records])
    winner_idx = _argmax_winners(means)

    breaks = [grid.beta_min]
    winners = [records[winner_idx[0]].name]
    for i in range(1, len(betas)):
        previous, current = winner_idx[i - 1], winner_idx[i]
        if previous == current:
            continue
        boundary = refine_boundary(records[previous], records[current], betas[i - 1], betas[i])
        breaks.append(boundary)
        winners.append(records[current].name)
    breaks.append(grid.beta_max)
    return _segments_from_breaks(breaks, winners)


def dominance_partition(pool: Sequence[ClassifierRecord], grid: BetaGrid,
                        method: str = 'auto') -> List[Segment]:
    """
    把 [beta_min, beta_max] 划分为优势区间

    Args:
        pool: 分类器池(fold数量一致、名称唯一)
        grid: beta 网格
        method: auto(hold-out 用闭式交点, 交叉验证用扫描+二分) / exact / scan

    Returns:
        按 beta 升序、首尾相接的区间列表(significant 初始为 False)

    Raises:
        EmptyPool, FoldCountMismatch, DuplicateName, NotHoldOutMode(exact 用于多fold)
    """
    if method not in PARTITION_METHODS:
        raise ValueError(f"未知的划分方法: {method}")

    records = check_pool(pool)
    hold_out = records[0].is_hold_out

    if method == 'exact' and not hold_out:
        raise NotHoldOutMode("闭式边界只适用于 hold-out 数据")
    if method == 'exact' or (method == 'auto' and hold_out):
        return _exact_partition(records, grid)
    return _scan_partition(records, grid)


def segment_index(segments: Sequence[Segment], beta: float) -> int:
    """beta 所在区间的下标(边界点归入右侧区间, beta_max 归入最后一个区间)"""
    highs = [seg.beta_hi for seg in segments]
    idx = int(np.searchsorted(highs, beta, side='right'))
    return min(idx, len(segments) - 1)


def winners_in_order(segments: Iterable[Segment]) -> List[str]:
    """按首次胜出顺序排列的胜出者(去重)"""
    seen: List[str] = []
    for seg in segments:
        if seg.winner not in seen:
            seen.append(seg.winner)
    return seen
