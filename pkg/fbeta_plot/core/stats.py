"""
统计检验模块

单侧配对 t 检验，以及标记"区间胜出者显著优于其他所有分类器"的 beta 区域。
"""

import math
from dataclasses import dataclass, replace
from typing import List, Sequence, Tuple

import numpy as np
from scipy import special

from fbeta_plot.core.curves import (
    BetaGrid,
    ClassifierRecord,
    Segment,
    check_pool,
    segment_index,
)
from fbeta_plot.core.errors import LengthMismatch, NotCVMode, TooFewSamples

DEFAULT_ALPHA = 0.05


@dataclass(frozen=True)
class TestResult:
    """配对 t 检验结果, p_one_sided = P(T_df > t_stat)"""

    __test__ = False

    t_stat: float
    df: int
    p_one_sided: float


@dataclass(frozen=True)
class SignificanceResult:
    """显著性掩码、更新后的区间、掩码的连续真值段"""

    mask: Tuple[bool, ...]
    segments: Tuple[Segment, ...]
    runs: Tuple[Tuple[float, float], ...]
    effective_alpha: float


def t_sf(t: float, df: int) -> float:
    """
    t 分布的生存函数 P(T_df > t)

    通过正则化不完全 beta 函数: P(T > |t|) = I_x(df/2, 1/2) / 2, x = df / (df + t^2)
    """
    if df < 1:
        raise TooFewSamples(f"自由度至少为1: {df}")
    if math.isnan(t):
        return float('nan')
    if t == 0:
        return 0.5
    if math.isinf(t):
        return 0.0 if t > 0 else 1.0

    x = df / (df + t * t)
    tail = 0.5 * float(special.betainc(df / 2.0, 0.5, x))
    return tail if t > 0 else 1.0 - tail


def _t_sf_many(t: np.ndarray, df: int) -> np.ndarray:
    """t_sf 的向量化版本"""
    t = np.asarray(t, dtype=float)
    with np.errstate(over='ignore', invalid='ignore'):
        x = df / (df + t * t)
    tail = 0.5 * special.betainc(df / 2.0, 0.5, np.where(np.isfinite(x), x, 0.0))
    p = np.where(t > 0, tail, 1.0 - tail)
    p = np.where(t == 0, 0.5, p)
    p = np.where(np.isposinf(t), 0.0, p)
    return np.where(np.isneginf(t), 1.0, p)


def paired_t_many(a, b) -> Tuple[np.ndarray, int, np.ndarray]:
    """
    按列进行配对 t 检验

    Args:
        a, b: 形状 (n, m) 的数组, 第 i 行是第 i 个fold

    Returns:
        (t统计量数组, 自由度, 单侧p值数组)

    零方差约定: 所有差值相等时，均值>0 得 t=+inf, p=0；均值<0 得 t=-inf, p=1；均值=0 得 t=0, p=0.5
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise LengthMismatch(f"配对样本形状不一致: {a.shape} vs {b.shape}")
    n = a.shape[0]
    if n < 2:
        raise TooFewSamples(f"配对 t 检验至少需要2个样本: {n}")

    d = a - b
    mean = d.mean(axis=0)
    constant = np.all(d == d[0], axis=0)
    sd = d.std(axis=0, ddof=1)
    se = sd / math.sqrt(n)

    with np.errstate(divide='ignore', invalid='ignore'):
        t = np.where(constant | (se == 0), 0.0, mean / np.where(se == 0, 1.0, se))
    degenerate = constant | (se == 0)
    t = np.where(degenerate & (mean > 0), np.inf, t)
    t = np.where(degenerate & (mean < 0), -np.inf, t)

    df = n - 1
    return t, df, _t_sf_many(t, df)


def paired_t(a: Sequence[float], b: Sequence[float]) -> TestResult:
    """
    单侧配对 t 检验, 备择假设为 a 优于 b

    Raises:
        LengthMismatch: 长度不一致
        TooFewSamples: n < 2
    """
    if len(a) != len(b):
        raise LengthMismatch(f"配对样本长度不一致: {len(a)} vs {len(b)}")
    t, df, p = paired_t_many(np.asarray(a, dtype=float)[:, None], np.asarray(b, dtype=float)[:, None])
    return TestResult(t_stat=float(t[0]), df=df, p_one_sided=float(p[0]))


def _true_runs(mask: Sequence[bool], betas: Sequence[float]) -> List[Tuple[float, float]]:
    """掩码中连续为真的网格点段 -> (beta_lo, beta_hi)"""
    runs = []
    start = None
    for i, flag in enumerate(mask):
        if flag and start is None:
            start = i
        elif not flag and start is not None:
            runs.append((float(betas[start]), float(betas[i - 1])))
            start = None
    if start is not None:
        runs.append((float(betas[start]), float(betas[len(mask) - 1])))
    return runs


def _winner_beats_all(fold_values: np.ndarray, winner: np.ndarray, alpha: float) -> np.ndarray:
    """
    fold_values: (分类器数, fold数, 点数); winner: 每个点的胜出者下标
    返回每个点上胜出者是否对其余每个分类器都显著更优
    """
    k, _, m = fold_values.shape
    columns = np.arange(m)
    winner_values = fold_values[winner, :, columns].T
    result = np.ones(m, dtype=bool)
    for c in range(k):
        _, _, p = paired_t_many(winner_values, fold_values[c])
        result &= (winner == c) | (p < alpha)
    return result


def significance_mask(pool: Sequence[ClassifierRecord], grid: BetaGrid,
                      segments: Sequence[Segment], alpha: float = DEFAULT_ALPHA,
                      bonferroni: bool = False) -> SignificanceResult:
    """
    计算显著性掩码并填写区间的 significant 标志

    网格点 beta_i 处的胜出者 W 取其所在区间的 winner；当 W 对其余每个分类器 C
    的单侧配对 t 检验 p < alpha 时 mask[i] 为真。区间内所有内部网格点都为真时该区间显著；
    没有内部网格点的区间在其几何中点处检验。

    Args:
        pool: 交叉验证分类器池
        grid: beta 网格
        segments: dominance_partition 的结果
        alpha: 显著性水平
        bonferroni: 是否把 alpha 除以 (分类器数 - 1)

    Raises:
        NotCVMode: 只有一个fold
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha 必须在 (0, 1) 内: {alpha}")
    records = check_pool(pool)
    if records[0].is_hold_out:
        raise NotCVMode("显著性检验需要交叉验证数据(每个分类器至少2个fold)")

    names = [rec.name for rec in records]
    index_of = {name: i for i, name in enumerate(names)}
    effective_alpha = alpha / (len(records) - 1) if bonferroni and len(records) > 1 else alpha
    betas = grid.as_array()

    if len(records) == 1:
        mask = np.zeros(len(betas), dtype=bool)
        flagged = tuple(replace(seg, significant=False) for seg in segments)
        return SignificanceResult(tuple(bool(x) for x in mask), flagged, (), effective_alpha)

    fold_values = np.stack([rec.fold_values(betas) for rec in records])
    winner = np.array([index_of[segments[segment_index(segments, beta)].winner] for beta in betas])
    mask = _winner_beats_all(fold_values, winner, effective_alpha)

    flagged = []
    for seg in segments:
        interior = (betas > seg.beta_lo) & (betas < seg.beta_hi)
        if interior.any():
            significant = bool(mask[interior].all())
        else:
            midpoint = math.sqrt(seg.beta_lo * seg.beta_hi)
            mid_values = np.stack([rec.fold_values(midpoint) for rec in records])
            significant = bool(_winner_beats_all(mid_values, np.array([index_of[seg.winner]]), effective_alpha)[0])
        flagged.append(replace(seg, significant=significant))

    return SignificanceResult(
        mask=tuple(bool(x) for x in mask),
        segments=tuple(flagged),
        runs=tuple(_true_runs(mask, betas)),
        effective_alpha=effective_alpha,
    )
