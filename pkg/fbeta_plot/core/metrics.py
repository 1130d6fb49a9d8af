"""
基础指标模块

二分类混淆矩阵、简单指标(Acc/TPR/TNR/PPV)以及 F_beta 的计算。
所有函数都是作用于不可变值的纯函数，可在任意线程中并发调用。
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from fbeta_plot.core.errors import (
    InvalidCounts,
    InvalidEstimate,
    NoNegativeInstances,
    NonPositiveBeta,
    NoPositiveInstances,
)


@dataclass(frozen=True)
class ConfusionCounts:
    """一个分类器在一个fold上的混淆矩阵"""

    tp: int
    fn_: int
    fp: int
    tn: int

    def __post_init__(self):
        for field_name in ('tp', 'fn_', 'fp', 'tn'):
            value = getattr(self, field_name)
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
                raise InvalidCounts(f"{field_name} 必须是整数, 实际为 {value!r}")
            if value < 0:
                raise InvalidCounts(f"{field_name} 不能为负数: {value}")
        if self.total == 0:
            raise InvalidCounts("混淆矩阵计数不能全为0")

    @property
    def total(self) -> int:
        return self.tp + self.fn_ + self.fp + self.tn

    @property
    def positives(self) -> int:
        """真实正类样本数"""
        return self.tp + self.fn_

    @property
    def negatives(self) -> int:
        """真实负类样本数"""
        return self.tn + self.fp


@dataclass(frozen=True)
class RateSet:
    """简单指标集合

    ppv_undefined 为 True 表示分类器从未预测正类，此时 ppv 按约定取 0。
    """

    acc: float
    tpr: float
    tnr: float
    ppv: float
    ppv_undefined: bool = False


@dataclass(frozen=True)
class PointEstimate:
    """(PPV, TPR) 坐标，所有 F_beta 曲线都建立在它上面"""

    ppv: float
    tpr: float

    def __post_init__(self):
        for field_name in ('ppv', 'tpr'):
            value = getattr(self, field_name)
            if not 0.0 <= value <= 1.0:
                raise InvalidEstimate(f"{field_name}={value} 不在 [0, 1] 内")

    @classmethod
    def from_rates(cls, rates: RateSet) -> 'PointEstimate':
        return cls(ppv=rates.ppv, tpr=rates.tpr)


def simple_rates(c: ConfusionCounts) -> RateSet:
    """
    计算 Acc、TPR、TNR、PPV

    Args:
        c: 混淆矩阵计数

    Returns:
        RateSet

    Raises:
        NoPositiveInstances: tp + fn = 0
        NoNegativeInstances: tn + fp = 0
    """
    if c.positives == 0:
        raise NoPositiveInstances("没有正类样本 (tp + fn = 0)，无法计算 TPR")
    if c.negatives == 0:
        raise NoNegativeInstances("没有负类样本 (tn + fp = 0)，无法计算 TNR")

    predicted_positive = c.tp + c.fp
    ppv_undefined = predicted_positive == 0

    return RateSet(
        acc=(c.tp + c.tn) / c.total,
        tpr=c.tp / c.positives,
        tnr=c.tn / c.negatives,
        ppv=0.0 if ppv_undefined else c.tp / predicted_positive,
        ppv_undefined=ppv_undefined,
    )


def f_beta(p: PointEstimate, beta: float) -> float:
    """
    计算 F_beta = (beta^2 + 1) * PPV * TPR / (beta^2 * PPV + TPR)

    PPV = TPR = 0 时约定返回 0。结果被限制在 [min(PPV, TPR), max(PPV, TPR)] 内。

    Args:
        p: (PPV, TPR)
        beta: 正实数

    Returns:
        F_beta 值

    Raises:
        NonPositiveBeta: beta <= 0
    """
    if not beta > 0:
        raise NonPositiveBeta(f"beta 必须为正数: {beta}")

    ppv, tpr = p.ppv, p.tpr
    if ppv == 0.0 and tpr == 0.0:
        return 0.0

    b2 = beta * beta
    value = (b2 + 1.0) * ppv * tpr / (b2 * ppv + tpr)
    return min(max(value, min(ppv, tpr)), max(ppv, tpr))


def f_beta_many(ppv, tpr, betas) -> np.ndarray:
    """
    f_beta 的向量化版本，参数按 numpy 规则广播

    Args:
        ppv: PPV 数组
        tpr: TPR 数组
        betas: beta 数组(全部为正)

    Returns:
        广播后形状的 F_beta 数组
    """
    ppv = np.asarray(ppv, dtype=float)
    tpr = np.asarray(tpr, dtype=float)
    betas = np.asarray(betas, dtype=float)
    if np.any(betas <= 0):
        raise NonPositiveBeta("beta 必须全部为正数")

    b2 = betas * betas
    numerator = (b2 + 1.0) * ppv * tpr
    denominator = b2 * ppv + tpr
    with np.errstate(divide='ignore', invalid='ignore'):
        value = np.where(denominator > 0, numerator / np.where(denominator > 0, denominator, 1.0), 0.0)
    return np.clip(value, np.minimum(ppv, tpr), np.maximum(ppv, tpr))


def standard_f_scores(p: PointEstimate) -> Tuple[float, float, float]:
    """常用的 F0.5、F1、F2 三元组"""
    return f_beta(p, 0.5), f_beta(p, 1.0), f_beta(p, 2.0)
