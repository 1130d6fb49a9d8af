"""
五种典型分类器的模拟池

一个均衡分类器，加上两对互为镜像的偏向分类器(偏 PPV / 偏 TPR，轻度 / 重度)，
用于展示排名随 beta 变化的规律。
"""

from typing import List

from fbeta_plot.core.curves import ClassifierRecord
from fbeta_plot.core.metrics import PointEstimate

FIVE_SCENARIOS = (
    ('balanced', 0.8, 0.8),
    ('ppv_mild', 0.9, 0.6),
    ('tpr_mild', 0.6, 0.9),
    ('ppv_heavy', 0.95, 0.5),
    ('tpr_heavy', 0.5, 0.95),
)


def five_scenario_pool() -> List[ClassifierRecord]:
    """返回按名称排序的五分类器 hold-out 池"""
    pool = [
        ClassifierRecord(name=name, folds=(PointEstimate(ppv=ppv, tpr=tpr),))
        for name, ppv, tpr in FIVE_SCENARIOS
    ]
    return sorted(pool, key=lambda rec: rec.name)
