"""
读取器基类

定义实验结果表 RunTable、所有输入读取器的通用接口，
以及把 RunTable 转换为 ClassifierRecord 的 to_records。
"""

from abc import ABC, abstractmethod
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Set, TextIO, Tuple, Union

from fbeta_plot.core.curves import ClassifierRecord
from fbeta_plot.core.errors import (
    DuplicateKey,
    MixedPayload,
    NoNegativeInstances,
    NoPositiveInstances,
    RaggedFolds,
)
from fbeta_plot.core.metrics import ConfusionCounts, PointEstimate, simple_rates

Payload = Union[ConfusionCounts, PointEstimate]


@dataclass(frozen=True)
class RunEntry:
    """一个分类器在一个fold上的结果"""

    classifier: str
    fold: int
    payload: Payload


@dataclass(frozen=True)
class RunTable:
    """
    实验结果表

    entries 按 (classifier, fold) 排序存放，因此输入行的顺序不影响结果;
    diagnostics 保存解析过程中的警告信息，不参与相等比较。
    """

    entries: Tuple[RunEntry, ...]
    diagnostics: Tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        entries = tuple(sorted(self.entries, key=lambda e: (e.classifier, e.fold)))
        object.__setattr__(self, 'entries', entries)
        validate_entries(entries)

    @property
    def classifiers(self) -> List[str]:
        return sorted({e.classifier for e in self.entries})

    @property
    def payload_kind(self) -> Optional[type]:
        return type(self.entries[0].payload) if self.entries else None

    @property
    def fold_ids(self) -> List[int]:
        return sorted({e.fold for e in self.entries})

    @property
    def mode(self) -> str:
        return 'hold-out' if len(self.fold_ids) <= 1 else 'cross-validation'


def validate_entries(entries: Tuple[RunEntry, ...]) -> None:
    """
    检查 (classifier, fold) 唯一、各分类器fold集合一致、payload 类型一致

    Raises:
        DuplicateKey, RaggedFolds, MixedPayload
    """
    seen: Set[Tuple[str, int]] = set()
    folds: Dict[str, Set[int]] = defaultdict(set)
    kinds = set()
    for entry in entries:
        key = (entry.classifier, entry.fold)
        if key in seen:
            raise DuplicateKey(entry.classifier, entry.fold)
        seen.add(key)
        folds[entry.classifier].add(entry.fold)
        kinds.add(type(entry.payload))

    if len(kinds) > 1:
        raise MixedPayload("同一张表中不能混合混淆矩阵计数与 (PPV, TPR)")

    names = sorted(folds)
    if names:
        expected = folds[names[0]]
        for name in names[1:]:
            if folds[name] != expected:
                raise RaggedFolds(name, folds[name], expected)


class Reader(ABC):
    """输入读取器基类"""

    def __init__(self, logger=None, **options):
        """
        初始化读取器

        Args:
            logger: 日志记录器(可选)
            options: 读取器特定的选项
        """
        self.logger = logger
        self.options = options

    @abstractmethod
    def read(self, stream: TextIO) -> RunTable:
        """
        从文本流读取结果表

        Returns:
            RunTable
        """
        pass

    def warn(self, message: str) -> None:
        if self.logger:
            self.logger.warning(message)


def to_records(table: RunTable) -> List[ClassifierRecord]:
    """
    把 RunTable 转换为按名称排序的 ClassifierRecord 列表

    计数通过 simple_rates 转为 (PPV, TPR)，fold 按 fold_id 排序。

    Raises:
        NoPositiveInstances / NoNegativeInstances: 附带 classifier 和 fold
    """
    grouped: Dict[str, List[RunEntry]] = defaultdict(list)
    for entry in table.entries:
        grouped[entry.classifier].append(entry)

    records = []
    for name in sorted(grouped):
        estimates = []
        for entry in sorted(grouped[name], key=lambda e: e.fold):
            payload = entry.payload
            if isinstance(payload, ConfusionCounts):
                try:
                    payload = PointEstimate.from_rates(simple_rates(payload))
                except NoPositiveInstances as e:
                    raise NoPositiveInstances(
                        f"分类器 {name}, fold {entry.fold}: {e}", classifier=name, fold=entry.fold
                    ) from e
                except NoNegativeInstances as e:
                    raise NoNegativeInstances(
                        f"分类器 {name}, fold {entry.fold}: {e}", classifier=name, fold=entry.fold
                    ) from e
            estimates.append(payload)
        records.append(ClassifierRecord(name=name, folds=tuple(estimates)))
    return records
