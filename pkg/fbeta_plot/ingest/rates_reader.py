"""
(PPV, TPR) JSON

文档格式: {"A": [{"fold": 0, "ppv": 0.9, "tpr": 0.6}, ...], ...}
不认识的字段一律拒绝。
"""

import json
import math
from collections import defaultdict
from typing import Any, Dict, List, Set, TextIO, Tuple

from fbeta_plot.core.errors import DuplicateKey, MalformedDocument, ValueOutOfRange
from fbeta_plot.core.metrics import PointEstimate
from .base import Reader, RunEntry, RunTable

RATE_FIELDS = ('fold', 'ppv', 'tpr')


def _is_number(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


class _JsonObject(dict):
    """保留首次出现的键，重复出现的键记在 repeated 中"""

    def __init__(self, pairs: List[Tuple[str, Any]]):
        super().__init__()
        self.repeated: List[Tuple[str, Any]] = []
        for key, value in pairs:
            if key in self:
                self.repeated.append((key, value))
            else:
                self[key] = value


def _fold_ids(items: Any) -> Set[int]:
    if not isinstance(items, list):
        return set()
    return {item['fold'] for item in items
            if isinstance(item, dict) and isinstance(item.get('fold'), int) and not isinstance(item['fold'], bool)}


def _check_repeated_classifier(document: _JsonObject) -> None:
    if not document.repeated:
        return
    name, items = document.repeated[0]
    shared = _fold_ids(document[name]) & _fold_ids(items)
    raise DuplicateKey(name, min(shared) if shared else None)


class RatesJsonReader(Reader):
    """读取预先计算好的 (PPV, TPR)"""

    def read(self, stream: TextIO) -> RunTable:
        try:
            document = json.load(stream, object_pairs_hook=_JsonObject)
        except json.JSONDecodeError as e:
            raise MalformedDocument(f"JSON 解析失败: 第 {e.lineno} 行第 {e.colno} 列: {e.msg}")

        if not isinstance(document, dict):
            raise MalformedDocument("顶层必须是 分类器名称 -> 结果数组 的对象")
        _check_repeated_classifier(document)

        entries = []
        for name, items in document.items():
            if not name:
                raise MalformedDocument("分类器名称不能为空")
            if not isinstance(items, list) or not items:
                raise MalformedDocument(f"分类器 {name}: 必须是非空数组")
            seen = set()
            for position, item in enumerate(items):
                where = f"分类器 {name}, 第 {position} 项"
                if not isinstance(item, dict):
                    raise MalformedDocument(f"{where}: 必须是对象")
                if item.repeated:
                    raise MalformedDocument(f"{where}: 字段 {item.repeated[0][0]} 重复")
                unknown = sorted(set(item) - set(RATE_FIELDS))
                if unknown:
                    raise MalformedDocument(f"{where}: 不认识的字段 {', '.join(unknown)}")
                missing = [key for key in RATE_FIELDS if key not in item]
                if missing:
                    raise MalformedDocument(f"{where}: 缺少字段 {', '.join(missing)}")

                fold = item['fold']
                if not isinstance(fold, int) or isinstance(fold, bool) or fold < 0:
                    raise MalformedDocument(f"{where}: fold 必须是非负整数: {fold!r}")
                if fold in seen:
                    raise DuplicateKey(name, fold)
                seen.add(fold)

                for key in ('ppv', 'tpr'):
                    value = item[key]
                    if not _is_number(value):
                        raise MalformedDocument(f"{where}: {key} 必须是数值: {value!r}")
                    if not math.isfinite(value) or not 0.0 <= value <= 1.0:
                        raise ValueOutOfRange(name, fold, key, value)

                estimate = PointEstimate(ppv=float(item['ppv']), tpr=float(item['tpr']))
                entries.append(RunEntry(classifier=name, fold=fold, payload=estimate))

        table = RunTable(entries=tuple(entries))
        if self.logger:
            self.logger.debug(f"读取比率表: {len(table.classifiers)} 个分类器, {len(table.fold_ids)} 个fold")
        return table


def parse_rates_json(stream: TextIO, logger=None) -> RunTable:
    """解析 (PPV, TPR) JSON"""
    return RatesJsonReader(logger=logger).read(stream)


def emit_rates_json(table: RunTable) -> str:
    """把 (PPV, TPR) 表写回 JSON 文本(parse -> emit -> parse 保持不变)"""
    document: Dict[str, List[Dict[str, Any]]] = defaultdict(list)
    for entry in table.entries:
        p = entry.payload
        if not isinstance(p, PointEstimate):
            raise TypeError("emit_rates_json 只接受 (PPV, TPR) 表")
        document[entry.classifier].append({'fold': entry.fold, 'ppv': p.ppv, 'tpr': p.tpr})
    return json.dumps(dict(document), indent=2, ensure_ascii=False) + '\n'
