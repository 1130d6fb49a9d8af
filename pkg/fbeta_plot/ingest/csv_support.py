"""
CSV 读取的公共部分

方言: 逗号分隔，\\n 或 \\r\\n 换行，不支持引号(名称中不能含逗号)。
"""

import csv
from typing import Iterator, List, TextIO, Tuple

from fbeta_plot.core.errors import BadCell, MissingHeader


def iter_rows(stream: TextIO, header: Tuple[str, ...]) -> Iterator[Tuple[int, List[str]]]:
    """
    校验表头并逐行产出 (行号, 字段列表)，行号从1开始且表头为第1行; 空行被跳过

    Raises:
        MissingHeader: 表头缺失或不完全一致
        BadCell: 字段数量不对
    """
    reader = csv.reader(stream, delimiter=',', quoting=csv.QUOTE_NONE, strict=True)
    first = next(reader, None)
    while first is not None and not first:
        first = next(reader, None)
    if first is None:
        raise MissingHeader(f"缺少表头, 期望: {','.join(header)}")
    if first and first[0].startswith('\ufeff'):
        first[0] = first[0][1:]
    if tuple(first) != header:
        raise MissingHeader(f"表头不正确: {','.join(first)} (期望: {','.join(header)})")

    for row in reader:
        if not row:
            continue
        if len(row) != len(header):
            column = header[len(row)] if len(row) < len(header) else '<extra>'
            raise BadCell(reader.line_num, column,
                          f"期望 {len(header)} 个字段, 实际 {len(row)} 个(名称中不能包含逗号)")
        yield reader.line_num, row


def parse_name(row_number: int, value: str) -> str:
    name = value.strip()
    if not name:
        raise BadCell(row_number, 'classifier', "分类器名称为空")
    if '"' in name:
        raise BadCell(row_number, 'classifier', "不支持引号")
    return name


def parse_int(row_number: int, column: str, value: str, minimum: int = 0) -> int:
    text = value.strip()
    try:
        number = int(text)
    except ValueError:
        raise BadCell(row_number, column, f"不是整数: {value!r}")
    if number < minimum:
        raise BadCell(row_number, column, f"必须 >= {minimum}: {number}")
    return number
