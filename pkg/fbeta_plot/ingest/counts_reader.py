"""
混淆矩阵计数 CSV

表头: classifier,fold,tp,fn,fp,tn
"""

import io
from typing import Dict, TextIO, Tuple

from fbeta_plot.core.errors import BadCell, DuplicateKey, InvalidCounts
from fbeta_plot.core.metrics import ConfusionCounts
from .base import Reader, RunEntry, RunTable
from .csv_support import iter_rows, parse_int, parse_name

COUNTS_HEADER = ('classifier', 'fold', 'tp', 'fn', 'fp', 'tn')


class CountsCsvReader(Reader):
    """读取每个 (classifier, fold) 一行的混淆矩阵计数"""

    def read(self, stream: TextIO) -> RunTable:
        entries: Dict[Tuple[str, int], RunEntry] = {}

        for row_number, row in iter_rows(stream, COUNTS_HEADER):
            name = parse_name(row_number, row[0])
            fold = parse_int(row_number, 'fold', row[1])
            tp, fn_, fp, tn = (parse_int(row_number, column, value)
                               for column, value in zip(COUNTS_HEADER[2:], row[2:]))
            if (name, fold) in entries:
                raise DuplicateKey(name, fold, row=row_number)
            try:
                counts = ConfusionCounts(tp=tp, fn_=fn_, fp=fp, tn=tn)
            except InvalidCounts as e:
                raise BadCell(row_number, 'tp', str(e))
            entries[(name, fold)] = RunEntry(classifier=name, fold=fold, payload=counts)

        table = RunTable(entries=tuple(entries.values()))
        if self.logger:
            self.logger.debug(f"读取计数表: {len(table.classifiers)} 个分类器, {len(table.fold_ids)} 个fold")
        return table


def parse_counts_csv(stream: TextIO, logger=None) -> RunTable:
    """解析计数 CSV"""
    return CountsCsvReader(logger=logger).read(stream)


def emit_counts_csv(table: RunTable) -> str:
    """把计数表写回 CSV 文本(parse -> emit -> parse 保持不变)"""
    buffer = io.StringIO()
    buffer.write(','.join(COUNTS_HEADER) + '\n')
    for entry in table.entries:
        c = entry.payload
        if not isinstance(c, ConfusionCounts):
            raise TypeError("emit_counts_csv 只接受混淆矩阵计数表")
        buffer.write(f"{entry.classifier},{entry.fold},{c.tp},{c.fn_},{c.fp},{c.tn}\n")
    return buffer.getvalue()
