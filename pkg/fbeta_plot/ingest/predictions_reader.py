"""
逐样本预测 CSV

表头: classifier,fold,y_true,y_pred
每个 (classifier, fold) 的行按与 positive_label 的比较汇总为混淆矩阵。
"""

from collections import Counter, defaultdict
from typing import Dict, TextIO, Tuple

from fbeta_plot.core.errors import BadCell, InvalidCounts
from fbeta_plot.core.metrics import ConfusionCounts
from .base import Reader, RunEntry, RunTable
from .csv_support import iter_rows, parse_int, parse_name

PREDICTIONS_HEADER = ('classifier', 'fold', 'y_true', 'y_pred')
DEFAULT_POSITIVE_LABEL = '1'


class PredictionsCsvReader(Reader):
    """读取逐样本的真实标签与预测标签"""

    def __init__(self, logger=None, positive_label: str = DEFAULT_POSITIVE_LABEL, **options):
        super().__init__(logger=logger, **options)
        self.positive_label = positive_label

    def read(self, stream: TextIO) -> RunTable:
        pos = self.positive_label
        cells: Dict[Tuple[str, int], Counter] = defaultdict(Counter)
        first_row: Dict[Tuple[str, int], int] = {}
        positive_seen = False

        for row_number, row in iter_rows(stream, PREDICTIONS_HEADER):
            name = parse_name(row_number, row[0])
            fold = parse_int(row_number, 'fold', row[1])
            y_true, y_pred = row[2].strip(), row[3].strip()
            if not y_true:
                raise BadCell(row_number, 'y_true', "标签为空")
            if not y_pred:
                raise BadCell(row_number, 'y_pred', "标签为空")

            actual = y_true == pos
            predicted = y_pred == pos
            positive_seen = positive_seen or actual
            key = (name, fold)
            first_row.setdefault(key, row_number)
            if actual and predicted:
                cells[key]['tp'] += 1
            elif actual:
                cells[key]['fn_'] += 1
            elif predicted:
                cells[key]['fp'] += 1
            else:
                cells[key]['tn'] += 1

        diagnostics = ()
        if not positive_seen:
            message = f"正类标签 '{pos}' 没有出现在任何 y_true 中"
            self.warn(message)
            diagnostics = (f"UnseenPositiveLabel: {message}",)

        entries = []
        for (name, fold), counter in cells.items():
            try:
                counts = ConfusionCounts(tp=counter['tp'], fn_=counter['fn_'],
                                         fp=counter['fp'], tn=counter['tn'])
            except InvalidCounts as e:
                raise BadCell(first_row[(name, fold)], 'y_true', str(e))
            entries.append(RunEntry(classifier=name, fold=fold, payload=counts))

        table = RunTable(entries=tuple(entries), diagnostics=diagnostics)
        if self.logger:
            self.logger.debug(f"汇总预测: {len(table.classifiers)} 个分类器, {len(table.fold_ids)} 个fold")
        return table


def parse_predictions_csv(stream: TextIO, positive_label: str = DEFAULT_POSITIVE_LABEL,
                          logger=None) -> RunTable:
    """解析逐样本预测 CSV 并汇总为计数表"""
    return PredictionsCsvReader(logger=logger, positive_label=positive_label).read(stream)
