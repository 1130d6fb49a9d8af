"""
机器可读报告

JSON: 键顺序固定为 mode, alpha, beta_range, segments, crossovers, significance_runs；
CSV: 表头 beta_lo,beta_hi,winner,significant。
浮点数统一保留9位有效数字，两种格式的数值文本完全一致。
"""

import csv
import io
import json
from typing import Any, Dict

from fbeta_plot.report.document import ReportDocument

SEGMENTS_CSV_HEADER = ('beta_lo', 'beta_hi', 'winner', 'significant')


def round9(value: float) -> float:
    """保留9位有效数字"""
    return float(f"{value:.9g}")


def format_number(value: float) -> str:
    """与 JSON 输出相同的数值文本"""
    return json.dumps(round9(value))


def segments_payload(doc: ReportDocument) -> Dict[str, Any]:
    """报告的 JSON 数据结构(dict 保持插入顺序)"""
    return {
        'mode': doc.mode,
        'alpha': round9(doc.alpha),
        'beta_range': [round9(doc.grid.beta_min), round9(doc.grid.beta_max)],
        'segments': [
            {
                'beta_lo': round9(seg.beta_lo),
                'beta_hi': round9(seg.beta_hi),
                'winner': seg.winner,
                'significant': seg.significant,
            }
            for seg in doc.segments
        ],
        'crossovers': [
            {'name_a': cp.name_a, 'name_b': cp.name_b, 'beta': round9(cp.beta)}
            for cp in doc.crossovers
        ],
        'significance_runs': [
            {'beta_lo': round9(lo), 'beta_hi': round9(hi)}
            for lo, hi in doc.significance_runs
        ],
    }


def emit_payload_json(payload: Dict[str, Any]) -> str:
    """序列化报告数据; 对已解析的报告再次序列化得到逐字节相同的文本"""
    return json.dumps(payload, indent=2, ensure_ascii=False, allow_nan=False) + '\n'


def emit_segments_json(doc: ReportDocument) -> str:
    """区间与交点的 JSON 报告"""
    return emit_payload_json(segments_payload(doc))


def emit_segments_csv(doc: ReportDocument) -> str:
    """每个区间一行的 CSV 报告"""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(SEGMENTS_CSV_HEADER)
    for seg in doc.segments:
        writer.writerow([
            format_number(seg.beta_lo),
            format_number(seg.beta_hi),
            seg.winner,
            'true' if seg.significant else 'false',
        ])
    return buffer.getvalue()
