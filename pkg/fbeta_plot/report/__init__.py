"""
报告模块
"""

from fbeta_plot.report.document import MODE_CV, MODE_HOLD_OUT, ReportDocument, build_report
from fbeta_plot.report.emitters import (
    emit_payload_json,
    emit_segments_csv,
    emit_segments_json,
    segments_payload,
)
from fbeta_plot.report.svg import RenderOptions, render_svg

__all__ = [
    'MODE_CV',
    'MODE_HOLD_OUT',
    'ReportDocument',
    'build_report',
    'RenderOptions',
    'render_svg',
    'segments_payload',
    'emit_payload_json',
    'emit_segments_json',
    'emit_segments_csv',
]
