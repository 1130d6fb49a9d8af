"""
数据读取模块 - 自动注册所有输入类型
"""

from fbeta_plot.ingest.base import Reader, RunEntry, RunTable, to_records
from fbeta_plot.ingest.counts_reader import CountsCsvReader, emit_counts_csv, parse_counts_csv
from fbeta_plot.ingest.factory import ReaderFactory
from fbeta_plot.ingest.predictions_reader import PredictionsCsvReader, parse_predictions_csv
from fbeta_plot.ingest.rates_reader import RatesJsonReader, emit_rates_json, parse_rates_json

# 注册内置输入类型
ReaderFactory.register('counts-csv', CountsCsvReader)
ReaderFactory.register('predictions-csv', PredictionsCsvReader)
ReaderFactory.register('rates-json', RatesJsonReader)

__all__ = [
    'Reader',
    'RunEntry',
    'RunTable',
    'ReaderFactory',
    'CountsCsvReader',
    'PredictionsCsvReader',
    'RatesJsonReader',
    'parse_counts_csv',
    'parse_predictions_csv',
    'parse_rates_json',
    'emit_counts_csv',
    'emit_rates_json',
    'to_records',
]
