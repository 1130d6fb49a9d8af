"""
分析流水线

按顺序执行: 读取输入 -> 转换记录 -> 生成网格 -> 曲线/区间/显著性分析 -> 写出报告，
每个阶段记录进度日志，出错时直接抛出(由命令行入口转换为退出码)。
"""

from pathlib import Path
from typing import Callable, List, Optional, Tuple

from fbeta_plot.core.config import CliConfig
from fbeta_plot.core.curves import BetaGrid, ClassifierRecord, make_beta_grid
from fbeta_plot.core.errors import OutputNotWritable, UndecodableInput
from fbeta_plot.ingest import ReaderFactory, RunTable, to_records
from fbeta_plot.report import (
    RenderOptions,
    ReportDocument,
    build_report,
    emit_segments_csv,
    emit_segments_json,
    render_svg,
)


def _decode_error(path: str, error: UnicodeDecodeError) -> UndecodableInput:
    """文本流按块解码，偏移量按整个文件重新定位"""
    try:
        Path(path).read_bytes().decode('utf-8')
    except UnicodeDecodeError as e:
        error = e
    except OSError:
        pass
    return UndecodableInput(path, error.start, error.reason)


def read_table(config: CliConfig, logger=None) -> RunTable:
    """按配置读取输入文件"""
    reader = ReaderFactory.create(config.input_kind, logger=logger, positive_label=config.positive_label)
    try:
        with open(config.input_path, 'r', encoding='utf-8', newline='') as f:
            table = reader.read(f)
    except UnicodeDecodeError as e:
        raise _decode_error(config.input_path, e)
    for message in table.diagnostics:
        if logger:
            logger.warning(message)
    return table


def write_text(path: Path, text: str) -> None:
    """写文件; 失败时抛出 OutputNotWritable"""
    try:
        with open(path, 'w', encoding='utf-8', newline='') as f:
            f.write(text)
    except OSError as e:
        raise OutputNotWritable(f"无法写入 {path}: {e}")


class AnalysisPipeline:
    """F_beta 分析流水线"""

    def __init__(self, config: CliConfig, logger=None, outputs: Optional[Tuple[str, ...]] = None):
        """
        初始化流水线

        Args:
            config: 运行参数
            logger: 日志记录器(可选)
            outputs: 需要写出的格式，默认取 config.outputs
        """
        self.config = config
        self.logger = logger
        self.outputs = tuple(sorted(config.outputs if outputs is None else outputs))

        self.table: Optional[RunTable] = None
        self.records: List[ClassifierRecord] = []
        self.grid: Optional[BetaGrid] = None
        self.document: Optional[ReportDocument] = None
        self.written: List[Path] = []

    def stages(self) -> List[Tuple[str, Callable[[], None]]]:
        return [
            ('读取输入', self._ingest),
            ('转换记录', self._convert),
            ('生成网格', self._make_grid),
            ('分析', self._analyze),
            ('写出报告', self._write_outputs),
        ]

    def run(self) -> ReportDocument:
        """
        执行全部阶段

        Returns:
            报告文档
        """
        stages = self.stages()
        for idx, (name, stage) in enumerate(stages, 1):
            if self.logger:
                self.logger.info(f"[{idx}/{len(stages)}] 开始阶段: {name}")
            stage()

        self._log_summary()
        return self.document

    def _ingest(self):
        self.table = read_table(self.config, self.logger)
        if self.logger:
            self.logger.info(f"从 {self.config.input_path} 读取 {len(self.table.entries)} 条记录 ({self.config.input_kind})")

    def _convert(self):
        self.records = to_records(self.table)

    def _make_grid(self):
        self.grid = make_beta_grid(self.config.beta_min, self.config.beta_max, self.config.grid_points)

    def _analyze(self):
        self.document = build_report(
            self.records,
            self.grid,
            alpha=self.config.alpha,
            bonferroni=self.config.bonferroni,
            significance=self.config.significance,
            logger=self.logger,
        )

    def _write_outputs(self):
        prefix = self.config.output_prefix
        emitters = {
            'svg': lambda doc: render_svg(doc, RenderOptions.from_mapping(self.config.render)),
            'json': emit_segments_json,
            'csv': emit_segments_csv,
        }
        for fmt in self.outputs:
            path = Path(f"{prefix}.{fmt}")
            write_text(path, emitters[fmt](self.document))
            self.written.append(path)
            if self.logger:
                self.logger.info(f"已写出: {path}")

    def _log_summary(self):
        """记录分析摘要"""
        if not self.logger:
            return
        doc = self.document
        self.logger.info("=" * 60)
        self.logger.info("分析完成")
        self.logger.info(f"模式: {doc.mode}")
        self.logger.info(f"分类器: {len(doc.curves)}")
        self.logger.info(f"优势区间: {len(doc.segments)}")
        self.logger.info(f"胜出者: {', '.join(doc.winners)}")
        self.logger.info(f"输出文件: {len(self.written)}")
        self.logger.info("=" * 60)
