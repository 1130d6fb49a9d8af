"""
fbeta-plot 命令行接口

子命令:
    metrics    每个 (分类器, fold) 的 Acc/TPR/TNR/PPV 与 F0.5/F1/F2
    crossover  两个 hold-out 分类器曲线的交点
    segments   优势区间划分(交叉验证时附带显著性)
    plot       生成 F_beta 图(SVG)
    simulate   输出五种典型分类器的模拟池(rates JSON)

标准输出只包含数据，日志与错误信息写到标准错误。
"""

import argparse
import sys
from pathlib import Path
from typing import List, Optional

from fbeta_plot import __version__
from fbeta_plot.core.config import INPUT_KINDS, CliConfig, Config
from fbeta_plot.core.curves import crossover_beta
from fbeta_plot.core.errors import (
    FBetaPlotError,
    IngestError,
    MissingClassifier,
    NoNegativeInstances,
    NoPositiveInstances,
    NotHoldOutMode,
)
from fbeta_plot.core.logger import Logger
from fbeta_plot.core.metrics import ConfusionCounts, PointEstimate, f_beta, simple_rates, standard_f_scores
from fbeta_plot.core.pipeline import AnalysisPipeline, read_table, write_text
from fbeta_plot.core.simulation import five_scenario_pool
from fbeta_plot.ingest import RunEntry, RunTable, emit_rates_json, to_records

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_INTERRUPTED = 130

METRICS_COLUMNS = ('classifier', 'fold', 'acc', 'tpr', 'tnr', 'ppv', 'f0.5', 'f1', 'f2')


class _ArgumentParser(argparse.ArgumentParser):
    """用法错误时打印帮助并以退出码1结束"""

    def error(self, message):
        self.print_help(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: 错误: {message}\n")


def _formats(value: str) -> frozenset:
    return frozenset(item.strip() for item in value.split(',') if item.strip())


def build_parser() -> argparse.ArgumentParser:
    """构造命令行解析器"""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', help='YAML 配置文件(提供默认值, 命令行参数优先)')
    common.add_argument('--input', help='输入文件路径')
    common.add_argument('--kind', choices=INPUT_KINDS, help='输入类型 (默认: counts-csv)')
    common.add_argument('--positive-label', help='predictions-csv 中的正类标签 (默认: 1)')
    common.add_argument('--beta-min', type=float, help='beta 下限 (默认: 0.01)')
    common.add_argument('--beta-max', type=float, help='beta 上限 (默认: 100)')
    common.add_argument('--grid-points', type=int, help='网格点数 (默认: 1001)')
    common.add_argument('--alpha', type=float, help='显著性水平 (默认: 0.05)')
    common.add_argument('--bonferroni', action='store_true', default=None,
                        help='Bonferroni 校正: alpha 除以 (分类器数 - 1)')
    significance = common.add_mutually_exclusive_group()
    significance.add_argument('--significance', dest='significance', action='store_true', default=None,
                              help='要求进行显著性检验(单fold数据时报错)')
    significance.add_argument('--no-significance', dest='significance', action='store_false', default=None,
                              help='跳过显著性检验')
    common.add_argument('--out', help='输出文件前缀 (默认: fbeta_plot)')
    common.add_argument('--formats', type=_formats, help='输出格式, 逗号分隔: svg,json,csv')
    common.add_argument('--log-level', choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'],
                        help='日志级别 (默认: INFO)')

    parser = _ArgumentParser(
        prog='fbeta-plot',
        description='F_beta 曲线分析 - 比较不平衡数据上的二分类器',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
示例:
  fbeta-plot metrics --input counts.csv
  fbeta-plot crossover A B --input rates.json --kind rates-json
  fbeta-plot segments --input cv.csv --formats json,csv --out report
  fbeta-plot plot --input rates.json --kind rates-json --out fig
  fbeta-plot simulate --out five.json
        """
    )
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    subparsers = parser.add_subparsers(dest='command', metavar='COMMAND')
    subparsers.required = True

    subparsers.add_parser('metrics', parents=[common], help='打印简单指标与 F0.5/F1/F2')
    crossover = subparsers.add_parser('crossover', parents=[common], help='两个分类器曲线的交点')
    crossover.add_argument('name_a', help='分类器 A')
    crossover.add_argument('name_b', help='分类器 B')
    subparsers.add_parser('segments', parents=[common], help='优势区间划分')
    subparsers.add_parser('plot', parents=[common], help='生成 F_beta 图')
    simulate = subparsers.add_parser('simulate', help='输出五种典型分类器的 rates JSON')
    simulate.add_argument('--out', help='输出文件 (默认: 标准输出)')
    simulate.add_argument('--log-level', choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'])
    simulate.set_defaults(config=None)

    return parser


def _cli_config(args, config: Config) -> CliConfig:
    return CliConfig.build(
        config,
        input_path=args.input,
        input_kind=args.kind,
        positive_label=args.positive_label,
        beta_min=args.beta_min,
        beta_max=args.beta_max,
        grid_points=args.grid_points,
        alpha=args.alpha,
        bonferroni=args.bonferroni,
        outputs=args.formats,
        output_prefix=args.out,
        significance=args.significance,
    )


def cmd_metrics(args, config: Config, logger: Logger) -> int:
    """每个 (分类器, fold) 一行"""
    cli_config = _cli_config(args, config)
    if cli_config.input_kind == 'rates-json':
        raise IngestError("metrics 需要混淆矩阵计数或逐样本预测输入 (counts-csv / predictions-csv)")

    table = read_table(cli_config, logger)
    rows = []
    for entry in table.entries:
        counts: ConfusionCounts = entry.payload
        try:
            rates = simple_rates(counts)
        except (NoPositiveInstances, NoNegativeInstances) as e:
            raise type(e)(f"分类器 {entry.classifier}, fold {entry.fold}: {e}",
                          classifier=entry.classifier, fold=entry.fold) from e
        if rates.ppv_undefined:
            logger.warning(f"分类器 {entry.classifier}, fold {entry.fold}: 从未预测正类, PPV 按约定取 0")
        scores = standard_f_scores(PointEstimate.from_rates(rates))
        values = (rates.acc, rates.tpr, rates.tnr, rates.ppv) + scores
        rows.append([entry.classifier, str(entry.fold)] + [f"{v:.6f}" for v in values])

    print('\t'.join(METRICS_COLUMNS))
    for row in rows:
        print('\t'.join(row))
    return EXIT_OK


def cmd_crossover(args, config: Config, logger: Logger) -> int:
    """打印交点 beta，或 none 与占优的分类器"""
    cli_config = _cli_config(args, config)
    records = {rec.name: rec for rec in to_records(read_table(cli_config, logger))}

    missing = [name for name in (args.name_a, args.name_b) if name not in records]
    if missing:
        raise MissingClassifier(f"输入中没有分类器: {', '.join(missing)} (可用: {', '.join(sorted(records))})")
    rec_a, rec_b = records[args.name_a], records[args.name_b]
    if not (rec_a.is_hold_out and rec_b.is_hold_out):
        raise NotHoldOutMode("crossover 只适用于 hold-out 数据(每个分类器一个fold)")

    a, b = rec_a.folds[0], rec_b.folds[0]
    beta = None
    if a != b and 0.0 not in (a.ppv, a.tpr, b.ppv, b.tpr):
        beta = crossover_beta(a, b)

    if beta is not None:
        logger.info(f"{rec_a.name} 与 {rec_b.name} 的曲线交于 beta={beta:.9f}")
        print(f"{beta:.9f}")
        return EXIT_OK

    value_a, value_b = f_beta(a, 1.0), f_beta(b, 1.0)
    if value_a == value_b:
        print("none (identical)")
    else:
        dominant = rec_a.name if value_a > value_b else rec_b.name
        print(f"none ({dominant} dominates)")
    return EXIT_OK


def _print_segments(document) -> None:
    print('\t'.join(('beta_lo', 'beta_hi', 'winner', 'significant')))
    for seg in document.segments:
        flag = 'yes' if seg.significant else 'no'
        print(f"{seg.beta_lo:.6g}\t{seg.beta_hi:.6g}\t{seg.winner}\t{flag}")


def cmd_segments(args, config: Config, logger: Logger) -> int:
    """运行完整流水线，写出要求的报告并打印区间列表"""
    pipeline = AnalysisPipeline(_cli_config(args, config), logger)
    document = pipeline.run()
    _print_segments(document)
    return EXIT_OK


def cmd_plot(args, config: Config, logger: Logger) -> int:
    """运行完整流水线并写出 <out>.svg(以及要求的其他报告)"""
    cli_config = _cli_config(args, config)
    pipeline = AnalysisPipeline(cli_config, logger, outputs=tuple(cli_config.outputs | {'svg'}))
    pipeline.run()
    return EXIT_OK


def cmd_simulate(args, config: Config, logger: Logger) -> int:
    """输出五种典型分类器的 (PPV, TPR)"""
    entries = [RunEntry(classifier=rec.name, fold=0, payload=rec.folds[0]) for rec in five_scenario_pool()]
    text = emit_rates_json(RunTable(entries=tuple(entries)))
    if args.out:
        write_text(Path(args.out), text)
        logger.info(f"已写出: {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


COMMANDS = {
    'metrics': cmd_metrics,
    'crossover': cmd_crossover,
    'segments': cmd_segments,
    'plot': cmd_plot,
    'simulate': cmd_simulate,
}


def main(argv: Optional[List[str]] = None) -> int:
    """
    fbeta-plot 命令行入口函数

    Returns:
        退出码: 0 成功, 1 用法/配置错误, 2 输入解析错误, 3 找不到分类器,
        4 crossover 用于交叉验证数据, 5 单fold数据要求显著性, 6 输出不可写
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    # 初始化配置和日志
    try:
        config = Config(args.config)
        logger = Logger(
            log_dir=config.log_dir,
            log_name=config.log_name,
            level=args.log_level or config.log_level
        )
    except (OSError, FBetaPlotError) as e:
        print(f"错误: 初始化配置或日志失败: {e}", file=sys.stderr)
        return EXIT_USAGE

    try:
        return COMMANDS[args.command](args, config, logger)
    except FBetaPlotError as e:
        logger.error(str(e))
        return e.exit_code
    except OSError as e:
        logger.error(f"读取输入失败: {e}")
        return EXIT_PARSE
    except KeyboardInterrupt:
        logger.warning("用户中断执行")
        return EXIT_INTERRUPTED


if __name__ == "__main__":
    sys.exit(main())
