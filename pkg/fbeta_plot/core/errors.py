"""
异常定义模块

所有错误都继承自 FBetaPlotError (ValueError 的子类)，
exit_code 供命令行入口映射为进程退出码。
"""

from typing import Optional


class FBetaPlotError(ValueError):
    """所有错误的基类"""

    exit_code = 1


# ---- 配置 ----

class ConfigError(FBetaPlotError):
    """配置文件格式错误"""


class InvalidConfig(FBetaPlotError):
    """配置取值不满足约束"""


# ---- 指标 ----

class InvalidCounts(FBetaPlotError):
    """混淆矩阵计数非法(负数或全为0)"""


class NoPositiveInstances(FBetaPlotError):
    """tp + fn = 0，没有正类样本"""

    exit_code = 2

    def __init__(self, message: str, classifier: Optional[str] = None, fold: Optional[int] = None):
        super().__init__(message)
        self.classifier = classifier
        self.fold = fold


class NoNegativeInstances(FBetaPlotError):
    """tn + fp = 0，没有负类样本"""

    exit_code = 2

    def __init__(self, message: str, classifier: Optional[str] = None, fold: Optional[int] = None):
        super().__init__(message)
        self.classifier = classifier
        self.fold = fold


class NonPositiveBeta(FBetaPlotError):
    """beta <= 0"""


class InvalidEstimate(FBetaPlotError):
    """PPV/TPR 超出 [0, 1]"""


# ---- 曲线 ----

class InvalidRange(FBetaPlotError):
    """beta 范围为空或非正"""


class TooFewPoints(FBetaPlotError):
    """网格点数少于2"""


class InvalidRecord(FBetaPlotError):
    """分类器记录非法(空名称或没有fold)"""


class DegenerateInput(FBetaPlotError):
    """两条曲线完全相同，没有唯一交点"""


class ZeroComponent(FBetaPlotError):
    """交点公式输入中存在0分量"""


class EmptyPool(FBetaPlotError):
    """分类器池为空"""

    exit_code = 2


class DuplicateName(FBetaPlotError):
    """分类器池中名称重复"""


class FoldCountMismatch(FBetaPlotError):
    """分类器之间fold数量不一致"""


class NotHoldOutMode(FBetaPlotError):
    """要求单次划分(hold-out)数据"""

    exit_code = 4


# ---- 统计 ----

class LengthMismatch(FBetaPlotError):
    """配对样本长度不一致"""


class TooFewSamples(FBetaPlotError):
    """样本数少于2"""


class NotCVMode(FBetaPlotError):
    """显著性检验要求交叉验证数据"""

    exit_code = 5


# ---- 数据读取 ----

class IngestError(FBetaPlotError):
    """输入文件解析错误基类"""

    exit_code = 2


class UnknownInputKind(IngestError):
    """未注册的输入类型"""


class MissingHeader(IngestError):
    """缺少或错误的表头"""


class BadCell(IngestError):
    """单元格内容非法"""

    def __init__(self, row: int, column: str, reason: str):
        super().__init__(f"第 {row} 行, 列 '{column}': {reason}")
        self.row = row
        self.column = column
        self.reason = reason


class DuplicateKey(IngestError):
    """(classifier, fold) 重复"""

    def __init__(self, classifier: str, fold: Optional[int], row: Optional[int] = None):
        key = f"classifier={classifier}" if fold is None else f"classifier={classifier}, fold={fold}"
        where = f" (第 {row} 行)" if row is not None else ""
        super().__init__(f"重复的记录: {key}{where}")
        self.classifier = classifier
        self.fold = fold
        self.row = row


class RaggedFolds(IngestError):
    """各分类器的fold集合不一致"""

    def __init__(self, classifier: str, folds, expected):
        super().__init__(
            f"分类器 {classifier} 的fold集合 {sorted(folds)} 与期望的 {sorted(expected)} 不一致"
        )
        self.classifier = classifier
        self.folds = tuple(sorted(folds))
        self.expected = tuple(sorted(expected))


class UndecodableInput(IngestError):
    """输入文件不是合法的 UTF-8"""

    def __init__(self, path: str, offset: int, reason: str):
        super().__init__(f"{path}: 第 {offset} 字节处无法按 UTF-8 解码: {reason}")
        self.path = path
        self.offset = offset


class MixedPayload(IngestError):
    """同一张表中混合了计数与比率"""


class MalformedDocument(IngestError):
    """JSON文档结构错误"""


class ValueOutOfRange(IngestError):
    """比率值不在 [0, 1] 内"""

    def __init__(self, classifier: str, fold: int, field: str, value):
        super().__init__(f"分类器 {classifier}, fold {fold}: {field}={value} 不在 [0, 1] 内")
        self.classifier = classifier
        self.fold = fold
        self.field = field
        self.value = value


# ---- 报告 ----

class EmptyDocument(FBetaPlotError):
    """报告文档没有任何曲线"""


class InvalidDocument(FBetaPlotError):
    """报告文档不满足约束"""


# ---- 命令行 ----

class MissingClassifier(FBetaPlotError):
    """输入中找不到指定的分类器"""

    exit_code = 3


class OutputNotWritable(FBetaPlotError):
    """输出路径不可写"""

    exit_code = 6
