"""
读取器工厂

根据输入类型创建读取器实例
"""

from typing import Dict, List, Type

from fbeta_plot.core.errors import UnknownInputKind
from .base import Reader


class ReaderFactory:
    """读取器工厂,根据输入类型创建读取器实例"""

    _reader_registry: Dict[str, Type[Reader]] = {}

    @classmethod
    def register(cls, kind: str, reader_class: Type[Reader]):
        """
        注册输入类型

        Args:
            kind: 输入类型标识(如 counts-csv)
            reader_class: 读取器类
        """
        cls._reader_registry[kind] = reader_class

    @classmethod
    def create(cls, kind: str, logger=None, **options) -> Reader:
        """
        创建读取器实例

        Args:
            kind: 输入类型标识
            logger: 日志记录器(可选)
            options: 传给读取器的选项(如 positive_label)

        Returns:
            读取器实例

        Raises:
            UnknownInputKind: 未知的输入类型
        """
        if kind not in cls._reader_registry:
            raise UnknownInputKind(f"未知的输入类型: {kind} (可用: {', '.join(cls.list_kinds())})")

        reader_class = cls._reader_registry[kind]
        return reader_class(logger=logger, **options)

    @classmethod
    def list_kinds(cls) -> List[str]:
        """列出所有已注册的输入类型"""
        return sorted(cls._reader_registry.keys())
