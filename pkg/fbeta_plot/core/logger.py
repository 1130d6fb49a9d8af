"""
日志管理器模块

提供统一的日志记录功能。控制台输出写到标准错误(标准输出只承载数据)，
配置了日志目录时同时写入文件。
"""

import logging
import sys
from pathlib import Path
from typing import Optional

LOGGER_NAME = "fbeta_plot"


class Logger:
    """日志管理器"""

    def __init__(
        self,
        log_dir: Optional[str] = None,
        log_name: Optional[str] = None,
        level: str = "INFO"
    ):
        """
        初始化日志管理器

        Args:
            log_dir: 日志目录，为 None 时不写文件
            log_name: 日志文件名，默认为 fbeta_plot.log
            level: 日志级别 (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        """
        self.log_file: Optional[Path] = None
        if log_dir is not None:
            log_path = Path(log_dir)
            log_path.mkdir(parents=True, exist_ok=True)
            self.log_file = log_path / (log_name or f"{LOGGER_NAME}.log")

        self.level = level.upper()

        # 配置logging
        self._setup_logger()

    def _setup_logger(self):
        """配置日志记录器"""
        self.logger = logging.getLogger(LOGGER_NAME)
        self.logger.setLevel(getattr(logging, self.level))
        self.logger.propagate = False

        # 避免重复添加handler
        if self.logger.handlers:
            for handler in list(self.logger.handlers):
                handler.close()
            self.logger.handlers.clear()

        formatter = logging.Formatter(
            fmt='[%(asctime)s] %(levelname)s %(message)s',
            datefmt='%Y-%m-%d %H:%M:%S'
        )

        if self.log_file is not None:
            file_handler = logging.FileHandler(
                self.log_file,
                encoding='utf-8',
                mode='a'
            )
            file_handler.setLevel(getattr(logging, self.level))
            file_handler.setFormatter(formatter)
            self.logger.addHandler(file_handler)

        # 控制台handler(标准错误)
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setLevel(getattr(logging, self.level))
        console_handler.setFormatter(formatter)
        self.logger.addHandler(console_handler)

    def debug(self, message: str):
        """记录DEBUG级别日志"""
        self.logger.debug(message)

    def info(self, message: str):
        """记录INFO级别日志"""
        self.logger.info(message)

    def warning(self, message: str):
        """记录WARNING级别日志"""
        self.logger.warning(message)

    def error(self, message: str):
        """记录ERROR级别日志"""
        self.logger.error(message)

    def get_log_file(self) -> Optional[Path]:
        """获取日志文件路径(未写文件时为 None)"""
        return self.log_file

    def set_level(self, level: str):
        """
        动态设置日志级别

        Args:
            level: 日志级别 (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        """
        level = level.upper()
        self.level = level
        self.logger.setLevel(getattr(logging, level))
        for handler in self.logger.handlers:
            handler.setLevel(getattr(logging, level))
