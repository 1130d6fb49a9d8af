from fbeta_plot.core.logger import Logger


def test_console_goes_to_stderr(capsys):
    logger = Logger(level="INFO")
    logger.info("hello")
    logger.debug("hidden")
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "INFO hello" in captured.err
    assert "hidden" not in captured.err
    assert logger.get_log_file() is None


def test_file_handler_only_with_log_dir(tmp_path, capsys):
    logger = Logger(log_dir=str(tmp_path / "logs"), level="debug")
    logger.debug("to file")
    for handler in logger.logger.handlers:
        handler.flush()
    assert logger.get_log_file() == tmp_path / "logs" / "fbeta_plot.log"
    assert "DEBUG to file" in logger.get_log_file().read_text(encoding="utf-8")


def test_reinit_replaces_handlers():
    Logger(level="INFO")
    logger = Logger(level="WARNING")
    assert len(logger.logger.handlers) == 1


def test_set_level(capsys):
    logger = Logger(level="WARNING")
    logger.set_level("debug")
    logger.debug("now visible")
    assert "now visible" in capsys.readouterr().err
