import logging

import pytest

from src.logger_config import get_logger_from_config, load_config, setup_logger


def test_setup_logger_writes_file(tmp_path):
    logger = setup_logger("schreier_test_file", log_dir=str(tmp_path), log_file="run.log", level="ERROR")
    logger.debug("kept in the file")
    for handler in logger.handlers:
        handler.flush()
    assert "kept in the file" in (tmp_path / "run.log").read_text()
    assert len(logger.handlers) == 2


def test_console_only_logger():
    logger = setup_logger("schreier_test_console", log_dir=None, level="WARNING")
    assert len(logger.handlers) == 1
    assert logger.handlers[0].level == logging.WARNING


def test_setup_twice_does_not_duplicate_handlers():
    setup_logger("schreier_test_twice", log_dir=None)
    logger = setup_logger("schreier_test_twice", log_dir=None)
    assert len(logger.handlers) == 1


def test_load_config_missing(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_config(str(tmp_path / "missing.yaml"))


def test_get_logger_falls_back_without_config(no_config):
    logger = get_logger_from_config(no_config)
    assert logger.name == "src"
    assert len(logger.handlers) == 1


def test_get_logger_from_config(tmp_path):
    config = tmp_path / "config.yaml"
    config.write_text(
        f"paths:\n  log_dir: {tmp_path / 'logs'}\n"
        "logging:\n  logger_name: schreier_test_cfg\n  level: ERROR\n"
    )
    logger = get_logger_from_config(str(config))
    assert logger.name == "schreier_test_cfg"
    assert (tmp_path / "logs" / "schreier.log").exists()
