import logging
import os


def get_logger(software_name: str) -> logging.Logger:
    """Get general purpose ufpp logger."""

    formatter = logging.Formatter("%(asctime)s - %(message)s")

    # WARNINGS and LOGGINGS should be caught by the same handlers.
    logging.captureWarnings(True)

    # Name == py.warnings => to ensure we use the logger where the
    # warnings are send to.
    logger = logging.getLogger("py.warnings")
    logger.setLevel(logging.INFO)

    stream_handler = logging.StreamHandler()
    stream_handler.formatter = formatter
    logger.addHandler(stream_handler)

    log_file_path = os.environ.get("UFPP_LOG_FILE", f"./.{software_name}.log")
    if log_file_path:
        file_handler = logging.FileHandler(log_file_path, mode="w")
        file_handler.formatter = formatter
        logger.addHandler(file_handler)
        logger.debug(f"Log file is written to {log_file_path}.")

    return logger


def get_repair_logger(logger: logging.Logger) -> logging.Logger:
    """Child logger for feasibility repairs, silent unless lowered to INFO."""

    repair_logger = logger.getChild("repair")
    repair_logger.setLevel(logging.WARNING)
    return repair_logger
