import logging
import os

from app.core.config import settings

logger = logging.getLogger("listdecode")
logger.setLevel(settings.LOG_LEVEL)

if not any(isinstance(h, logging.FileHandler) for h in logger.handlers):
    log_dir = os.path.dirname(settings.LOG_FILE)
    if log_dir:
        os.makedirs(log_dir, exist_ok=True)
    fh = logging.FileHandler(settings.LOG_FILE)
    fh.setFormatter(
        logging.Formatter("%(asctime)s %(levelname)-5.5s [%(module)s] %(message)s")
    )
    logger.addHandler(fh)
