import logging

from lib.config import LOG_FILE, LOG_LEVEL

logger = logging.getLogger("hardy")
logger.setLevel(LOG_LEVEL)
handler = logging.FileHandler(filename=LOG_FILE, encoding="utf-8", mode="w", delay=True)
handler.setFormatter(logging.Formatter("%(asctime)s:%(levelname)s:%(name)s: %(message)s"))
logger.addHandler(handler)
