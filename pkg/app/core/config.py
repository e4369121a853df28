"""This module contains the configuration of the application"""

import os

from dotenv import load_dotenv

load_dotenv()


class Settings:
    """settings

    Every value can be overridden through the environment or a ``.env`` file.
    """

    LOG_FILE: str = os.getenv("LISTDEC_LOG_FILE", "log/listdecode.log")
    LOG_LEVEL: str = os.getenv("LISTDEC_LOG_LEVEL", "INFO")
    LOOKUP_MAX_ORDER: int = int(os.getenv("LISTDEC_LOOKUP_MAX_ORDER", "4096"))
    GS_MAX_MULTIPLICITY: int = int(os.getenv("LISTDEC_GS_MAX_MULTIPLICITY", "32"))
    ENUMERATION_BUDGET: int = int(os.getenv("LISTDEC_ENUMERATION_BUDGET", "1000000"))
    DEFAULT_SEED: int = int(os.getenv("LISTDEC_DEFAULT_SEED", "0"))


settings = Settings()
