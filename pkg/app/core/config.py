import os
from pydantic_settings import BaseSettings, SettingsConfigDict
from dotenv import load_dotenv

load_dotenv()

class Settings(BaseSettings):
    # Caps for the exhaustive paths
    CHARACTER_TABLE_LIMIT: int = int(os.getenv("CHARACTER_TABLE_LIMIT", "12"))
    BRUTE_ALPHA_LIMIT: int = int(os.getenv("BRUTE_ALPHA_LIMIT", "6"))
    FULL_SCAN_LIMIT: int = int(os.getenv("FULL_SCAN_LIMIT", "8"))
    CONSTRUCT_LIMIT: int = int(os.getenv("CONSTRUCT_LIMIT", "12"))
    CONSTRUCT_VERIFY_LIMIT: int = int(os.getenv("CONSTRUCT_VERIFY_LIMIT", "7"))

    # LP heuristics
    DEFAULT_ROUND_BITS: int = int(os.getenv("DEFAULT_ROUND_BITS", "64"))
    DEFAULT_FRAGMENT: str = os.getenv("DEFAULT_FRAGMENT", "ht<=1|beta=1,1")

    # Simplex
    PIVOT_RULE: str = os.getenv("PIVOT_RULE", "bland")
    PIVOT_LOG_EVERY: int = int(os.getenv("PIVOT_LOG_EVERY", "500"))

    THREADS: int = int(os.getenv("THREADS", "1"))
    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "INFO")
    CERTIFICATE_DIR: str = os.getenv("CERTIFICATE_DIR", "certificates")

    model_config = SettingsConfigDict(case_sensitive=True)

settings = Settings()
