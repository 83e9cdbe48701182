import os
from dataclasses import dataclass, replace

from dotenv import load_dotenv

load_dotenv()

# defaults (overridable from .env)
SEED = int(os.getenv("RATCURVES_SEED", "0"))
MAX_DEPTH = int(os.getenv("RATCURVES_MAX_DEPTH", "50"))
RETRIES = int(os.getenv("RATCURVES_RETRIES", "8"))
MEMBER_SAMPLES = int(os.getenv("RATCURVES_MEMBER_SAMPLES", "3"))
WORKERS = int(os.getenv("RATCURVES_WORKERS", "4"))
LOG_LEVEL = os.getenv("RATCURVES_LOG_LEVEL", "WARNING")
CORS_ORIGINS = [o.strip() for o in os.getenv("RATCURVES_CORS_ORIGINS", "*").split(",") if o.strip()]


@dataclass(frozen=True)
class Settings:
    seed: int = SEED
    max_depth: int = MAX_DEPTH
    retries: int = RETRIES
    member_samples: int = MEMBER_SAMPLES
    workers: int = WORKERS
    assume_irreducible: bool = False

    def override(self, **values) -> "Settings":
        """Return a copy with every non-None value replaced."""
        return replace(self, **{k: v for k, v in values.items() if v is not None})


settings = Settings()
