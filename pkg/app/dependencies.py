from typing import Optional

from pydantic import BaseModel, Field

from app.config import Settings, settings


def get_settings() -> Settings:
    return settings


# per-request overrides, inherited by the request schemas of every router
class RunOptions(BaseModel):
    seed: Optional[int] = Field(default=None, description="seed of random members")
    max_depth: Optional[int] = Field(default=None, ge=1, description="blow-ups per branch")
    assume_irreducible: Optional[bool] = None

    def apply(self, base: Settings) -> Settings:
        return base.override(seed=self.seed, max_depth=self.max_depth, assume_irreducible=self.assume_irreducible)
