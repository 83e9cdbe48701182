from typing import List

from fastapi import APIRouter, Depends

from app.cli import verify_lines
from app.config import Settings
from app.dependencies import RunOptions, get_settings
from app.models import VerifySummaryOut

router = APIRouter()


class CorpusIn(RunOptions):
    curves: List[str]


###########################################################################

# ✅ theorem checks over a list of curves
@router.post("/verify", response_model=VerifySummaryOut)
def verify_corpus(body: CorpusIn, base: Settings = Depends(get_settings)):
    """
    Per-curve check matrix in input order; a curve that cannot be analyzed
    becomes an error row instead of failing the request.
    """
    return verify_lines(body.curves, body.apply(base))
