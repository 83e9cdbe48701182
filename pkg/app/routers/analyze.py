from fastapi import APIRouter, Depends, HTTPException

from app.config import Settings
from app.dependencies import RunOptions, get_settings
from app.errors import CurveError
from app.exactpoly import parse_form
from app.models import AnalysisOut, analysis_out
from app.rational import analyze

router = APIRouter()


# ✅ request schema
class CurveIn(RunOptions):
    curve: str


###########################################################################

# ✅ curve analysis: singular cluster, nu~, genus, L_C
@router.post("/analyze", response_model=AnalysisOut)
def analyze_curve(body: CurveIn, base: Settings = Depends(get_settings)):
    """
    Same payload as `analyze --format json` on the command line.
        - domain errors (NotHomogeneous, NonRationalSingularity, ...) answer 422
    """
    try:
        return analysis_out(analyze(parse_form(body.curve), body.apply(base)))
    except CurveError as err:
        raise HTTPException(status_code=err.status_code, detail=err.to_dict())
