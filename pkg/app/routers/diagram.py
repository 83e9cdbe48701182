from fastapi import APIRouter, Depends, HTTPException
from fastapi.responses import PlainTextResponse

from app.cli import diagram_text
from app.config import Settings
from app.dependencies import get_settings
from app.errors import CurveError
from app.routers.analyze import CurveIn

router = APIRouter()


# ✅ Enriques diagram of the singular cluster, as Graphviz DOT
@router.post("/diagram", response_class=PlainTextResponse)
def curve_diagram(body: CurveIn, base: Settings = Depends(get_settings)):
    try:
        return diagram_text(body.curve, body.apply(base))
    except CurveError as err:
        raise HTTPException(status_code=err.status_code, detail=err.to_dict())
