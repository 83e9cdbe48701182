import logging

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from app.config import CORS_ORIGINS, LOG_LEVEL
from app.routers import analyze, diagram, verify

logging.basicConfig(level=LOG_LEVEL, format="%(levelname)s %(name)s: %(message)s")

app = FastAPI(title="ratcurves", description="Rational plane curves of nonnegative type")

# ✅ CORS
app.add_middleware(
    CORSMiddleware,
    allow_origins=CORS_ORIGINS,
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

app.include_router(analyze.router)
app.include_router(diagram.router)
app.include_router(verify.router)


@app.get("/")
def read_root():
    return {"message": "ratcurves: POST /analyze, /diagram, /verify"}
