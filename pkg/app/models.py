import enum
from typing import Dict, List, Optional

from pydantic import BaseModel, Field

from app.cluster import WeightedCluster

#############################################################


# check outcome of a verification report
class CheckStatus(str, enum.Enum):
    passed = "pass"
    failed = "fail"
    skipped = "skipped"  # not applicable, or no rational data to run it on


class OutputFormat(str, enum.Enum):
    json = "json"
    text = "text"
    dot = "dot"


#############################################################


class StepOut(BaseModel):
    chart: int = Field(description="1: (u, uv), 2: (uv, v)")
    coords: List[str]


class ClusterPointOut(BaseModel):
    origin: List[str]
    path: List[StepOut]
    weight: int
    label: str


class LinearSystemOut(BaseModel):
    degree: int
    basis: List[str]
    projDim: int
    baseCluster: Optional[List[ClusterPointOut]] = None


class ExcDecompositionOut(BaseModel):
    degree: int
    e: List[int] = Field(description="multiplicities, in the canonical order of the cluster")
    exc: List[int] = Field(description="coefficients of the strict exceptional curves")


class AnalysisOut(BaseModel):
    curve: str
    degree: int
    nuTilde: int
    arithmeticGenus: int
    delta: int
    genus: int
    isRational: bool
    omegaNonempty: bool
    dimLC: Optional[int] = None
    cluster: List[ClusterPointOut]
    totalTransform: Optional[ExcDecompositionOut] = None
    LC: Optional[LinearSystemOut] = None


class ReportOut(BaseModel):
    curve: str
    degree: int
    nuTilde: int
    genus: int
    omegaNonempty: bool
    dimLC: Optional[int] = None
    cluster: List[ClusterPointOut]
    checks: Dict[str, CheckStatus]


class ErrorOut(BaseModel):
    curve: Optional[str] = None
    error: str
    message: str


class VerifySummaryOut(BaseModel):
    curves: int
    failed: int
    errors: int
    rows: List[ReportOut | ErrorOut]


#############################################################


def cluster_out(weighted: WeightedCluster) -> List[ClusterPointOut]:
    return [
        ClusterPointOut(
            origin=[str(c) for c in p.origin],
            path=[StepOut(chart=s.chart, coords=[str(c) for c in s.coords]) for s in p.path],
            weight=w,
            label=p.label(),
        )
        for p, w in weighted.items
    ]


def linear_system_out(system, base: Optional[WeightedCluster] = None) -> Optional[LinearSystemOut]:
    if system is None:
        return None
    return LinearSystemOut(**system.to_dict(), baseCluster=None if base is None else cluster_out(base))


def analysis_out(analysis) -> AnalysisOut:
    return AnalysisOut(
        curve=analysis.form.to_text(),
        degree=analysis.degree,
        nuTilde=analysis.nu_tilde,
        arithmeticGenus=analysis.arithmetic_genus,
        delta=analysis.delta,
        genus=analysis.geometric_genus,
        isRational=analysis.is_rational,
        omegaNonempty=analysis.omega_nonempty,
        dimLC=analysis.dim_lc,
        cluster=cluster_out(analysis.singular_cluster),
        totalTransform=None if analysis.total is None else ExcDecompositionOut(**analysis.total.to_dict()),
        LC=linear_system_out(analysis.lc, analysis.lc_base),
    )


def report_out(report) -> ReportOut:
    analysis = report.analysis
    return ReportOut(
        curve=report.curve,
        degree=analysis.degree,
        nuTilde=analysis.nu_tilde,
        genus=analysis.geometric_genus,
        omegaNonempty=analysis.omega_nonempty,
        dimLC=analysis.dim_lc,
        cluster=cluster_out(analysis.singular_cluster),
        checks=dict(report.checks),
    )


def error_out(err, curve: Optional[str] = None) -> ErrorOut:
    return ErrorOut(curve=curve, **err.to_dict())
