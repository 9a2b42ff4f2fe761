from __future__ import annotations

import csv
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from functools import partial
from io import StringIO
from math import isfinite, nan
from typing import Callable, Optional, Sequence

from loguru import logger
from scipy.stats import pearsonr

from diarscore.error import InvalidConfig
from diarscore.metrics import (
    CderConfig,
    DerConfig,
    EmptyInput,
    UndefinedMetric,
    aggregate_cder,
    aggregate_der,
    compute_cder,
    compute_der,
)
from diarscore.timeline import Annotation

from .corrupt import corrupt
from .dialog import generate_dialog
from .profiles import DialogProfile, ErrorProfile, severity_grid

STUDY_COLUMNS = ("system_id", "der_collar025", "der_collar0", "cder")

_COLLARED = DerConfig(collar_s=0.25)
_NO_COLLAR = DerConfig(collar_s=0.0)


@dataclass(frozen=True)
class StudyRow:
    system_id: str
    der_collar025: float
    der_collar0: float
    cder: float


@dataclass(frozen=True)
class StudyResult:
    rows: tuple[StudyRow, ...]
    pearson_r: float
    pearson_r_collar025: float

    def to_csv(self) -> bytes:
        buffer = StringIO()
        writer = csv.writer(buffer, lineterminator="\n")

        writer.writerow(STUDY_COLUMNS)
        for row in self.rows:
            writer.writerow(
                (
                    row.system_id,
                    f"{row.der_collar025:.6f}",
                    f"{row.der_collar0:.6f}",
                    f"{row.cder:.6f}",
                )
            )

        return buffer.getvalue().encode("utf-8")


def build_corpus(profile: DialogProfile, n_dialogs: int) -> list[Annotation]:
    return [
        generate_dialog(replace(profile, rng_seed=profile.rng_seed + k), f"dialog{k:03d}")
        for k in range(n_dialogs)
    ]


def _ratio_or_nan(aggregate: Callable[[], float]) -> float:
    try:
        return aggregate()
    except (EmptyInput, UndefinedMetric) as e:
        logger.warning("{}", e)
        return nan


def score_system(
    indexed: tuple[int, ErrorProfile], corpus: Sequence[Annotation], cder_cfg: CderConfig
) -> StudyRow:
    index, profile = indexed
    hyps = [corrupt(ref, profile, stream=k) for k, ref in enumerate(corpus)]

    def der_at(cfg: DerConfig) -> float:
        reports = []
        for ref, hyp in zip(corpus, hyps):
            try:
                reports.append(compute_der(ref, hyp, cfg))
            except UndefinedMetric as e:
                reports.append(e.report)
        return aggregate_der(reports).der

    def cder() -> float:
        reports = []
        for ref, hyp in zip(corpus, hyps):
            try:
                reports.append(compute_cder(ref, hyp, cder_cfg))
            except UndefinedMetric as e:
                reports.append(e.report)
        return aggregate_cder(reports).cder

    return StudyRow(
        system_id=f"sys{index:03d}",
        der_collar025=_ratio_or_nan(partial(der_at, _COLLARED)),
        der_collar0=_ratio_or_nan(partial(der_at, _NO_COLLAR)),
        cder=_ratio_or_nan(cder),
    )


def pearson(xs: Sequence[float], ys: Sequence[float]) -> float:
    points = [(x, y) for x, y in zip(xs, ys) if isfinite(x) and isfinite(y)]

    if len(points) < 2:
        logger.warning("Fewer than two finite points; correlation is undefined")
        return nan
    if len({x for x, _ in points}) < 2 or len({y for _, y in points}) < 2:
        logger.warning("A column is constant; correlation is undefined")
        return nan

    return float(pearsonr([x for x, _ in points], [y for _, y in points])[0])


def correlation_study(
    n_systems: int,
    dialog_profile: DialogProfile = DialogProfile(),
    error_grid: Optional[Sequence[ErrorProfile]] = None,
    n_dialogs: int = 3,
    cder_cfg: CderConfig = CderConfig(),
    workers: int = 1,
) -> StudyResult:
    """Score ``n_systems`` corrupted copies of one synthetic corpus with DER and CDER.

    System i uses ``error_grid[i % len(error_grid)]``; when the grid is shorter
    than the system count the reused profiles get a shifted seed.
    """

    if n_systems < 2:
        raise InvalidConfig(f"A correlation needs at least 2 systems, got {n_systems}")
    if n_dialogs < 1:
        raise InvalidConfig(f"n_dialogs must be >= 1, got {n_dialogs}")

    grid = list(error_grid or severity_grid(n_systems, dialog_profile.rng_seed))
    profiles: list[ErrorProfile] = []
    for i in range(n_systems):
        profile = grid[i % len(grid)]
        if i >= len(grid):
            profile = replace(profile, rng_seed=profile.rng_seed + i)
        profiles.append(profile)

    corpus = build_corpus(dialog_profile, n_dialogs)
    logger.info(
        "Scoring {} systems on {} dialogs ({} turns)",
        n_systems,
        n_dialogs,
        sum(len(ann) for ann in corpus),
    )

    score = partial(score_system, corpus=corpus, cder_cfg=cder_cfg)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = tuple(pool.map(score, enumerate(profiles)))
    else:
        rows = tuple(map(score, enumerate(profiles)))

    cders = [row.cder for row in rows]

    return StudyResult(
        rows=rows,
        pearson_r=pearson(cders, [row.der_collar0 for row in rows]),
        pearson_r_collar025=pearson(cders, [row.der_collar025 for row in rows]),
    )
