from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from typing import Optional, Sequence

from loguru import logger

from diarscore.constants import OVERALL_ID
from diarscore.enums import Metric
from diarscore.timeline import Annotation

from .cder import CderReport, aggregate_cder, compute_cder
from .config import CderConfig, DerConfig
from .der import DerReport, aggregate_der, compute_der
from .errors import EmptyInput, UndefinedMetric


@dataclass(frozen=True)
class RecordingScore:
    recording_id: str
    der: Optional[DerReport] = None
    cder: Optional[CderReport] = None

    @property
    def undefined(self) -> bool:
        return any(
            report is not None and not report.defined for report in (self.der, self.cder)
        )


@dataclass(frozen=True)
class CorpusScore:
    recordings: tuple[RecordingScore, ...]
    overall: RecordingScore

    @property
    def undefined(self) -> bool:
        return self.overall.undefined or any(score.undefined for score in self.recordings)


def pair_recordings(
    refs: Sequence[Annotation], hyps: Sequence[Annotation]
) -> list[tuple[Annotation, Annotation]]:
    """Pair annotations by recording id, in reference order.

    A reference without a hypothesis is paired with an empty one so the
    recording is scored as fully missed instead of silently dropped.
    """

    by_id = {hyp.recording_id: hyp for hyp in hyps}
    ref_ids = {ref.recording_id for ref in refs}

    for recording_id in sorted(set(by_id) - ref_ids):
        logger.warning("Hypothesis recording {} has no reference; ignored", recording_id)

    pairs: list[tuple[Annotation, Annotation]] = []
    for ref in refs:
        hyp = by_id.get(ref.recording_id)
        if hyp is None:
            logger.warning(
                "No hypothesis for recording {}; scoring it as all missed",
                ref.recording_id,
            )
            hyp = Annotation(ref.recording_id, (), ref.channel)
        pairs.append((ref, hyp))

    return pairs


def score_recording(
    pair: tuple[Annotation, Annotation],
    metric: Metric = Metric.ALL,
    der_cfg: DerConfig = DerConfig(),
    cder_cfg: CderConfig = CderConfig(),
) -> RecordingScore:
    ref, hyp = pair
    der: Optional[DerReport] = None
    cder: Optional[CderReport] = None

    if metric.wants_der:
        try:
            der = compute_der(ref, hyp, der_cfg)
        except UndefinedMetric as e:
            logger.warning("{}", e)
            der = e.report

    if metric.wants_cder:
        try:
            cder = compute_cder(ref, hyp, cder_cfg)
        except UndefinedMetric as e:
            logger.warning("{}", e)
            cder = e.report

    return RecordingScore(ref.recording_id, der, cder)


def score_corpus(
    refs: Sequence[Annotation],
    hyps: Sequence[Annotation],
    metric: Metric = Metric.ALL,
    der_cfg: DerConfig = DerConfig(),
    cder_cfg: CderConfig = CderConfig(),
    workers: int = 1,
) -> CorpusScore:
    """Score every reference recording and reduce to an OVERALL row.

    With ``workers`` > 1 recordings are scored on a process pool; the
    reduction always runs in recording id order.
    """

    pairs = sorted(pair_recordings(refs, hyps), key=lambda pair: pair[0].recording_id)
    score = partial(score_recording, metric=metric, der_cfg=der_cfg, cder_cfg=cder_cfg)

    if workers > 1 and len(pairs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunksize = max(1, len(pairs) // (4 * workers))
            recordings = tuple(pool.map(score, pairs, chunksize=chunksize))
    else:
        recordings = tuple(map(score, pairs))

    overall_der: Optional[DerReport] = None
    overall_cder: Optional[CderReport] = None

    if metric.wants_der and recordings:
        overall_der = aggregate_der([score.der for score in recordings if score.der])

    if metric.wants_cder and recordings:
        try:
            overall_cder = aggregate_cder([score.cder for score in recordings if score.cder])
        except EmptyInput as e:
            logger.warning("{}", e)
            overall_cder = CderReport(0, 0, 0, 0, OVERALL_ID)

    return CorpusScore(recordings, RecordingScore(OVERALL_ID, overall_der, overall_cder))
