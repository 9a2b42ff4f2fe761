from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib.resources import files
from typing import Any, Callable, Iterable, Optional

from diarscore.metrics import (
    CderConfig,
    DerConfig,
    DerReport,
    UndefinedMetric,
    compute_cder,
    compute_der,
    merge_utterances,
    pair_recordings,
)
from diarscore.oracle import grid_der, matching_divergences
from diarscore.rttm import parse_rttm
from diarscore.timeline import Annotation

PROVENANCES = ("PAPER", "TRIVIAL", "DERIVED")
DER_FIELDS = ("miss_ms", "fa_ms", "error_ms", "total_ms")
CDER_FIELDS = (
    "errors_unmatched_ref_speaker",
    "errors_iou_below_eta",
    "errors_unmatched_hyp_utterance",
    "n_total",
)

DerFunction = Callable[[Annotation, Annotation, DerConfig], DerReport]


@dataclass(frozen=True)
class Fixture:
    name: str
    ref_rttm: bytes
    hyp_rttm: bytes
    expected: dict[str, Any]

    @property
    def provenance(self) -> str:
        return self.expected["provenance"]


@dataclass(frozen=True)
class FixtureResult:
    name: str
    provenance: str
    failures: tuple[str, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return not self.failures


def load_fixtures() -> list[Fixture]:
    """The golden fixtures bundled with the package, sorted by name."""

    root = files(__package__) / "data"
    fixtures: list[Fixture] = []

    for folder in sorted(root.iterdir(), key=lambda entry: entry.name):
        if not folder.is_dir():
            continue

        fixtures.append(
            Fixture(
                name=folder.name,
                ref_rttm=(folder / "ref.rttm").read_bytes(),
                hyp_rttm=(folder / "hyp.rttm").read_bytes(),
                expected=json.loads((folder / "expected.json").read_text("utf-8")),
            )
        )

    return fixtures


def _diff(
    label: str, report: Any, expected: dict[str, int], names: Iterable[str]
) -> list[str]:
    return [
        f"{label}.{name}: expected {expected[name]}, got {getattr(report, name)}"
        for name in names
        if getattr(report, name) != expected[name]
    ]


def _der(
    ref: Annotation, hyp: Annotation, cfg: DerConfig, compute: DerFunction
) -> DerReport:
    try:
        return compute(ref, hyp, cfg)
    except UndefinedMetric as e:
        return e.report


def verify_fixture(fixture: Fixture) -> FixtureResult:
    """Recompute one fixture through the parser, both metrics and the oracles."""

    expected = fixture.expected
    failures: list[str] = []

    if fixture.provenance not in PROVENANCES:
        failures.append(f"unknown provenance {fixture.provenance!r}")

    try:
        refs = parse_rttm(fixture.ref_rttm, f"{fixture.name}/ref.rttm")
        hyps = parse_rttm(fixture.hyp_rttm, f"{fixture.name}/hyp.rttm")
        if len(refs) != 1:
            raise ValueError(f"expected one reference recording, got {len(refs)}")
        ((ref, hyp),) = pair_recordings(refs, hyps)

        der_cfg = DerConfig(collar_s=expected["collar_s"])
        cder_cfg = CderConfig(eta=expected["eta"])

        failures += _diff(
            "der", _der(ref, hyp, der_cfg, compute_der), expected["der"], DER_FIELDS
        )
        failures += _diff(
            "grid_der", _der(ref, hyp, der_cfg, grid_der), expected["der"], DER_FIELDS
        )

        try:
            cder = compute_cder(ref, hyp, cder_cfg)
        except UndefinedMetric as e:
            cder = e.report
        failures += _diff("cder", cder, expected["cder"], CDER_FIELDS)

        failures += [
            f"greedy matching lost {d.exhaustive_total - d.greedy_total} ms"
            f" for {d.ref_speaker}/{d.hyp_speaker}"
            for d in matching_divergences(ref, hyp)
        ]

        if "merged" in expected:
            merged = sorted(
                (
                    [u.speaker, u.start, u.end, u.source_count]
                    for utterances in merge_utterances(ref).values()
                    for u in utterances
                ),
                key=lambda row: (row[1], row[2], row[0]),
            )
            if merged != expected["merged"]:
                failures.append(f"merged: expected {expected['merged']}, got {merged}")
    except Exception as e:
        failures.append(f"raised {type(e).__name__}: {e}")

    return FixtureResult(fixture.name, fixture.provenance, tuple(failures))


def verify_fixtures(fixtures: Optional[Iterable[Fixture]] = None) -> list[FixtureResult]:
    return [verify_fixture(fixture) for fixture in (fixtures or load_fixtures())]
