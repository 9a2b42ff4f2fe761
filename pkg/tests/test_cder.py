from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diarscore.error import InvalidConfig
from diarscore.metrics import (
    CderConfig,
    CderReport,
    EmptyInput,
    MergedUtterance,
    SpeakerMap,
    UndefinedMetric,
    aggregate_cder,
    compute_cder,
    iou,
    match_utterances,
    merge_utterances,
    merged_annotation,
)
from diarscore.timeline import Segment

from .strategies import ann, annotations, relabel, sequential_annotations

ETAS = [i / 10 for i in range(1, 10)]


def utts(speaker, *spans):
    return [MergedUtterance(speaker, Segment(start, end)) for start, end in spans]


def flat(merged):
    return sorted(
        (
            (u.speaker, u.start, u.end, u.source_count)
            for run in merged.values()
            for u in run
        ),
        key=lambda row: (row[1], row[2], row[0]),
    )


def cder_or_report(ref, hyp, cfg=CderConfig()):
    try:
        return compute_cder(ref, hyp, cfg)
    except UndefinedMetric as e:
        return e.report


def test_config_validation():
    assert CderConfig().eta_ratio == Fraction(1, 2)
    assert CderConfig(eta=0.3).eta_ratio == Fraction(3, 10)

    for eta in (0, 1, -0.5, 1.5):
        with pytest.raises(InvalidConfig):
            CderConfig(eta=eta)


def test_merge_interleaved_turns():
    a = ann(
        A=[(0, 1000), (2000, 3000), (6000, 7000), (8000, 9000), (12_000, 13_000)],
        B=[(4000, 5000), (10_000, 11_000)],
        C=[(14_000, 15_000)],
    )

    assert flat(merge_utterances(a)) == [
        ("A", 0, 3000, 2),
        ("B", 4000, 5000, 1),
        ("A", 6000, 9000, 2),
        ("B", 10_000, 11_000, 1),
        ("A", 12_000, 13_000, 1),
        ("C", 14_000, 15_000, 1),
    ]


def test_merge_single_turn():
    assert flat(merge_utterances(ann(A=[(0, 1000)]))) == [("A", 0, 1000, 1)]


def test_merge_blocked_by_other_speaker():
    a = ann(A=[(0, 1000), (3000, 4000)], B=[(500, 2000)])

    assert flat(merge_utterances(a)) == [
        ("A", 0, 1000, 1),
        ("B", 500, 2000, 1),
        ("A", 3000, 4000, 1),
    ]


def test_merge_ignores_touching_speaker():
    a = ann(A=[(0, 1000), (2000, 3000)], B=[(3000, 4000)])

    assert flat(merge_utterances(a))[0] == ("A", 0, 3000, 2)


def test_iou_is_exact():
    assert iou(Segment(6000, 8000), Segment(7500, 8000)) == Fraction(1, 4)
    assert iou(Segment(0, 1000), Segment(2000, 3000)) == 0


def test_match_identical():
    assert match_utterances(utts("A", (0, 1000)), utts("X", (0, 1000))) == [(0, 0)]


def test_match_takes_largest_intersection():
    ref = utts("A", (0, 2000))
    hyp = utts("X", (0, 1000), (900, 2000))

    assert match_utterances(ref, hyp) == [(0, 1)]


def test_match_ties_go_to_earlier_start():
    ref = utts("A", (0, 2000))
    hyp = utts("X", (0, 500), (1500, 2000))

    assert match_utterances(ref, hyp) == [(0, 0)]


def test_match_disjoint():
    assert match_utterances(utts("A", (0, 1000)), utts("X", (5000, 6000))) == [(0, None)]
    assert match_utterances(utts("A", (0, 1000)), []) == [(0, None)]


def test_match_is_one_to_one():
    ref = utts("A", (0, 1000), (1000, 2000))
    hyp = utts("X", (500, 1500))

    assert match_utterances(ref, hyp) == [(0, 0), (1, None)]


def test_identity():
    ref = ann(A=[(0, 1000), (2000, 3000)], B=[(1000, 2000)])

    report = compute_cder(ref, ref)

    assert report.cder == 0
    assert report.n_total == 3


def test_one_third():
    ref = ann(A=[(0, 2000), (6000, 8000)], B=[(3000, 5000)])
    hyp = ann(X=[(0, 2000), (7500, 8000)], Y=[(3000, 5000)])

    report = compute_cder(ref, hyp, CderConfig(eta=0.5))

    assert report == CderReport(0, 1, 0, 3, "rec")
    assert report.n_error == 1
    assert report.cder == pytest.approx(1 / 3)


def test_empty_hypothesis_is_undefined():
    with pytest.raises(UndefinedMetric) as info:
        compute_cder(ann(A=[(0, 2000)]), ann())

    report = info.value.report
    assert report.errors_unmatched_ref_speaker == 1
    assert report.n_error == 1
    assert report.n_total == 0
    assert not report.defined


def test_unmatched_hypothesis_utterances_count():
    ref = ann(A=[(0, 1000)])
    hyp = ann(X=[(0, 1000), (3000, 4000)], Y=[(2000, 2500)])

    report = compute_cder(ref, hyp)

    assert report == CderReport(0, 0, 1, 1, "rec")
    assert report.cder == 1.0


def test_unmatched_hypothesis_speakers_are_optional():
    ref = ann(A=[(0, 1000)])
    hyp = ann(X=[(0, 1000)], Y=[(5000, 6000), (7000, 8000)])

    assert compute_cder(ref, hyp).n_error == 0

    counted = compute_cder(ref, hyp, CderConfig(count_unmatched_hyp_speakers=True))
    assert counted.errors_unmatched_hyp_utterance == 1
    assert counted.cder == 1.0


def test_cder_may_exceed_one():
    ref = ann(A=[(0, 1000)], B=[(1000, 2000)], C=[(10_000, 11_000)])
    hyp = ann(X=[(0, 1000)], Y=[(1000, 2000)])

    report = compute_cder(ref, hyp, CderConfig(eta=0.5))

    assert report.errors_unmatched_ref_speaker == 1
    assert report.n_total == 2
    assert report.cder == 0.5

    split = ann(X=[(0, 300), (600, 1000)], Y=[(300, 600), (1000, 2000)])
    assert compute_cder(ann(A=[(0, 1000)], B=[(1000, 2000)]), split).cder > 1


def test_aggregate():
    first = CderReport(1, 0, 0, 4, "a")
    second = CderReport(0, 0, 0, 4, "b")

    assert aggregate_cder([first]).cder == first.cder

    total = aggregate_cder([first, second])
    assert total.cder == pytest.approx(0.125)
    assert total.macro_cder == pytest.approx(0.125)
    assert total.recording_id == "OVERALL"


def test_aggregate_skips_undefined(caplog):
    total = aggregate_cder([CderReport(1, 0, 0, 0, "empty"), CderReport(0, 1, 0, 2, "b")])

    assert (total.n_error, total.n_total) == (1, 2)
    assert "Skipping empty" in caplog.text


def test_aggregate_without_defined_reports():
    with pytest.raises(EmptyInput):
        aggregate_cder([])
    with pytest.raises(EmptyInput):
        aggregate_cder([CderReport(1, 0, 0, 0, "empty")])


@given(annotations(), st.sampled_from(ETAS))
@settings(max_examples=100, derandomize=True, deadline=None)
def test_identity_scores_zero(ref, eta):
    assert compute_cder(ref, ref, CderConfig(eta=eta)).cder == 0


@pytest.mark.parametrize("labels", [("X", "Y"), ("Z", "Y")])
def test_tied_speaker_maps_keep_the_lowest_cder(labels):
    ref = ann(A=[(0, 2000)])
    first, second = labels
    hyp = ann(**{first: [(0, 1000), (5000, 6000)], second: [(1000, 2000)]})

    report = compute_cder(ref, hyp)

    assert report.cder == 0
    assert (report.n_error, report.n_total) == (0, 1)


def test_explicit_speaker_map_is_used_as_given():
    ref = ann(A=[(0, 2000)])
    hyp = ann(X=[(0, 1000), (5000, 6000)], Y=[(1000, 2000)])
    speaker_map = SpeakerMap(pairs=(("A", "X"),), unmatched_ref=(), unmatched_hyp=("Y",))

    report = compute_cder(ref, hyp, speaker_map=speaker_map)

    assert report.errors_unmatched_hyp_utterance == 1
    assert report.cder == 1


@given(annotations(), annotations(), st.permutations(("W", "X", "Y", "Z")))
@settings(max_examples=100, derandomize=True, deadline=None)
def test_invariant_under_relabeling(ref, hyp, labels):
    renamed = relabel(hyp, dict(zip(hyp.speakers, labels)))

    assert cder_or_report(ref, renamed) == cder_or_report(ref, hyp)


@given(annotations(), annotations())
@settings(max_examples=100, derandomize=True, deadline=None)
def test_errors_non_decreasing_in_eta(ref, hyp):
    errors = [cder_or_report(ref, hyp, CderConfig(eta=eta)).n_error for eta in ETAS]

    assert errors == sorted(errors)


@given(annotations())
@settings(max_examples=100, derandomize=True, deadline=None)
def test_merge_is_idempotent(a):
    merged = merge_utterances(a)
    again = merge_utterances(merged_annotation(a.recording_id, merged))

    assert {
        speaker: [u.segment for u in run] for speaker, run in again.items()
    } == {speaker: [u.segment for u in run] for speaker, run in merged.items()}


@given(sequential_annotations())
@settings(max_examples=100, derandomize=True, deadline=None)
def test_merge_counts_same_speaker_runs(a):
    runs: dict[str, int] = {}
    previous = None
    for turn in a.turns:
        if turn.speaker != previous:
            runs[turn.speaker] = runs.get(turn.speaker, 0) + 1
        previous = turn.speaker

    merged = merge_utterances(a)

    assert {speaker: len(run) for speaker, run in merged.items()} == runs
    assert sum(u.source_count for run in merged.values() for u in run) == len(a)


@given(annotations())
@settings(max_examples=100, derandomize=True, deadline=None)
def test_merged_utterances_span_their_turns(a):
    for speaker, run in merge_utterances(a).items():
        segments = list(a.by_speaker[speaker])
        index = 0
        for utterance in run:
            sources = segments[index : index + utterance.source_count]
            index += utterance.source_count

            assert utterance.start == sources[0].start
            assert utterance.end == sources[-1].end
            assert not a.activity(speaker).active(utterance.start, utterance.end) or (
                utterance.source_count == 1
            )

        assert index == len(segments)
