from __future__ import annotations

from math import log

import numpy as np

from diarscore.timeline import Annotation, Segment, Turn, to_ms

from .profiles import DialogProfile


def generate_dialog(
    profile: DialogProfile = DialogProfile(), recording_id: str = "sim"
) -> Annotation:
    """Synthesize a two-party conversation.

    Segment lengths are log-normal with the profile's mean, clipped to its
    range. Overlap only happens at a change of speaker.
    """

    rng = np.random.default_rng(profile.rng_seed)

    low_s, high_s = profile.segment_s_range
    sigma = profile.duration_sigma
    mu = log(profile.mean_segment_s) - sigma**2 / 2
    total_ms = to_ms(profile.duration_min * 60)

    first, second = profile.speakers
    last_end = {first: 0, second: 0}
    turns: list[Turn] = []
    speaker = first
    cursor = 0

    while True:
        # Fixed number of draws per segment so every branch consumes the same stream.
        length_s, switch, gap_s, overlaps, overlap_frac = (
            rng.lognormal(mu, sigma),
            rng.random(),
            rng.exponential(profile.mean_gap_s) if profile.mean_gap_s else 0.0,
            rng.random(),
            rng.random(),
        )

        length = max(to_ms(float(np.clip(length_s, low_s, high_s))), 1)
        previous = turns[-1] if turns else None

        if previous is not None and switch < profile.turn_taking_rate:
            speaker = second if speaker == first else first

        start = cursor + to_ms(float(gap_s))
        if (
            previous is not None
            and previous.speaker != speaker
            and overlaps < profile.overlap_prob
        ):
            overlap = int(overlap_frac * previous.segment.duration / 2)
            start = max(last_end[speaker], cursor - overlap)

        end = start + length
        if end > total_ms:
            break

        turns.append(Turn(speaker, Segment(start, end)))
        last_end[speaker] = end
        cursor = max(cursor, end)

    return Annotation(recording_id, turns)
