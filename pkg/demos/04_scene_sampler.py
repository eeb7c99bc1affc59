#!/usr/bin/env python3
"""Drive the scene-change sampler over a synthetic webcam feed and watch
which frames it promotes: the first frame, real scene changes above the
threshold, and nothing during the debounce window."""

import numpy as np

from vgi.vision import Frame, SamplerState, should_sample

rng = np.random.default_rng(3)


def noisy_scene(base: float, ts: int) -> Frame:
    """A flat scene with a little sensor noise."""
    pixels = np.clip(base + rng.normal(0, 0.01, size=(48, 64)), 0.0, 1.0)
    return Frame(width=64, height=48, pixels=pixels, timestamp_ms=ts)


# A feed that sits on one scene, cuts to a brighter one, flickers briefly,
# and then cuts again.
feed = (
    [(t, 0.20) for t in range(0, 3000, 250)]        # static scene
    + [(t, 0.55) for t in range(3000, 5500, 250)]   # cut to a new scene
    + [(4000, 0.60), (4100, 0.50)]                  # within-debounce jitter
    + [(t, 0.90) for t in range(5500, 7000, 250)]   # second cut
)
feed.sort()

state = SamplerState(threshold=0.08, min_interval_ms=2000)
print(f"threshold={state.threshold}, min_interval={state.min_interval_ms} ms\n")
print(f"{'t (ms)':>8}  {'brightness':>10}  {'delta':>7}  decision")

for ts, base in feed:
    frame = noisy_scene(base, ts)
    sampled, state, sample = should_sample(state, frame)
    if sampled:
        print(f"{ts:>8}  {base:>10.2f}  {sample.delta_score:>7.3f}  SAMPLED ({sample.reason.value})")
    else:
        print(f"{ts:>8}  {base:>10.2f}  {'-':>7}  .")

print(
    "\nRaising the threshold makes individual decisions stricter; the"
    "\ndebounce keeps captions from churning on every flicker."
)
