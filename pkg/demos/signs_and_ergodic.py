"""Edge-sign means and spatial ergodic averages.

Two different laws of large numbers at work.  Across independent
configurations, the first horizontal edge sign of the origin path
averages to 2p-1 and the first vertical one to 2q-1.  Within a single
configuration, averaging an observable over even translations of the
whole field converges to its ensemble expectation; the vertical edge at
the origin is open with probability 1-q, which a lone sample reproduces
to a couple of decimal places.
"""

from cornerperc import (
    ExperimentConfig,
    Observable,
    Params,
    ergodic_average,
    sign_mean_experiment,
)

print("sign means over 5000 independent configurations")
print("  (p, q)      mean sgn(E0)  target    mean sgn(E1)  target")
for p, q in [(0.7, 0.6), (0.3, 0.8), (0.5, 0.5)]:
    ec = ExperimentConfig(params=Params(p, q), seed_base=0, trials=5000)
    d = sign_mean_experiment(ec).details
    print(
        f"  ({p}, {q})   {d['mean_sign_e0']:+.4f}       {2*p-1:+.2f}     "
        f"{d['mean_sign_e1']:+.4f}       {2*q-1:+.2f}"
    )

print()
print("spatial ergodic averages over one configuration (window 300)")
for obs, label in [
    (Observable.VERTICAL_EDGE_ORIGIN, "vertical edge at origin open"),
    (Observable.HORIZONTAL_EDGE_ORIGIN, "horizontal edge at origin open"),
    (Observable.FACE_HEIGHT_POSITIVE, "up-right face height positive"),
]:
    ec = ExperimentConfig(params=Params(0.4, 0.7), seed_base=0, window=300)
    r = ergodic_average(ec, obs)
    print(
        f"  {label:32s} average {r.estimate:.4f}   "
        f"expected {r.details['expected']:.4f}   error {r.details['abs_error']:.4f}"
    )
