"""Cycle lengths at the symmetric point (p = q = 1/2).

Here every component is a finite cycle (in the infinite-lattice limit),
and cycle lengths obey a striking arithmetic law: every length is
congruent to 4 modulo 8, so 4, 12, 20, 28, ... appear but never 8, 16
or 24.  The census traces a grid of starting points, deduplicates the
components, and histograms their lengths.
"""

from cornerperc import ExperimentConfig, Params, loop_census

ec = ExperimentConfig(
    params=Params(0.5, 0.5),
    seed_base=0,
    window=150,
    escape_radius=5000,
    max_steps=500_000,
)
result = loop_census(ec)

hist = {int(k): v for k, v in result.details["histogram"].items()}
total = sum(hist.values())
print(f"{result.details['distinct_cycles']} distinct cycles from {result.trials} starts")
print(f"trace outcomes: {result.details['statuses']}")
print()
print("length  count  share   (all lengths are 4 mod 8)")
for length in sorted(hist)[:15]:
    bar = "#" * max(1, round(60 * hist[length] / total))
    print(f"{length:6d}  {hist[length]:5d}  {hist[length]/total:6.1%}  {bar}")
longest = max(hist)
print(f"... up to length {longest} (mod 8 check: {longest % 8 == 4})")
