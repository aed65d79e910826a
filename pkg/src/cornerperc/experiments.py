"""Monte Carlo estimators, censuses and ergodic averages with full provenance.

Every estimator is a pure function of an :class:`ExperimentConfig`: trial t
runs on the configuration seeded ``seed_base + t``, aggregation is
order-independent, and results echo the config, so a result file is enough
to reproduce the run bit for bit.  Proportion estimates carry the normal
95% half-width 1.96 * sqrt(phat (1 - phat) / trials).

Setting the environment variable ``CORNER_PERC_THREADS`` above 1 spreads
trials over worker processes; estimates do not depend on the worker count.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from functools import partial

import numpy as np

from .fields import MASK64, Configuration, GeneratorKind, GeneratorSpec, MarkovSpec, Params
from .heights import HeightOracle
from .lattice import (
    diamond_points,
    horizontal_edge_open,
    translate_fields,
    vertical_edge_open,
)
from .tracer import (
    TraceStatus,
    cone_spec,
    direction_estimate,
    level,
    sign_sequence,
    slope_formula,
    trace,
)


class ModelInvariantError(AssertionError):
    """A structural law of the model failed; indicates a bug, not bad data."""


@dataclass(frozen=True)
class ExperimentConfig:
    params: Params
    gen: GeneratorSpec = field(default_factory=GeneratorSpec.iid)
    seed_base: int = 0
    trials: int = 100
    escape_radius: int = 1000
    max_steps: int = 1_000_000
    window: int = 100
    epsilon: float = 0.2
    output_path: str | None = None
    fmt: str = "json"

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.window < 1:
            raise ValueError("window must be >= 1")
        if self.epsilon <= 0:
            raise ValueError("epsilon must be > 0")
        if self.escape_radius < 1 or self.max_steps < 1:
            raise ValueError("escape_radius and max_steps must be >= 1")
        if self.fmt not in ("json", "csv"):
            raise ValueError("format must be json or csv")

    def trial_seed(self, t: int) -> int:
        return (self.seed_base + t) & MASK64

    def configuration(self, t: int = 0) -> Configuration:
        return Configuration(self.trial_seed(t), self.params, self.gen)

    def to_dict(self) -> dict:
        gen: dict = {"kind": self.gen.kind.value}
        if self.gen.kind is GeneratorKind.MARKOV:
            gen["vertical"] = {
                "flip_up": self.gen.vertical.flip_up,
                "flip_down": self.gen.vertical.flip_down,
            }
            gen["horizontal"] = {
                "flip_up": self.gen.horizontal.flip_up,
                "flip_down": self.gen.horizontal.flip_down,
            }
        return {
            "p": self.params.p,
            "q": self.params.q,
            "gen": gen,
            "seed_base": self.seed_base,
            "trials": self.trials,
            "escape_radius": self.escape_radius,
            "max_steps": self.max_steps,
            "window": self.window,
            "epsilon": self.epsilon,
            "output_path": self.output_path,
            "format": self.fmt,
        }

    @staticmethod
    def from_dict(d: dict) -> "ExperimentConfig":
        g = d["gen"]
        if g["kind"] == GeneratorKind.MARKOV.value:
            gen = GeneratorSpec(
                GeneratorKind.MARKOV,
                vertical=MarkovSpec(**g["vertical"]),
                horizontal=MarkovSpec(**g["horizontal"]),
            )
        else:
            gen = GeneratorSpec.iid()
        return ExperimentConfig(
            params=Params(d["p"], d["q"]),
            gen=gen,
            seed_base=d["seed_base"],
            trials=d["trials"],
            escape_radius=d["escape_radius"],
            max_steps=d["max_steps"],
            window=d["window"],
            epsilon=d["epsilon"],
            output_path=d.get("output_path"),
            fmt=d.get("format", "json"),
        )


@dataclass
class ExperimentResult:
    estimator: str
    estimate: float | None
    ci95: float | None
    trials: int
    config: ExperimentConfig
    records: list | None = None
    details: dict = field(default_factory=dict)

    def to_dict(self, include_records: bool = True) -> dict:
        d = {
            "estimator": self.estimator,
            "estimate": self.estimate,
            "ci95": self.ci95,
            "trials": self.trials,
            "config": self.config.to_dict(),
        }
        if self.details:
            d["details"] = self.details
        if include_records and self.records is not None:
            d["records"] = self.records
        return d

    def to_json(self, include_records: bool = True) -> str:
        return json.dumps(self.to_dict(include_records), indent=2, allow_nan=False)

    def to_csv(self) -> str:
        """Header row, one row per trial record, then a '#summary' row with the JSON document."""
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        if self.records:
            cols = sorted(self.records[0].keys())
            writer.writerow(cols)
            for rec in self.records:
                writer.writerow([rec[c] for c in cols])
        else:
            writer.writerow(["trial", "value"])
        summary = json.dumps(self.to_dict(include_records=False), allow_nan=False)
        writer.writerow(["#summary", summary])
        return buf.getvalue()


def proportion_ci95(phat: float, trials: int) -> float:
    return 1.96 * math.sqrt(phat * (1.0 - phat) / trials)


def sign_mean_ci95(mean: float, trials: int) -> float:
    # a +-1 mean is an affine image of a proportion: mean = 2 phat - 1
    phat = (mean + 1.0) / 2.0
    return 2.0 * proportion_ci95(phat, trials)


def write_result(result: ExperimentResult, path: str | None = None) -> bytes:
    """Serialize per the config's format; write to path (or config output_path) if set."""
    fmt = result.config.fmt
    data = (result.to_csv() if fmt == "csv" else result.to_json()).encode()
    target = path or result.config.output_path
    if target:
        with open(target, "wb") as fh:
            fh.write(data)
    return data


def read_result(text: str, fmt: str = "json") -> dict:
    """Parse a serialized result back into its dict form (round-trip helper)."""
    if fmt == "json":
        return json.loads(text)
    rows = list(csv.reader(io.StringIO(text)))
    for row in rows:
        if row and row[0] == "#summary":
            return json.loads(row[1])
    raise ValueError("no #summary row in CSV result")


def _worker_count() -> int:
    raw = os.environ.get("CORNER_PERC_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _map_trials(fn, ec: ExperimentConfig, n: int | None = None) -> list:
    """fn(ec, t) for t in range(n), serial or across worker processes."""
    n = ec.trials if n is None else n
    workers = _worker_count()
    if workers == 1 or n < 4:
        return [fn(ec, t) for t in range(n)]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(partial(fn, ec), range(n), chunksize=max(1, n // (8 * workers))))


# -- escape probability -------------------------------------------------------


def _escape_trial(ec: ExperimentConfig, t: int) -> dict:
    tr = trace(ec.configuration(t), (0, 0), ec.max_steps, ec.escape_radius)
    return {
        "trial": t,
        "forward": tr.forward_status.value,
        "backward": tr.backward_status.value,
        "cycle_length": tr.cycle_length if tr.cycle_length is not None else "",
    }


def escape_probability(ec: ExperimentConfig, side: str = "both") -> ExperimentResult:
    """Fraction of independent origin traces that escape the radius.

    The default requires the escape on both the forward and backward run,
    the finite-window proxy for an origin component that never closes.
    """
    if side not in ("both", "forward", "backward"):
        raise ValueError("side must be both, forward or backward")
    records = _map_trials(_escape_trial, ec)
    esc = TraceStatus.ESCAPED.value
    if side == "both":
        hits = sum(1 for r in records if r["forward"] == esc and r["backward"] == esc)
    else:
        hits = sum(1 for r in records if r[side] == esc)
    phat = hits / ec.trials
    return ExperimentResult(
        estimator="escape_probability",
        estimate=phat,
        ci95=proportion_ci95(phat, ec.trials),
        trials=ec.trials,
        config=ec,
        records=records,
        details={"escaped": hits, "side": side},
    )


# -- slope ---------------------------------------------------------------------


def _slope_trial(ec: ExperimentConfig, t: int) -> dict:
    tr = trace(ec.configuration(t), (0, 0), ec.max_steps, ec.escape_radius)
    rec: dict = {"trial": t, "escaped": tr.escaped("both")}
    if rec["escaped"]:
        d = direction_estimate(tr)
        rec["slope"] = d.slope
        rec["ip_forward_backward"] = (
            d.unit_forward[0] * d.unit_backward[0] + d.unit_forward[1] * d.unit_backward[1]
        )
        spec = cone_spec(ec.params.p, ec.params.q, 1.0)
        ux, uy = spec.ux, spec.uy
        dxf = float(tr.forward[-1, 0]) - tr.start[0]
        dyf = float(tr.forward[-1, 1]) - tr.start[1]
        r = math.hypot(dxf, dyf)
        rec["drift_alignment"] = abs(dxf * ux + dyf * uy) / r if r else 0.0
    return rec


def slope_experiment(ec: ExperimentConfig) -> ExperimentResult:
    """How closely escaped origin traces match the asymptotic slope.

    For p != 1/2 the estimate is the fraction of escaped traces whose
    empirical slope is within epsilon of (2q-1)/(1-2p).  For p = 1/2 the
    slope is vertical, so the estimate is the fraction whose unit direction
    is epsilon-orthogonal to the drift vector.  A run with no escapers is
    reported as such, not an error.
    """
    p, q = ec.params.p, ec.params.q
    target = slope_formula(p, q)
    records = _map_trials(_slope_trial, ec)
    escaped = [r for r in records if r["escaped"]]
    if not escaped:
        return ExperimentResult(
            estimator="slope_experiment",
            estimate=None,
            ci95=None,
            trials=ec.trials,
            config=ec,
            records=records,
            details={"note": "no escapers", "target_slope": _json_number(target)},
        )
    if math.isinf(target):
        hits = sum(1 for r in escaped if r["drift_alignment"] <= ec.epsilon)
        deviations = [r["drift_alignment"] for r in escaped]
    else:
        hits = sum(1 for r in escaped if abs(r["slope"] - target) <= ec.epsilon)
        deviations = [abs(r["slope"] - target) for r in escaped]
    phat = hits / len(escaped)
    for r in records:
        if "slope" in r:
            r["slope"] = _json_number(r["slope"])
    return ExperimentResult(
        estimator="slope_experiment",
        estimate=phat,
        ci95=proportion_ci95(phat, len(escaped)),
        trials=ec.trials,
        config=ec,
        records=records,
        details={
            "escaped": len(escaped),
            "target_slope": _json_number(target),
            "tolerance": ec.epsilon,
            "max_deviation": _json_number(max(deviations)),
            "mean_ip_forward_backward": sum(r["ip_forward_backward"] for r in escaped)
            / len(escaped),
        },
    )


def _json_number(x: float):
    return "inf" if math.isinf(x) else x


# -- sign means ----------------------------------------------------------------


def _sign_trial(ec: ExperimentConfig, t: int) -> dict:
    # E_0, E_1 and the stationarity shadow E_4 need six leading vertices;
    # cycles wrap periodically so a short follow always suffices
    tr = trace(ec.configuration(t), (0, 0), max_steps=8, escape_radius=10**9)
    s = sign_sequence(tr, 5)
    return {"trial": t, "sign_e0": s[0], "sign_e1": s[1], "sign_e4": s[4]}


def sign_mean_experiment(ec: ExperimentConfig) -> ExperimentResult:
    """Means of the first horizontal/vertical edge signs across configurations.

    The horizontal-edge sign has mean 2p-1 and the vertical one 2q-1; the
    sign of edge 4 repeats the edge-0 law (stationarity), which the result
    exposes for comparison.
    """
    records = _map_trials(_sign_trial, ec)
    n = ec.trials
    m0 = sum(r["sign_e0"] for r in records) / n
    m1 = sum(r["sign_e1"] for r in records) / n
    m4 = sum(r["sign_e4"] for r in records) / n
    if ec.gen.kind is GeneratorKind.IID:
        expected_e0 = 2 * ec.params.p - 1
        expected_e1 = 2 * ec.params.q - 1
    else:
        expected_e0 = 2 * ec.gen.horizontal.stationary_up - 1
        expected_e1 = 2 * ec.gen.vertical.stationary_up - 1
    return ExperimentResult(
        estimator="sign_mean_experiment",
        estimate=m0,
        ci95=sign_mean_ci95(m0, n),
        trials=n,
        config=ec,
        records=records,
        details={
            "mean_sign_e0": m0,
            "ci95_e0": sign_mean_ci95(m0, n),
            "mean_sign_e1": m1,
            "ci95_e1": sign_mean_ci95(m1, n),
            "mean_sign_e4": m4,
            "ci95_e4": sign_mean_ci95(m4, n),
            "expected_e0": expected_e0,
            "expected_e1": expected_e1,
        },
    )


# -- censuses --------------------------------------------------------------------


def loop_census(
    ec: ExperimentConfig,
    stride: int | None = None,
    starts: list[tuple[int, int]] | None = None,
    cfg=None,
) -> ExperimentResult:
    """Histogram of cycle lengths over a sparse grid of starts in the window.

    Components are deduplicated by their lexicographically smallest visited
    vertex.  Every observed length must be congruent to 4 mod 8; a
    violation raises, since it cannot happen in a correct implementation.
    ``starts`` overrides the grid, ``cfg`` the configuration (for pinned
    fields).
    """
    n = ec.window
    if stride is None:
        stride = max(1, (2 * n + 1) // 32)
    if cfg is None:
        cfg = ec.configuration(0)
    seen: dict[tuple[int, int], int] = {}
    statuses = {"cycle": 0, "escaped": 0, "truncated": 0}
    if starts is None:
        starts = [(x, y) for x in range(-n, n + 1, stride) for y in range(-n, n + 1, stride)]
    for start in starts:
        tr = trace(cfg, start, ec.max_steps, ec.escape_radius)
        statuses[tr.status.value] += 1
        if tr.cycle_length is None:
            continue
        cyc = tr.forward[:-1]
        key_idx = np.lexsort((cyc[:, 1], cyc[:, 0]))[0]
        key = (int(cyc[key_idx, 0]), int(cyc[key_idx, 1]))
        if key not in seen:
            if tr.cycle_length % 8 != 4:
                raise ModelInvariantError(
                    f"cycle length {tr.cycle_length} not congruent to 4 mod 8 at {start}"
                )
            seen[key] = tr.cycle_length
    hist: dict[int, int] = {}
    for length in seen.values():
        hist[length] = hist.get(length, 0) + 1
    return ExperimentResult(
        estimator="loop_census",
        estimate=float(len(seen)),
        ci95=None,
        trials=len(starts),
        config=ec,
        records=[{"length": k, "count": v} for k, v in sorted(hist.items())],
        details={
            "histogram": {str(k): v for k, v in sorted(hist.items())},
            "distinct_cycles": len(seen),
            "statuses": statuses,
            "stride": stride,
        },
    )


def level_census(ec: ExperimentConfig, cfg=None) -> ExperimentResult:
    """Levels of the components crossing the window boundary (exploratory).

    Walks every component through a boundary vertex of the window, keeps
    those with vertices strictly inside and strictly outside, and tallies
    the multiplicity of each level.  Duplicate levels and gaps in the
    observed range are reported, never asserted against.
    """
    if ec.params.p == 0.5 and ec.params.q == 0.5:
        raise ValueError("level census targets the regime with infinite paths: (p, q) != (1/2, 1/2)")
    n = ec.window
    if cfg is None:
        cfg = ec.configuration(0)
    oracle = HeightOracle(cfg)
    ring = [(x, y) for x in range(-n, n + 1) for y in range(-n, n + 1) if max(abs(x), abs(y)) == n]
    radius = max(ec.escape_radius, 2 * n)
    seen: dict[tuple[int, int], int] = {}
    for start in ring:
        tr = trace(cfg, start, ec.max_steps, radius)
        verts = np.vstack((tr.forward, tr.backward))
        sup = np.maximum(np.abs(verts[:, 0]), np.abs(verts[:, 1]))
        if not (np.any(sup < n) and np.any(sup > n)):
            continue
        inside = verts[sup <= n]
        key_idx = np.lexsort((inside[:, 1], inside[:, 0]))[0]
        key = (int(inside[key_idx, 0]), int(inside[key_idx, 1]))
        if key not in seen:
            seen[key] = level(oracle, tr)
    multiplicity: dict[int, int] = {}
    for lv in seen.values():
        multiplicity[lv] = multiplicity.get(lv, 0) + 1
    levels = sorted(multiplicity)
    gaps = [lv for lv in range(levels[0], levels[-1] + 1) if lv not in multiplicity] if levels else []
    duplicates = {lv: c for lv, c in multiplicity.items() if c > 1}
    return ExperimentResult(
        estimator="level_census",
        estimate=float(len(seen)),
        ci95=None,
        trials=len(ring),
        config=ec,
        records=[{"level": lv, "multiplicity": c} for lv, c in sorted(multiplicity.items())],
        details={
            "levels": {str(k): v for k, v in sorted(multiplicity.items())},
            "duplicates": {str(k): v for k, v in sorted(duplicates.items())},
            "gaps": gaps,
            "components": len(seen),
        },
    )


# -- ergodic averages ------------------------------------------------------------


class Observable(Enum):
    VERTICAL_EDGE_ORIGIN = "vertical_edge_open_at_origin"
    HORIZONTAL_EDGE_ORIGIN = "horizontal_edge_open_at_origin"
    FACE_HEIGHT_POSITIVE = "face_height_positive"


def _observe(obs: Observable, view) -> int:
    if obs is Observable.VERTICAL_EDGE_ORIGIN:
        return int(vertical_edge_open(view, 0, 0))
    if obs is Observable.HORIZONTAL_EDGE_ORIGIN:
        return int(horizontal_edge_open(view, 0, 0))
    # height of the face diagonally up-right of the reference face; the
    # reference face itself is pinned at height zero so it carries no signal
    return int(HeightOracle(view).height(1, 1) > 0)


def _expected_value(obs: Observable, ec: ExperimentConfig) -> float | None:
    if ec.gen.kind is not GeneratorKind.IID:
        return None
    p, q = ec.params.p, ec.params.q
    if obs is Observable.VERTICAL_EDGE_ORIGIN:
        return 1.0 - q
    if obs is Observable.HORIZONTAL_EDGE_ORIGIN:
        return 1.0 - p
    return p * q


def ergodic_average(ec: ExperimentConfig, observable: Observable) -> ExperimentResult:
    """Spatial average of an observable over even translations of one sample.

    Averages f over the diamond of even translations covering the window
    and compares with the closed-form expectation when one is known: the
    spatial mean of a single configuration converges to the ensemble mean.
    """
    cfg = ec.configuration(0)
    points = diamond_points(ec.window)
    total = 0
    for x in points:
        total += _observe(observable, translate_fields(cfg, x))
    avg = total / len(points)
    expected = _expected_value(observable, ec)
    details = {"observable": observable.value, "points": len(points)}
    if expected is not None:
        details["expected"] = expected
        details["abs_error"] = abs(avg - expected)
    return ExperimentResult(
        estimator="ergodic_average",
        estimate=avg,
        ci95=proportion_ci95(avg, len(points)),
        trials=len(points),
        config=ec,
        records=None,
        details=details,
    )


# -- sign time averages -----------------------------------------------------------


def sign_time_average(ec: ExperimentConfig, count: int = 100_000) -> ExperimentResult:
    """Running mean of the horizontal-edge signs along escaped paths (exploratory).

    For each seed whose origin path is open and wanders past the configured
    escape radius, reports the average of the first ``count`` horizontal
    edge signs.  The limiting value is conjectural, so only the observed
    averages and their dispersion are reported.
    """
    if ec.params.p == 0.5 and ec.params.q == 0.5:
        raise ValueError("sign time averages target (p, q) != (1/2, 1/2)")
    records = []
    finals = []
    for t in range(ec.trials):
        cfg = ec.configuration(t)
        tr = trace(cfg, (0, 0), max_steps=2 * count + 2, escape_radius=2 * count + 2)
        rec: dict = {"trial": t, "status": tr.status.value}
        if tr.cycle_length is None and tr.max_displacement() > ec.escape_radius:
            signs = sign_sequence(tr, 2 * count)
            horiz = signs[0::2][:count]
            avg = sum(horiz) / len(horiz)
            rec["qualified"] = True
            rec["running_average"] = avg
            rec["signs_used"] = len(horiz)
            finals.append(avg)
        else:
            rec["qualified"] = False
        records.append(rec)
    if finals:
        mean = sum(finals) / len(finals)
        spread = float(np.std(np.array(finals))) if len(finals) > 1 else 0.0
    else:
        mean, spread = None, None
    return ExperimentResult(
        estimator="sign_time_average",
        estimate=mean,
        ci95=None,
        trials=ec.trials,
        config=ec,
        records=records,
        details={
            "qualified": len(finals),
            "dispersion": spread,
            "count": count,
            "note": "exploratory: limiting behavior is conjectural",
        },
    )
