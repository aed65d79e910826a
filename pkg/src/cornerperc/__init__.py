"""Corner percolation laboratory.

Deterministic, seed-reproducible simulation of corner percolation with
preferential directions: every vertex of the grid keeps exactly one open
horizontal and one open vertical edge, driven by two random +-1 line
fields.  The package builds configurations lazily over the whole infinite
lattice, traces components, computes face heights, and runs Monte Carlo
experiments for the model's known laws (escape probabilities, asymptotic
slope, edge-sign means, cycle-length arithmetic).
"""

from .fields import (
    Axis,
    Configuration,
    ExplicitFields,
    GeneratorKind,
    GeneratorSpec,
    MarkovSpec,
    Params,
    mix64,
    sign_threshold,
    zigzag,
)
from .heights import HeightOracle, ceil_half, crossing_height, face_is_black
from .lattice import (
    Parity,
    TranslatedFields,
    diamond_map,
    diamond_points,
    degree_profile,
    edge_between,
    edge_open,
    horizontal_edge_open,
    open_edges_in_window,
    open_neighbors,
    parity,
    reflect_edges_x,
    translate_fields,
    vertical_edge_open,
)
from .tracer import (
    ConeSpec,
    DirectionEstimate,
    Trace,
    TraceStatus,
    cone_spec,
    cone_violations,
    direction_estimate,
    in_cone,
    level,
    sign_sequence,
    slope_formula,
    trace,
)
from .experiments import (
    ExperimentConfig,
    ExperimentResult,
    ModelInvariantError,
    Observable,
    ergodic_average,
    escape_probability,
    level_census,
    loop_census,
    read_result,
    sign_mean_experiment,
    sign_time_average,
    slope_experiment,
    write_result,
)
from .render import PALETTE, height_grid, render_ppm, write_ppm

__version__ = "0.1.0"

__all__ = [
    "Axis",
    "Configuration",
    "ExplicitFields",
    "GeneratorKind",
    "GeneratorSpec",
    "MarkovSpec",
    "Params",
    "mix64",
    "sign_threshold",
    "zigzag",
    "HeightOracle",
    "ceil_half",
    "crossing_height",
    "face_is_black",
    "Parity",
    "TranslatedFields",
    "diamond_map",
    "diamond_points",
    "degree_profile",
    "edge_between",
    "edge_open",
    "horizontal_edge_open",
    "open_edges_in_window",
    "open_neighbors",
    "parity",
    "reflect_edges_x",
    "translate_fields",
    "vertical_edge_open",
    "ConeSpec",
    "DirectionEstimate",
    "Trace",
    "TraceStatus",
    "cone_spec",
    "cone_violations",
    "direction_estimate",
    "in_cone",
    "level",
    "sign_sequence",
    "slope_formula",
    "trace",
    "ExperimentConfig",
    "ExperimentResult",
    "ModelInvariantError",
    "Observable",
    "ergodic_average",
    "escape_probability",
    "level_census",
    "loop_census",
    "read_result",
    "sign_mean_experiment",
    "sign_time_average",
    "slope_experiment",
    "write_result",
    "PALETTE",
    "height_grid",
    "render_ppm",
    "write_ppm",
]
