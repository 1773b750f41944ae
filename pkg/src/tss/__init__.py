"""Target set selection: find a smallest seed set whose threshold
cascade activates a whole graph.

The pieces: :mod:`tss.graph` loads instances, :mod:`tss.diffusion` runs
the activation process, :mod:`tss.greedy` has the degree-greedy
constructor and the pruning pass, :mod:`tss.brkga` evolves random-key
populations over the greedy decoder (optionally with power-law
parameter control from :mod:`tss.powerlaw`), and :mod:`tss.bench`
orchestrates benchmark grids with statistics. ``tss.cli`` wraps it all
for the command line.
"""

from .brkga import BrkgaConfig, PowerLawParams, RunResult, StaticParams, TracePoint
from .brkga import run as brkga_run
from .diffusion import DiffusionState, add_and_spread, fitness, is_valid, spread, state_from_set
from .graph import (
    Graph,
    ParseError,
    Thresholds,
    load_graph,
    majority_thresholds,
    parse_edge_list,
    thresholds_from_file,
    validate_thresholds,
    write_edge_list,
)
from .greedy import decode, mdg, reverse_mdg
from .powerlaw import ParameterSampler, ParameterTriple, PowerLaw, powerlaw_new, powerlaw_sample, sample_parameters

__all__ = [
    "BrkgaConfig",
    "DiffusionState",
    "Graph",
    "ParameterSampler",
    "ParameterTriple",
    "ParseError",
    "PowerLaw",
    "PowerLawParams",
    "RunResult",
    "StaticParams",
    "Thresholds",
    "TracePoint",
    "add_and_spread",
    "brkga_run",
    "decode",
    "fitness",
    "is_valid",
    "load_graph",
    "majority_thresholds",
    "mdg",
    "parse_edge_list",
    "powerlaw_new",
    "powerlaw_sample",
    "reverse_mdg",
    "sample_parameters",
    "spread",
    "state_from_set",
    "thresholds_from_file",
    "validate_thresholds",
    "write_edge_list",
]

__version__ = "0.1.0"
