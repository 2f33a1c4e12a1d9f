"""Twin-width toolkit: trigraphs, contraction sequences, exact and greedy solvers,
the apex-over-tree construction G_t with its width witnesses, and grid/mixed
minors of ordered 0/1 matrices."""

from twinwidth.core import (
    DiTrigraph,
    Graph,
    Partition,
    Trigraph,
    contract,
    contract_oriented,
    out_red_degree,
    quotient,
    red_degree,
)
from twinwidth.sequences import (
    ContractionSequence,
    ContractionStep,
    WidthReport,
    partition_trace,
    verify,
    verify_oriented,
)
from twinwidth.solver import (
    SolveResult,
    SolverConfig,
    enumerate_all_sequences,
    exact_oriented_twinwidth,
    exact_twinwidth,
    greedy_upper_bound,
)

__version__ = "0.1.0"
