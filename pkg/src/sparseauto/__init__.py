"""Sparse k-automatic sets: sparsity, decomposition, closed forms, bounds
and bounded cross-base intersections."""

from .automata import (
    LSD,
    MSD,
    AutomatonError,
    Dfa,
    DigitWord,
    accepts,
    evaluate,
    expand,
    member,
    minimize,
    normalize,
    project,
    reverse_direction,
    trim,
)
from .bounds import (
    BoundValue,
    DependentBasesError,
    av_bound,
    degenerate_pair_bound,
    intersection_bound,
    multiplicatively_independent,
    nondegenerate_pair_bound,
    term_pair_bound,
)
from .decompose import (
    NotSparseError,
    SparseTerm,
    decompose,
    project_term,
    term_to_dfa,
    verify_decomposition,
)
from .expsum import ExpSumForm, enumerate_values, eval_expsum, to_expsum
from .intersect import (
    IntersectionResult,
    UnitEquationInstance,
    bounded_intersection,
    pi_count,
    subsum_diagnostics,
)
from .sparsity import SparsityReport, classify, count_words, growth_estimate

__version__ = "0.1.0"
