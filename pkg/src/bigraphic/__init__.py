"""Bipartite degree-sequence realization over degree intervals."""

from .core import (
    CheckReport,
    DegreePair,
    IntervalPair,
    IntervalSequence,
    ValidationError,
    Violation,
    prefix_sums_desc,
    sort_desc_with_perm,
    sum_min,
    sum_min_table,
)
from .enumeration import BudgetExceeded, enumerate_pairs
from .gale_ryser import BipartiteRealization, NotBigraphic, is_bigraphic, realize
from .interval_criteria import (
    NoneFound,
    NotApplicable,
    PreconditionError,
    Witness,
    check_exact,
    check_existence,
    check_necessary,
    check_sufficient,
    necessity_witness,
)
from .oracle import ForciblyVerdict, ValidationRecord, brute_forcibly, gen_instance, run_campaign, validate

__version__ = "0.1.0"
