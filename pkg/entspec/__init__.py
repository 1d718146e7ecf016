from .bipartition import BipartitionMask, complement, enumerate_balanced, join_index, split_index
from .distribution import (
    analytic_params,
    compare_to_analytic,
    density,
    density_mass,
    empirical_stats,
    histogram,
    scaling,
    sweep,
)
from .errors import CapExceededError, EntspecError, InvalidArgumentError, OutputError, StateFormatError
from .purity import GramMatrix, purity, purity_quartic_oracle, reduce, w_purity_closed_form
from .repository import load_state, save_state
from .states import (
    PureState,
    apply_single_qubit_unitary,
    make_cluster,
    make_ghz,
    make_product,
    make_random,
    make_w,
)

__version__ = "1.0.0"
