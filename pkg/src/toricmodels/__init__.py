"""Exact toric arrangement toolkit: fans adapted to layers, strata and wonderful-model bookkeeping."""
from .arrangement import (
    Arrangement,
    Layer,
    LayerPoset,
    TorusValue,
    all_A_layers,
    arrangement_from_json,
    arrangement_to_json,
    from_digraph,
    intersect_layers,
    reduce_span,
    value_eq,
    value_mul,
    value_pow,
    xi_of,
)
from .betti import betti_numbers, blowup_update, d_vector, euler_characteristic
from .errors import *  # noqa: F401,F403
from .fan import (
    Fan,
    fan_from_json,
    fan_to_json,
    is_complete,
    is_smooth,
    make_orthant_fan,
    make_weyl_fan_A,
    orbit_closure_fan,
    stellar_subdivide_2cone,
    two_dim_cones,
)
from .lattice import (
    Sublattice,
    complete_to_basis,
    index_in_saturation,
    is_primitive,
    pairing,
    saturate,
    smith_normal_form,
)
from .strata import (
    StrataPoset,
    Stratum,
    build_strata_poset,
    check_clean,
    closure_fan,
    has_property_E,
    orbit_meets_layer,
    subtorus_space_basis,
)
from .subdiv import (
    SignStatus,
    bad_two_cones,
    construct_fan,
    resolve_all,
    resolve_character,
    score,
    sign_status,
)
from .wonderful import (
    blowup_schedule,
    is_building,
    is_nested,
    is_transversal,
    minimal_building_set,
    nested_sets,
)

__version__ = "0.1.0"
