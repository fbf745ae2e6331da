"""Finite extra loops: Cayley tables, structure, multiplication groups,
Sylow and Hall subloops, extension constructions and small censuses."""

from .errors import (AssertionFailure, ConsistencyError, ExtraLoopError, InputError, NotNormalError,
                     PreconditionError, ResourceCapError)
from .loop import FiniteLoop, IdentityReport, boolean_group, check_identities, cyclic, is_extra, is_group
from .structure import (Subloop, associator_subloop, center, direct_product, generate_subloop, is_normal,
                        nucleus, quotient)
from .multgroups import PermGroup, a_star, inner_mapping_group, lmlt, rmlt
from .iso import automorphisms, find_isomorphism, fingerprint, is_isomorphic
from .extension import (AbelianGroup, ExtensionSpec, build_psi, cayley_loop, canonical16, example512,
                        extension_loop, issemi_decompose, loop960, nucleus_realization, semidirect)
from .sylow import hall_subloops, is_solvable, sylow_rmlt_correspondence, sylow_subloops
from .census import census_16p, census_order16, classify
from .tableio import format_table, load_table, parse_table, save_table
from .specfile import format_spec, load_spec, parse_spec
from .properties import run_suite

__version__ = "0.1.0"
