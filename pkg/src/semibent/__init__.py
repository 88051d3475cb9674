"""Orthogonal semi-bent sequence sets from vectorial Boolean functions.

Builds the sets, checks their orthogonality exactly, places them on a
hexagonal cell lattice and measures how far the semi-bent property
survives when codewords are cut into shorter windows.
"""

from .boolfun import (
    BooleanFunction, Kind, classify, fwht, is_bent, is_semibent, sequence_of, walsh_spectrum,
)
from .constructions import (
    OrthogonalSet, SetFamily, SetId, construction1, construction2, construction3,
    hadamard_partition, vectorial_bent,
)
from .errors import RuleFails, SemibentError
from .gf2field import Field, make_field
from .hexassign import Assignment, HexCell, builtin_layout, verify
from .ortho import count_orthogonal, ortho_table, orthogonality_matrix
from .window import restriction, semibent_depth

__version__ = "0.1.0"

__all__ = [
    "Assignment", "BooleanFunction", "Field", "HexCell", "Kind", "OrthogonalSet", "RuleFails",
    "SemibentError", "SetFamily", "SetId", "builtin_layout", "classify", "construction1",
    "construction2", "construction3", "count_orthogonal", "fwht", "hadamard_partition",
    "is_bent", "is_semibent", "make_field", "ortho_table", "orthogonality_matrix",
    "restriction", "semibent_depth", "sequence_of", "vectorial_bent", "verify",
    "walsh_spectrum",
]
