"""Latin squares, Bol loops and their Terwilliger algebras."""

__version__ = "0.1.0"

from .exceptions import LatinSquareError  # noqa: E402
from .quasigroup import (  # noqa: E402
    LatinSquare,
    LoopStructure,
    PropertyRecord,
    divide,
    loop_properties,
    loop_structure,
    parse_latin_square,
    product,
)
from .scheme import (  # noqa: E402
    OrthogonalArrayPoint,
    base_point,
    intersection_numbers,
    orthogonal_array,
    relation_of,
    subconstituent_partition,
)
from .subconstituent import (  # noqa: E402
    CycleStructure,
    ModuleTable,
    SubPermutation,
    WedderburnSignature,
    bol_pi_formula,
    cycle_structure,
    fixed_point_profile,
    identity_base_cycles,
    module_table,
    moufang_fixed_prediction,
    pi_of,
    pi_square_criterion,
    pi_via_division,
    right_bol_certificate,
    wedderburn_signature,
)
from .transforms import (  # noqa: E402
    Conjugacy,
    Isotopy,
    apply_conjugacy,
    apply_isotopy,
    map_base_point,
)
