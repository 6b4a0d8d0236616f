"""paleylab: finite fields GF(p^n) and Paley-type Cayley graph checkers."""

from .fields import (
    BadModulusError,
    FieldElement,
    FieldSpec,
    NonPrimeError,
    NotADivisorError,
    PowerTable,
    ResidueSet,
    element_parse,
    element_to_string,
    factor_prime_power,
    field_new,
    power_tables,
    primitive_element,
    residue_subgroup,
    subgroup_of_order,
)
from .graphs import (
    AsymmetricConnectionSetError,
    CongruenceError,
    Family,
    FamilySpec,
    Graph,
    build_cayley,
    build_family,
    complement,
    export,
    parse_edge_list,
)
from .polynomials import (
    ParseError,
    PrimePoly,
    find_irreducible,
    poly_is_irreducible,
    poly_parse,
    poly_to_string,
)
from .properties import (
    AffineMap,
    CapExceededError,
    NonAutomorphismError,
    SrgParams,
    TransitivityReport,
    Witness,
    affine_transitivity,
    components,
    is_complete,
    is_regular,
    iso_to_complete,
    iso_to_cycle,
    n_ec_check,
    pmnk_check,
    self_complementary_by_multiplier,
    srg_check,
)

__version__ = "0.1.0"
