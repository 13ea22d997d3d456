"""Integer circulant determinants of order p^t, with exact answers for 25 and 27."""

from .classify import Label, TypeVerdict, classify_mod3, classify_mod5, classify_mod9
from .cyclo import CycloElt, CycloIndex, NormProfile, measure, norm, norm_profile, pth_power_reduce
from .lattice import find_norm_element
from .membership import member_z25, member_z27, theorem1_check
from .poly import IntPoly, resultant
from .witness import (
    multiply_coprime,
    verify_witness,
    witness_3p4,
    witness_3p5_mod3,
    witness_3p5_type3,
    witness_5cubed,
)

__version__ = "0.1.0"
