"""Brute-force oracle over small finite fields."""

from .fields import FiniteField, FqElem, build_field, supported_q
from .matrices import FqMatrix, MatrixGroup, symplectic_form, symplectic_group, symplectic_order
from .poset import (
    IsotropicPoset,
    Poset,
    Subspace,
    isotropic_poset,
    reduced_euler_char,
    reduced_euler_char_chains,
)
from .oracle import (
    UnsupportedSize,
    chi_r_bruteforce,
    chi_r_direct,
    chi_r_p_bruteforce,
    supported_sizes,
)
from .abelian import (
    AbelianGroup,
    FiniteGroup,
    abelian_groups_of_order,
    abelian_subgroups,
    epimorphism_counts,
    eulerian_phi_zpr,
    eulerian_phi_zr,
    hom_count_check,
)
from .polys import (
    PolyCatalogue,
    canonical_factorization,
    count_irreducible,
    count_palindromic_irreducible,
    enumerate_polys,
    factor_poly,
)
from .semisimple import (
    centralizer_spot_check,
    charpoly_selfreciprocal_check,
    dump_classes_jsonl,
    self_reciprocal_count,
)
