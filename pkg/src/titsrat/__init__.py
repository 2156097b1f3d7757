"""Tits indices of almost simple groups and rule-based rationality verdicts."""
from .centralizer import (
    anisotropic_quotient_descriptor,
    center_contained,
    center_of_sc,
    centralizer_index,
    commuting_torus,
)
from .classify import Verdict, classify, rule_table
from .intlat import (
    FiniteOrderTorusElement,
    kernel_basis,
    saturation,
    smith_normal_form,
    torsion_solutions,
)
from .rootsys import CartanDatum, cartan_matrix, components, diagram_automorphisms, positive_roots
from .titsindex import (
    FieldContext,
    IsogenyTag,
    TitsIndex,
    anisotropic_kernel,
    division_degree,
    format_index,
    k_rank,
    m_of_G,
    make_index,
    parse_index,
    validate,
)

__version__ = "0.1.0"
