"""Workbench for finite join-semilattices with pseudocomplemented sections,
their implication and residuated presentations, congruence analysis, and
exhaustive small-model search."""

from .core import (Algebra, BinTable, ClassTag, OrdalgError, ParseError,
                   Report, StructureError, TernTable, UNDEF, UNDEF_TOKEN,
                   Universe, build_algebra, common_lower_bounds, default_labels,
                   ensure_meet, first_table_difference, glb_table, join, leq,
                   lub_table, partial_meet, project_to_class, relabel, section,
                   validate_join_semilattice)
from .fileio import parse_algebra, serialize_algebra
from .sectioned import (SectionReport, SectionShape, pseudocomplement_in_section,
                        section_report, section_shape_report, validate_sectioned)
from .implication import (NcisAlgebra, check_ncis_properties, derive_implication,
                          derive_sections, validate_ncis)
from .residuated import (BridgeError, RrsAlgebra, SrsAlgebra, check_divisible,
                         check_rrs_properties, derive_residual_imp,
                         has_meets_on_bounded_pairs, ncis_rrs_bridge,
                         rrs_from_srs, srs_from_rrs, validate_rrs,
                         validate_rrs_identities, validate_srs)
from .varieties import (IAlgebra, RAlgebra, ialgebra_from_ncis,
                        ncis_from_ialgebra, ralgebra_from_rrs,
                        rrs_from_ralgebra, validate_ialgebra, validate_ralgebra)
from .congruence import (ConLattice, MaltsevReport, Partition,
                         congruence_lattice, maltsev_report,
                         principal_congruence, term_witness_check)
from .search import (DEFAULT_MAX_SIZE, PROPERTIES, SearchSpec, canonical_form,
                     canonical_key, count_models, enumerate_models,
                     find_counterexample, isomorphic, size_cap)

__version__ = "0.1.0"
