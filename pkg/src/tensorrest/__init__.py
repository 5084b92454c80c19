"""Finite tensor-restriction categories and the subunit construction."""
from .fincat import (FinCategory, Functor, LawReport, MalformedTables, SearchBudgetExceeded,
                     Structure, StructureFlags, Violation, check_category_laws, check_functor,
                     find_isomorphism, is_iso, is_mono)
from .monoidal import (MonoidalData, NotBraided, NotFirm, Semilattice, Subunit,
                       check_monoidal_laws, enumerate_subunits, is_firm, isub_semilattice)
from .restriction import (CorestrictionData, RestrictionData, check_CR_axioms, check_R_axioms,
                          check_RR_axioms, check_BR_axioms, total_subcategory)

__all__ = [
    "FinCategory", "Functor", "LawReport", "MalformedTables", "SearchBudgetExceeded",
    "Structure", "StructureFlags", "Violation", "check_category_laws", "check_functor",
    "find_isomorphism", "is_iso", "is_mono", "MonoidalData", "NotBraided", "NotFirm",
    "Semilattice", "Subunit", "check_monoidal_laws", "enumerate_subunits", "is_firm",
    "isub_semilattice", "CorestrictionData", "RestrictionData", "check_CR_axioms",
    "check_R_axioms", "check_RR_axioms", "check_BR_axioms", "total_subcategory",
]
