"""
Closed-Form Formulas Package
Exact evaluation of every closed form for Gamma_n, with published and corrected readings.
"""

from src.formulas.numbers import ChromaticVariant, PowerProduct, Variant, as_integer
from src.formulas.counting import (
    PMGeneratingMonomial,
    cycle_count_formula,
    diameter_formula,
    pm_count_formula,
    pm_generating_function,
)
from src.formulas.tutte import (
    FactoredTutte,
    chromatic_eval,
    factored_to_sympy,
    spanning_forests_formula,
    spanning_trees_formula,
    tutte_evaluate,
    tutte_factored,
)
from src.formulas.indices import (
    SzegedTerms,
    asymptotic_ratio,
    asymptotic_ratio_limit,
    lemma_edge_value,
    nonspecial_contribution,
    special_contribution_full,
    special_contribution_small,
    sz_decomposition_terms,
    szeged_formula,
    wiener_formula,
    wiener_path_formula,
    wiener_star_formula,
)

__all__ = [
    'ChromaticVariant', 'PowerProduct', 'Variant', 'as_integer',
    'PMGeneratingMonomial', 'cycle_count_formula', 'diameter_formula',
    'pm_count_formula', 'pm_generating_function',
    'FactoredTutte', 'chromatic_eval', 'factored_to_sympy', 'spanning_forests_formula',
    'spanning_trees_formula', 'tutte_evaluate', 'tutte_factored',
    'SzegedTerms', 'asymptotic_ratio', 'asymptotic_ratio_limit', 'lemma_edge_value',
    'nonspecial_contribution', 'special_contribution_full', 'special_contribution_small',
    'sz_decomposition_terms', 'szeged_formula', 'wiener_formula',
    'wiener_path_formula', 'wiener_star_formula',
]
