from analyzers.classifier import TrivialityClassifier
from analyzers.automorphisms import (
    AutomorphismAnalyzer,
    Endo,
    WellDefinedEndo,
    endo_from_map_text,
    is_automorphism,
)
from analyzers.derivations import (
    Derivation,
    DerivationAnalyzer,
    conjecture_status,
    derivation_space,
    fixed_subalgebra_estimate,
)
from analyzers.constraints import ConstraintGenerator, ConstraintSystem, export_constraints, generate_constraints


__all__ = [
    'TrivialityClassifier',
    'AutomorphismAnalyzer',
    'Endo',
    'WellDefinedEndo',
    'endo_from_map_text',
    'is_automorphism',
    'Derivation',
    'DerivationAnalyzer',
    'conjecture_status',
    'derivation_space',
    'fixed_subalgebra_estimate',
    'ConstraintGenerator',
    'ConstraintSystem',
    'export_constraints',
    'generate_constraints'
]
