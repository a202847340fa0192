"""Exact computations with minimal Sullivan models and their self-equivalences."""

from .gca import AlgebraError, AlgebraMap, Derivation, Element, FreeGCA, Generator
from .model import CohomologyBasis, ModelError, SullivanModel, TruncationError
from .parser import ParseError, parse_expression, parse_map, parse_model, print_map, print_model
from .maps import (Cylinder, DgaMorphism, Homotopy, HomotopyError, MorphismError, compose,
                   constant_homotopy, lemma_l3_homotopy, normalize_top, restrict_homotopy, verify_homotopy)
from .whitehead import (DnElement, ExactnessError, KernelElement, b_matrix, decompose, difference_class,
                        dn_membership, psi, sigma, theta, theta_prime, whitehead_data, whitehead_sequence)
from .elliptic import EllipticError, elliptic_check, embedding_report, f0_check

__all__ = [
    "AlgebraError", "AlgebraMap", "Derivation", "Element", "FreeGCA", "Generator",
    "CohomologyBasis", "ModelError", "SullivanModel", "TruncationError",
    "ParseError", "parse_expression", "parse_map", "parse_model", "print_map", "print_model",
    "Cylinder", "DgaMorphism", "Homotopy", "HomotopyError", "MorphismError", "compose",
    "constant_homotopy", "lemma_l3_homotopy", "normalize_top", "restrict_homotopy", "verify_homotopy",
    "DnElement", "ExactnessError", "KernelElement", "b_matrix", "decompose", "difference_class",
    "dn_membership", "psi", "sigma", "theta", "theta_prime", "whitehead_data", "whitehead_sequence",
    "EllipticError", "elliptic_check", "embedding_report", "f0_check",
]
