"""Containment orders of paths in trees.

Posets, modular decomposition, interval-containment recognition, CPT
models and their local rewrites, model synthesis for associated posets,
and a bounded exhaustive oracle.
"""
from .ci import (CiModel, CompressedCiModel, NotCI, Realizer, ci_model_from_realizer,
                 ci_recognize, ci_to_cpt, compress_ci_model)
from .cpt import CptModel, HostTree, model_from_edges, prune_minimal, realizes
from .errors import CptError, NotDuallyCptSuspicion, PreconditionFailed
from .modular import (maximal_modular_partition, module_tree, proper_strong_modules, quotient,
                      strong_modules, substitute)
from .normalize import NormalizedModel, diagnose_endings, normalize
from .oracle import ExhaustedNone, SearchBudget, brute_force_cpt, classify, enumerate_posets
from .poset import Poset, comparability_graph, dual, is_associated, make_poset, transitive_orientations
from .synthesize import build_associated_representation

__all__ = [
    "CiModel", "CompressedCiModel", "CptError", "CptModel", "ExhaustedNone", "HostTree",
    "NormalizedModel", "NotCI", "NotDuallyCptSuspicion", "Poset", "PreconditionFailed",
    "Realizer", "SearchBudget", "brute_force_cpt", "build_associated_representation",
    "ci_model_from_realizer", "ci_recognize", "ci_to_cpt", "classify",
    "comparability_graph", "compress_ci_model", "diagnose_endings", "dual",
    "enumerate_posets", "is_associated", "make_poset", "maximal_modular_partition",
    "model_from_edges", "module_tree", "normalize", "proper_strong_modules",
    "prune_minimal", "quotient", "realizes", "strong_modules", "substitute",
    "transitive_orientations",
]
