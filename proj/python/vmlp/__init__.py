"""Finite-dimensional real algebras and vector-valued MLPs."""

from vmlp._core import (
    Algebra,
    NumericError,
    ValidationError,
    VMlp,
    catalog,
    catalog_names,
    cayley_dickson_chain,
    clifford,
    eval_target,
    init_vmlp,
    load_checkpoint,
    new_algebra,
    represent,
    save_checkpoint,
    train,
    verify_representation,
)

__all__ = [
    "Algebra",
    "NumericError",
    "ValidationError",
    "VMlp",
    "catalog",
    "catalog_names",
    "cayley_dickson_chain",
    "clifford",
    "eval_target",
    "init_vmlp",
    "load_checkpoint",
    "new_algebra",
    "represent",
    "save_checkpoint",
    "train",
    "verify_representation",
]
