"""Finite categories, comprehensive factorizations and the balanced calculus."""

import json

from ._core import (
    Category,
    Functor,
    InputError,
    SizeGuardError,
    ValidationError,
    coreflect,
    factorize,
    hom_size,
    is_adjunctible,
    is_dense,
    is_discrete_fibration,
    is_discrete_opfibration,
    is_final,
    is_initial,
    law_ids,
    mu_violations,
    reflect,
    tensor_size,
)
from ._core import cli as _cli
from ._core import run_laws as _run_laws


def run_laws(ids=None, seed=7, count=12, max_objects=4, max_morphisms=12):
    """Run the law suite and return the report as a dict."""
    chosen = list(law_ids()) if ids is None else list(ids)
    return json.loads(_run_laws(chosen, seed, count, max_objects, max_morphisms))


def cli(*args):
    """Run a command-line invocation in process: (exit code, stdout, stderr)."""
    return _cli([str(a) for a in args])


__all__ = [
    "Category",
    "Functor",
    "InputError",
    "SizeGuardError",
    "ValidationError",
    "cli",
    "coreflect",
    "factorize",
    "hom_size",
    "is_adjunctible",
    "is_dense",
    "is_discrete_fibration",
    "is_discrete_opfibration",
    "is_final",
    "is_initial",
    "law_ids",
    "mu_violations",
    "reflect",
    "run_laws",
    "tensor_size",
]
