"""Hopf pseudo-Riemannian submersions from pseudo-hyperbolic spaces.

Thin python layer over the C++ core: composition algebras built by
Cayley-Dickson doubling, pseudo-hyperbolic quadrics, the catalogued Hopf
pseudo-Riemannian submersions, and the verification suites for their
structure equations.
"""

from ._core import (  # noqa: F401
    Fibration,
    Space,
    a_tensor,
    admissible,
    algebras,
    catalog_json,
    catalog_markdown,
    check_pi9,
    compose,
    conj,
    fibration_ids,
    inner,
    jacobi_eigenvalues,
    lookup,
    mul,
    multiplication_table_json,
    norm_form,
    pi9_polynomial,
    space,
    sweep,
    verify,
)

__all__ = [
    "Fibration",
    "Space",
    "a_tensor",
    "admissible",
    "algebras",
    "catalog_json",
    "catalog_markdown",
    "check_pi9",
    "compose",
    "conj",
    "fibration_ids",
    "inner",
    "jacobi_eigenvalues",
    "lookup",
    "mul",
    "multiplication_table_json",
    "norm_form",
    "pi9_polynomial",
    "space",
    "sweep",
    "verify",
]
