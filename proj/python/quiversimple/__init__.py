"""Python bindings for the quiversimple C++ library.

Matrices are lists of rows of Python ints of any size. Library errors are
raised as ``QsError`` (a ``ValueError``) whose message starts with the error
code, for example ``"SingularMatrix: ..."``.
"""

from ._core import (
    QsError,
    adjugate,
    compute_chain,
    condition_L_finite,
    decide,
    decide_density,
    density_1d,
    det,
    gamma0_finite,
    hnf,
    is_dilation,
    is_unimodular,
    minimal_finite,
    mod_inverse_reduced,
    normalize,
    present,
    run_job,
    snf,
    triangular_criterion,
    verify_minimality_theorem,
)

__all__ = [
    "QsError",
    "adjugate",
    "compute_chain",
    "condition_L_finite",
    "decide",
    "decide_density",
    "density_1d",
    "det",
    "gamma0_finite",
    "hnf",
    "is_dilation",
    "is_unimodular",
    "minimal_finite",
    "mod_inverse_reduced",
    "normalize",
    "present",
    "run_job",
    "snf",
    "triangular_criterion",
    "verify_minimality_theorem",
]
