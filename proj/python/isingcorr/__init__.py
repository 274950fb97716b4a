"""Ising row and diagonal correlations by Toeplitz determinants and expansions."""

from ._core import (
    Error,
    ModelParams,
    correlation,
    det_DN,
    det_DhatN,
    f_2n,
    f_2n1,
    F_2n,
    G_2n1,
    Context,
    phi_2n,
    s_hat_infinity,
    s_infinity,
    table,
    verify,
    __version__,
)

__all__ = [
    "Error",
    "ModelParams",
    "correlation",
    "det_DN",
    "det_DhatN",
    "f_2n",
    "f_2n1",
    "F_2n",
    "G_2n1",
    "Context",
    "phi_2n",
    "s_hat_infinity",
    "s_infinity",
    "table",
    "verify",
    "__version__",
]
