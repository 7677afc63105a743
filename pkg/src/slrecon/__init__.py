"""Conservative sliding-average reconstruction and semi-Lagrangian relaxation solvers."""

from slrecon.core import (
    FREEFLOW,
    PERIODIC,
    BoundaryPolicy,
    CellField1D,
    CellField2D,
    Grid1D,
    Grid2D,
    NumericalError,
    OutOfDomainError,
    ShiftQuery,
    decompose_shift,
    ghost_extend,
)
from slrecon.recon1d import (
    CwenoParams,
    ReconCoeffs1D,
    Reconstruction,
    alpha_coeff,
    basic_cweno23,
    basic_cweno35,
    basic_lagrange,
    basic_pfc,
    beta_coeff,
    q_eval,
    q_shifted_field,
)
from slrecon.recon2d import ReconCoeffs2D, basic_2d_separable, q_eval_2d, q_shifted_field_2d, shift_2d
from slrecon.timeint import BdfCoeffs, ButcherTable, bdf_coeffs, dirk2_table, dirk43_table, implicit_euler_table

__version__ = "0.1.0"

__all__ = [
    "FREEFLOW", "PERIODIC", "BoundaryPolicy", "CellField1D", "CellField2D", "Grid1D", "Grid2D",
    "NumericalError", "OutOfDomainError", "ShiftQuery", "decompose_shift", "ghost_extend",
    "CwenoParams", "ReconCoeffs1D", "Reconstruction", "alpha_coeff", "basic_cweno23", "basic_cweno35",
    "basic_lagrange", "basic_pfc", "beta_coeff", "q_eval", "q_shifted_field",
    "ReconCoeffs2D", "basic_2d_separable", "q_eval_2d", "q_shifted_field_2d", "shift_2d",
    "BdfCoeffs", "ButcherTable", "bdf_coeffs", "dirk2_table", "dirk43_table", "implicit_euler_table",
]
