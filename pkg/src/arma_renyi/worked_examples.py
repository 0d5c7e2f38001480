"""The three reference systems and the figures printed for them.

All three share one three-dimensional ARMA(1; 1, 1) structure. Example 1 uses
Gaussian residuals, example 2 swaps in diagonal coefficients with Cauchy
residuals, example 3 reuses example 1's parameters with Laplace residuals.
"""

from __future__ import annotations

import numpy as np

from .model import ArmaControlModel

EX1_A1 = np.array([[0.5, 0.0, 0.0], [0.1, 0.1, 0.3], [0.0, 0.2, 0.3]])
EX1_B1 = np.array([[0.3, 0.0, 0.0], [0.0, 0.1, 0.2], [0.0, 0.2, 0.3]])
EX1_S_U = np.array([[2.25, 0.0, 0.0], [0.0, 1.0, 0.5], [0.0, 0.5, 0.74]])
EX1_S_W = np.diag([0.25, 1.0, 0.5])

EX2_A1 = 0.5 * np.eye(3)
EX2_B1 = 0.3 * np.eye(3)
EX2_S = np.diag([0.25, 1.0, 0.5])

# Figures as printed alongside the examples.
REF_ROOTS_EX1 = (2.0, 2.1525, -15.4858)
REF_PHI0_EX1 = np.array([
    [5.1700, 0.3765, 0.0443],
    [0.3765, 0.9241, 1.3560],
    [0.0443, 1.3560, 2.8917],
])
REF_M0_EX1 = np.array([[0.4, 0.0, 0.0], [0.09, 0.14, 0.23], [0.02, 0.16, 0.28]])
REF_SHANNON_EX1 = 4.9428
REF_HALF_LOGDET = 0.6860
REF_CONSTANT = 34.1884
REF_CAUCHY_SHANNON_EX2 = 6.5319
REF_M_COEFFS_EX2 = (0.4, 0.2, 0.1, 0.05, 0.025)
REF_MSTAR_COEFFS_EX2 = (0.75, 0.375, 0.1875, 0.0938)
# geometric completion of the printed coefficient lists: 0.4 / 0.5 + 0.75 / 0.5
REF_COEFF_SUM_EX2 = 2.3


def example1_model(family: str = "gaussian") -> ArmaControlModel:
    return ArmaControlModel.create([EX1_A1], [EX1_B1], [np.eye(3)], family, EX1_S_U, EX1_S_W)


def example2_model(family: str = "cauchy") -> ArmaControlModel:
    return ArmaControlModel.create([EX2_A1], [EX2_B1], [np.eye(3)], family, EX2_S, EX2_S)


def example3_model() -> ArmaControlModel:
    return example1_model("laplace")
