"""One-step lifts of the parity-check matrices themselves.

Given H_X, H_Z with H_X H_Z^T = 0 mod 2^m, look for binary corrections
A, B such that ``(H_X + 2^m A)(H_Z + 2^m B)^T = 0 mod 2^(m+1)``.  Since
``2m >= m + 1`` the cross term drops out and the condition is linear over
Z_2::

    A (H_Z mod 2)^T + (H_X mod 2) B^T = R  (mod 2)

with R the residual ``(H_X H_Z^T mod 2^(m+1)) / 2^m``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .bockstein import PhaseVector, bockstein_defect, is_cycle, lift_once
from .css_model import CssCode, max_commutativity_level
from .errors import ChainLiftUnsolvable, CommutativityTooLow, Obstructed
from .ring_linalg import ResidueMatrix, ResidueVector, rank_mod2, solve_mod


@dataclass(frozen=True)
class ChainLiftResult:
    level: int
    hx_hat: ResidueMatrix
    hz_hat: ResidueMatrix
    a: ResidueMatrix
    b: ResidueMatrix
    solution_dimension: int

    def lifted_code(self, name: str) -> CssCode:
        return CssCode(name, self.hx_hat, self.hz_hat)


def residual_matrix(code: CssCode, m: int) -> ResidueMatrix:
    level = max_commutativity_level(code, m)
    if level < m:
        raise CommutativityTooLow(m, level)
    prod = np.asarray(code.commutator() % (1 << (m + 1)), dtype=np.int64) >> m
    return ResidueMatrix(prod.reshape(code.m_x, code.m_z), 1, cols=code.m_z)


def _linear_map(hx2: np.ndarray, hz2: np.ndarray) -> np.ndarray:
    """Matrix of (A, B) -> A hz2^T + hx2 B^T on row-major vectorisations.

    Equation (i, k) sits in row ``i * m_z + k``; unknown ``A[i, j]`` is column
    ``i * n + j`` and ``B[k, j]`` is column ``m_x * n + k * n + j``.
    """
    mx, n = hx2.shape
    mz = hz2.shape[0]
    M = np.zeros((mx * mz, n * (mx + mz)), dtype=np.int64)
    for i in range(mx):
        for k in range(mz):
            row = i * mz + k
            M[row, i * n : (i + 1) * n] = hz2[k]
            off = mx * n + k * n
            M[row, off : off + n] = hx2[i]
    return M


def check_chain_lift(code: CssCode, result: ChainLiftResult) -> None:
    m = result.level
    low, up = 1 << m, 1 << (m + 1)
    if not np.array_equal(result.hx_hat.array % low, code.hx.array % low):
        raise AssertionError("lifted H_X does not reduce to H_X")
    if not np.array_equal(result.hz_hat.array % low, code.hz.array % low):
        raise AssertionError("lifted H_Z does not reduce to H_Z")
    lifted = result.lifted_code(code.name)
    if (np.asarray(lifted.commutator(), dtype=object) % up).any():
        raise AssertionError("lifted matrices do not commute mod 2^(m+1)")


def solve_chain_lift(code: CssCode, m: int) -> ChainLiftResult:
    """Canonical one-step chain-complex lift; raises :class:`ChainLiftUnsolvable`."""
    R = residual_matrix(code, m)
    mx, mz, n = code.m_x, code.m_z, code.n
    hx2, hz2 = code.hx2, code.hz2
    unknowns = n * (mx + mz)
    if mx * mz:
        M = ResidueMatrix(_linear_map(hx2, hz2), 1, cols=unknowns)
        sol = solve_mod(M, ResidueVector(R.array.ravel(), 1))
        if sol is None:
            raise ChainLiftUnsolvable(R)
        x = sol.array
        dim = unknowns - rank_mod2(M)
    else:
        x = np.zeros(unknowns, dtype=np.int64)
        dim = unknowns
    A = x[: mx * n].reshape(mx, n)
    B = x[mx * n :].reshape(mz, n)
    e = m + 1
    hx_hat = ResidueMatrix(code.hx.array + (A << m), e, cols=n)
    hz_hat = ResidueMatrix(code.hz.array + (B << m), e, cols=n)
    result = ChainLiftResult(
        m, hx_hat, hz_hat, ResidueMatrix(A, 1, cols=n), ResidueMatrix(B, 1, cols=n), dim
    )
    check_chain_lift(code, result)
    return result


@dataclass(frozen=True)
class ComplexReport:
    is_cycle: bool
    defect: Optional[tuple]
    trivial: Optional[bool]
    well_defined: Optional[bool]
    lift: Optional[tuple]


@dataclass(frozen=True)
class ReliftReport:
    level: int
    chain_level: int
    original: ComplexReport
    lifted: ComplexReport
    hx_hat: ResidueMatrix
    hz_hat: ResidueMatrix

    @property
    def identical(self) -> bool:
        return self.original == self.lifted


def _complex_report(code: CssCode, theta: PhaseVector) -> ComplexReport:
    if not is_cycle(code, theta):
        return ComplexReport(False, None, None, None, None)
    report = bockstein_defect(code, theta)
    try:
        lift = lift_once(code, theta).theta_hat.to_tuple()
    except Obstructed:
        lift = None
    return ComplexReport(
        True, report.defect.to_tuple(), report.trivial, report.well_defined, lift
    )


def relift_analysis(code: CssCode, m: int, theta: PhaseVector) -> ReliftReport:
    """Cycle / Bockstein / lift status of theta on the original and the chain-lifted complex."""
    result = solve_chain_lift(code, m)
    lifted = result.lifted_code(f"{code.name}^({m + 1})")
    return ReliftReport(
        theta.level,
        m,
        _complex_report(code, theta),
        _complex_report(lifted, theta),
        result.hx_hat,
        result.hz_hat,
    )
