"""Bockstein obstruction and constructive lifts of transversal Z rotations.

A level-m phase vector ``theta`` in Z_{2^m}^n encodes the transversal
rotation that applies angle ``pi * theta_j / 2^(m-1)`` on qubit ``j``.  It is
a cycle when ``H_X theta = 0 mod 2^m``.  Writing ``H_X theta = 2^m r mod
2^(m+1)`` gives the binary defect ``r``; a lift to level m+1 exists exactly
when ``r`` lies in the image of ``H_X`` over Z_2, and then
``theta + 2^m omega`` with ``H_X omega = r mod 2`` is one.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .css_model import (
    CssCode,
    LogicalBasis,
    classes_equal,
    is_cycle_vector,
    logical_bases,
    max_commutativity_level,
    x_generators_independent,
)
from .errors import (
    DimensionMismatch,
    HypothesisViolated,
    IllDefinedHomology,
    NotACycle,
    Obstructed,
    PairingHypothesisViolated,
    PairingLiftFailed,
)
from .ring_linalg import ResidueMatrix, ResidueVector, int_product, solve_mod


class PhaseVector(ResidueVector):
    """theta in Z_{2^m}^n at level m = ``exponent``."""

    __slots__ = ()

    @property
    def level(self) -> int:
        return self.exponent

    @classmethod
    def ones(cls, n: int, level: int) -> "PhaseVector":
        return cls(np.ones(n, dtype=np.int64), level)

    def at_level(self, level: int) -> "PhaseVector":
        """Same integer representatives read modulo 2^level."""
        return PhaseVector(self.array, level)


@dataclass(frozen=True)
class BocksteinReport:
    level: int
    defect: ResidueVector
    well_defined: bool
    trivial: bool
    witness: Optional[ResidueVector]


@dataclass(frozen=True)
class LiftResult:
    """theta_hat = theta + H_Z^T s + 2^m omega (mod 2^(m+1))."""

    theta_hat: PhaseVector
    s: ResidueVector
    omega: ResidueVector
    well_defined: bool


def _check_length(code: CssCode, theta) -> None:
    if len(theta) != code.n:
        raise DimensionMismatch(f"theta has length {len(theta)}, code has n={code.n}")


def is_cycle(code: CssCode, theta: PhaseVector) -> bool:
    """H_X theta = 0 mod 2^m with the code's declared H_X entries."""
    _check_length(code, theta)
    return is_cycle_vector(code, theta.array, theta.level)


def _defect(code: CssCode, theta: np.ndarray, m: int) -> np.ndarray:
    if code.m_x == 0:
        return np.zeros(0, dtype=np.int64)
    prod = int_product(code.hx.array, theta) % (1 << (m + 1))
    return np.asarray(prod, dtype=np.int64) >> m


def bockstein_defect(code: CssCode, theta: PhaseVector) -> BocksteinReport:
    """Defect r with H_X theta = 2^m r mod 2^(m+1), and whether r is in Im(H_X mod 2).

    The defect is computed for the given representative.  ``well_defined``
    records whether H_X H_Z^T vanishes mod 2^(m+1), i.e. whether the verdict
    is a property of the homology class.
    """
    if not is_cycle(code, theta):
        raise NotACycle(theta.level)
    m = theta.level
    r = ResidueVector(_defect(code, theta.array, m), 1)
    omega = solve_mod(ResidueMatrix(code.hx2, 1, cols=code.n), r)
    return BocksteinReport(
        level=m,
        defect=r,
        well_defined=max_commutativity_level(code, m + 1) == m + 1,
        trivial=omega is not None,
        witness=omega,
    )


def check_lift(code: CssCode, theta: PhaseVector, result: LiftResult) -> None:
    """Re-verify both lift invariants by exact arithmetic."""
    m = theta.level
    hat = result.theta_hat
    if hat.level != m + 1:
        raise AssertionError("lift has the wrong level")
    boundary = np.asarray(int_product(code.hz.array.T, result.s.array), dtype=np.int64)
    base = (theta.array + boundary) % (1 << m)
    if not np.array_equal(hat.array % (1 << m), base):
        raise AssertionError("lift does not reduce to theta + H_Z^T s")
    if not is_cycle(code, hat):
        raise AssertionError("lift is not a cycle at the next level")


def lift_once(code: CssCode, theta: PhaseVector) -> LiftResult:
    """theta + 2^m omega' for the solver's canonical omega'; raises :class:`Obstructed`."""
    report = bockstein_defect(code, theta)
    if not report.trivial:
        raise Obstructed(report.level, report.defect)
    m = theta.level
    hat = PhaseVector(theta.array + (report.witness.array << m), m + 1)
    result = LiftResult(hat, ResidueVector.zeros(code.m_z, m), report.witness, report.well_defined)
    check_lift(code, theta, result)
    return result


def lift_to_level(code: CssCode, theta: PhaseVector, target: int) -> list:
    """Iterated lifts [theta_2, ..., theta_target] of a level-1 cycle.

    Raises :class:`Obstructed` carrying the first level whose defect is
    nontrivial.
    """
    if theta.level != 1:
        raise ValueError("lift_to_level starts from a level-1 phase vector")
    if target < 2:
        raise ValueError("target level must be at least 2")
    if not is_cycle(code, theta):
        raise NotACycle(1)
    out = []
    current = theta
    for _ in range(1, target):
        current = lift_once(code, current).theta_hat
        out.append(current)
    return out


def lift_coherent(code: CssCode, lower: PhaseVector, upper: PhaseVector) -> bool:
    """upper mod 2^i lies in the class of lower (i = lower.level)."""
    equal, _ = classes_equal(code, upper.at_level(lower.level), lower, lower.level)
    return equal


def _pairings(theta: np.ndarray, basis: LogicalBasis) -> np.ndarray:
    if not basis.gammas:
        return np.zeros(0, dtype=np.int64)
    ga = np.array([g.array for g in basis.gammas])
    return np.asarray(int_product(ga, theta), dtype=np.int64)


def lift_preserving_pairing(
    code: CssCode, theta_a: PhaseVector, basis: LogicalBasis, a: int
) -> PhaseVector:
    """A level-(m+1) lift whose pairings with the gamma basis are delta_ab mod 2^(m+1).

    Unknowns are ``s`` (boundary coefficients) and ``omega`` (top-bit flips)
    in ``theta_hat = theta + H_Z^T s + 2^m omega``.  Both requirements are
    even after subtracting the level-m data, so halving them gives one
    linear system over Z_{2^m}:

    * pairing rows:  s . (H_Z gamma_b / 2) + 2^(m-1) <omega, gamma_b> = -2^(m-1) c_b
    * cycle rows:    2^(m-1) (R s + H_X omega) = -2^(m-1) r

    where ``c_b`` is the top bit of the level-m pairing error, ``r`` the
    Bockstein defect and ``R`` the residual of H_X H_Z^T at level m (zero
    when commutativity holds mod 2^(m+1)).
    """
    m = theta_a.level
    if not is_cycle(code, theta_a):
        raise NotACycle(m)
    level = max_commutativity_level(code, m)
    if level < m:
        raise IllDefinedHomology(m, level)
    k = basis.k
    if not 0 <= a < k:
        raise IndexError(f"logical index {a} out of range for k={k}")
    mod_m, mod_up = 1 << m, 1 << (m + 1)
    delta = np.zeros(k, dtype=np.int64)
    delta[a] = 1
    pair = _pairings(theta_a.array, basis)
    if ((pair - delta) % mod_m).any():
        raise PairingHypothesisViolated(
            f"<theta_a, gamma_b> = {(pair % mod_m).tolist()} mod 2^{m}, expected delta_{a}b"
        )
    report = bockstein_defect(code, theta_a)
    if report.well_defined and not report.trivial:
        raise Obstructed(m, report.defect)

    half = 1 << (m - 1)
    n, mz, mx = code.n, code.m_z, code.m_x
    gam = np.array([g.array for g in basis.gammas]).reshape(k, n)
    hz = code.hz.array
    g = np.asarray(int_product(hz, gam.T), dtype=np.int64).reshape(mz, k) // 2
    c = ((pair - delta) % mod_up) >> m
    resid = (np.asarray(code.commutator(), dtype=object) % mod_up) // mod_m
    resid = np.asarray(resid, dtype=np.int64).reshape(mx, mz)

    rows = []
    rhs = []
    for b in range(k):
        rows.append(np.concatenate([g[:, b], half * gam[b]]))
        rhs.append(-half * c[b])
    for i in range(mx):
        rows.append(np.concatenate([half * resid[i], half * code.hx2[i]]))
        rhs.append(-half * int(report.defect[i]))
    if rows:
        system = ResidueMatrix(np.array(rows), m, cols=mz + n)
        sol = solve_mod(system, ResidueVector(rhs, m))
    else:
        sol = ResidueVector.zeros(mz + n, m)
    if sol is None:
        if not report.trivial:
            raise Obstructed(m, report.defect)
        raise PairingLiftFailed(
            "no pairing-preserving lift found although the Bockstein defect is trivial"
        )
    s = sol.array[:mz]
    omega = sol.array[mz:] % 2
    hat = theta_a.array + (omega << m)
    if mz:
        hat = hat + np.asarray(int_product(hz.T, s), dtype=np.int64)
    theta_hat = PhaseVector(np.mod(hat, mod_up), m + 1)
    if not is_cycle(code, theta_hat) or ((_pairings(theta_hat.array, basis) - delta) % mod_up).any():
        raise PairingLiftFailed("constructed lift failed re-verification")
    return theta_hat


def logical_rotation_program(code: CssCode, a: int, m: int) -> PhaseVector:
    """Level-(m+1) phase vector implementing the pi/2^m rotation of logical Z_a.

    Requires independent X generators and H_X H_Z^T = 0 mod 2^(m+1).
    ``a`` indexes :func:`logical_bases` from zero.
    """
    failures = []
    if not x_generators_independent(code):
        failures.append("X-stabilizer generators are linearly dependent")
    level = max_commutativity_level(code, m + 1)
    if level < m + 1:
        failures.append(f"H_X H_Z^T vanishes only mod 2^{level}, need 2^{m + 1}")
    if failures:
        raise HypothesisViolated(failures)
    basis = logical_bases(code)
    if not 0 <= a < basis.k:
        raise IndexError(f"logical index {a} out of range for k={basis.k}")
    theta = PhaseVector(basis.thetas[a].array, 1)
    for _ in range(m):
        theta = lift_preserving_pairing(code, theta, basis, a)
    return theta
