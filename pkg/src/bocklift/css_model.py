"""CSS codes viewed as length-two chain complexes.

A code is a pair of parity-check matrices with ``d2 = H_Z^T`` and
``d1 = H_X``::

    Z^{m_Z} --H_Z^T--> Z^n --H_X--> Z^{m_X}

Matrices may carry entries modulo 2^e for ``e > 1`` (lifted complexes).
Stabiliser-group semantics always use the mod-2 reduction; cycle and
commutativity conditions use the declared integer entries.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    CommutativityViolation,
    DimensionMismatch,
    IllDefinedHomology,
    NotACycle,
)
from .ring_linalg import (
    ResidueMatrix,
    ResidueVector,
    in_row_span,
    int_product,
    inverse_mod,
    kernel_basis_mod,
    module_invariants,
    rank_mod2,
    solve_mod,
    two_adic_level,
    valuation,
)

DEFAULT_CAP = 8


@dataclass(frozen=True)
class CssCode:
    """Named pair of parity-check matrices sharing ``n`` columns and an entry exponent.

    The constructor only checks shapes; :func:`validate` checks commutativity.
    """

    name: str
    hx: ResidueMatrix
    hz: ResidueMatrix

    def __post_init__(self):
        if self.hx.cols != self.hz.cols:
            raise DimensionMismatch(
                f"H_X has {self.hx.cols} columns but H_Z has {self.hz.cols}"
            )
        if self.hx.exponent != self.hz.exponent:
            raise DimensionMismatch("H_X and H_Z must share an entry exponent")

    @classmethod
    def from_lists(cls, name, n, hx, hz, entry_exponent=1) -> "CssCode":
        return cls(
            name,
            ResidueMatrix(hx, entry_exponent, cols=n),
            ResidueMatrix(hz, entry_exponent, cols=n),
        )

    @property
    def n(self) -> int:
        return self.hx.cols

    @property
    def m_x(self) -> int:
        return self.hx.rows

    @property
    def m_z(self) -> int:
        return self.hz.rows

    @property
    def entry_exponent(self) -> int:
        return self.hx.exponent

    @property
    def hx2(self) -> np.ndarray:
        return self.hx.array % 2

    @property
    def hz2(self) -> np.ndarray:
        return self.hz.array % 2

    def commutator(self) -> np.ndarray:
        """Unreduced integer product H_X H_Z^T of the declared entries."""
        return int_product(self.hx.array, self.hz.array.T).reshape(self.m_x, self.m_z)


@dataclass(frozen=True)
class ValidationReport:
    n: int
    m_x: int
    m_z: int
    rank_x: int
    rank_z: int
    k: int
    commutes_mod2: bool
    x_independent: bool


@dataclass(frozen=True)
class LogicalBasis:
    """Dual bases of H^1(C; Z_2) (``gammas``) and H_1(C; Z_2) (``thetas``)."""

    gammas: tuple = field(default_factory=tuple)
    thetas: tuple = field(default_factory=tuple)

    @property
    def k(self) -> int:
        return len(self.gammas)

    def pairing_matrix(self) -> np.ndarray:
        """Integer matrix of <theta_a, gamma_b>."""
        if not self.gammas:
            return np.zeros((0, 0), dtype=np.int64)
        th = np.array([t.array for t in self.thetas])
        ga = np.array([g.array for g in self.gammas])
        return th @ ga.T


def validate(code: CssCode) -> ValidationReport:
    prod = code.commutator() % 2
    bad = np.argwhere(prod)
    if bad.size:
        i, k = (int(x) for x in bad[0])
        raise CommutativityViolation((i, k), int(code.commutator()[i, k]))
    rx = rank_mod2(code.hx2)
    rz = rank_mod2(code.hz2)
    return ValidationReport(
        n=code.n,
        m_x=code.m_x,
        m_z=code.m_z,
        rank_x=rx,
        rank_z=rz,
        k=code.n - rx - rz,
        commutes_mod2=True,
        x_independent=rx == code.m_x,
    )


def max_commutativity_level(code: CssCode, cap: int = DEFAULT_CAP) -> int:
    """Largest m <= cap with H_X H_Z^T = 0 mod 2^m."""
    return two_adic_level(code.commutator(), cap)


def x_generators_independent(code: CssCode) -> bool:
    return rank_mod2(code.hx2) == code.m_x


@dataclass(frozen=True)
class DivisibilityReport:
    weights: tuple
    valuations: tuple
    d: int
    cap: int
    # level nu -> defect of the all-ones vector at level nu, for 1 <= nu <= min(d, cap)
    ones_defects: dict

    @property
    def trivial_below_d(self) -> bool:
        """All-ones defects vanish at every level below d."""
        return all(not any(r) for nu, r in self.ones_defects.items() if nu < self.d)


def divisibility_report(code: CssCode, cap: int = DEFAULT_CAP) -> DivisibilityReport:
    """X-row weights and the largest d with 2^d dividing every weight.

    A zero-weight row (or an empty H_X) counts as valuation ``cap``.
    """
    if code.entry_exponent != 1:
        raise ValueError("divisibility is defined for binary H_X only")
    weights = tuple(int(w) for w in code.hx2.sum(axis=1))
    vals = tuple(min(valuation(w, cap), cap) for w in weights)
    d = min(vals, default=cap)
    defects = {
        nu: tuple((w >> nu) & 1 for w in weights) for nu in range(1, min(d, cap) + 1)
    }
    return DivisibilityReport(weights, vals, d, cap, defects)


def _cycles_and_boundaries(code: CssCode, m: int):
    hx = code.hx.reduce(m)
    hz = code.hz.reduce(m)
    return kernel_basis_mod(hx), hz


def homology_structure(code: CssCode, m: int) -> list:
    """Invariant-factor exponents of H_1(C; Z_{2^m}) = ker H_X / Im H_Z^T.

    The cycle module is presented on its kernel generators; relations are
    the syzygies among those generators plus preimages of the H_Z rows.
    """
    level = max_commutativity_level(code, m)
    if level < m:
        raise IllDefinedHomology(m, level)
    Z, B = _cycles_and_boundaries(code, m)
    t = Z.rows
    if t == 0:
        return []
    zt = Z.T  # n x t: generator coefficients -> cycle
    relations = [r.array for r in kernel_basis_mod(zt)]
    for b in B:
        c = solve_mod(zt, b)
        if c is None:  # pragma: no cover - excluded by the commutativity check
            raise IllDefinedHomology(m, level)
        relations.append(c.array)
    rel = ResidueMatrix(np.array(relations) if relations else [], m, cols=t)
    return module_invariants(rel)


def _quotient_representatives(kernel: ResidueMatrix, image: np.ndarray) -> list:
    """Kernel rows independent modulo ``image`` (binary), chosen greedily in order."""
    n = kernel.cols
    span_rows = [row for row in image % 2]
    picked = []
    for row in kernel:
        current = ResidueMatrix(np.array(span_rows) if span_rows else [], 1, cols=n)
        if not in_row_span(current, row.array):
            picked.append(row)
            span_rows.append(row.array)
    return picked


def logical_bases(code: CssCode) -> LogicalBasis:
    """Cocycle and cycle representatives with <theta_a, gamma_b> = delta_ab mod 2."""
    hx2 = ResidueMatrix(code.hx2, 1, cols=code.n)
    hz2 = ResidueMatrix(code.hz2, 1, cols=code.n)
    gammas = _quotient_representatives(kernel_basis_mod(hz2), hx2.array)
    thetas = _quotient_representatives(kernel_basis_mod(hx2), hz2.array)
    if not gammas:
        return LogicalBasis()
    basis = LogicalBasis(tuple(gammas), tuple(thetas))
    pairing = ResidueMatrix(basis.pairing_matrix(), 1)
    inv = inverse_mod(pairing)
    if inv is None:  # pragma: no cover - the homology pairing is perfect
        raise ArithmeticError("degenerate homology pairing")
    th = np.array([t.array for t in thetas])
    dual = inv.array @ th % 2
    return LogicalBasis(tuple(gammas), tuple(ResidueVector(r, 1) for r in dual))


def is_cycle_vector(code: CssCode, theta, m: int) -> bool:
    theta = np.asarray(theta, dtype=np.int64)
    if theta.shape != (code.n,):
        raise DimensionMismatch(f"vector has length {theta.shape}, code has n={code.n}")
    if code.m_x == 0:
        return True
    return not (int_product(code.hx.array, theta) % (1 << m)).any()


def classes_equal(code: CssCode, theta1, theta2, m: int):
    """Whether two level-m cycles differ by a boundary; returns ``(equal, s)``."""
    t1 = np.asarray(getattr(theta1, "array", theta1), dtype=np.int64)
    t2 = np.asarray(getattr(theta2, "array", theta2), dtype=np.int64)
    for t in (t1, t2):
        if not is_cycle_vector(code, t, m):
            raise NotACycle(m)
    diff = ResidueVector(t1 - t2, m)
    s = solve_mod(code.hz.reduce(m).T, diff)
    return s is not None, s
