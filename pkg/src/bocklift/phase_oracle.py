"""Brute-force ground truth for diagonal phases on stabilizer cosets.

A logical basis state |[gamma]> is the uniform superposition over the XOR
coset ``gamma + rowspace(H_X mod 2)``.  A transversal rotation with level-m
phase vector ``theta`` multiplies the basis string ``v`` by
``exp(i pi <theta, v> / 2^(m-1))``; it acts as a logical diagonal gate iff
``<theta, v> mod 2^m`` is constant on every coset.  Nothing here uses cycles,
boundaries or Bockstein defects.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .bockstein import is_cycle
from .css_model import CssCode, logical_bases
from .errors import CapExceeded, DimensionMismatch, LevelMismatch, NotACocycle, NotLogical
from .ring_linalg import ResidueMatrix, howell_form, xor_span

RANK_CAP = 20
CLASS_CAP = 12


@dataclass(frozen=True)
class LogicalActionTable:
    """Phase exponent per logical class; class label = coefficients over the gamma basis."""

    level: int
    entries: dict

    def squared(self) -> dict:
        """Table of the squared rotation, read at one level lower."""
        mod = 1 << (self.level - 1)
        return {label: p % mod for label, p in self.entries.items()}


@dataclass(frozen=True)
class LogicalityCheck:
    logical: bool
    offending: Optional[tuple]

    def __bool__(self):
        return self.logical


@dataclass(frozen=True)
class SquareRootCheck:
    holds: bool
    lift_logical: bool
    lift_offending: Optional[tuple]
    base_table: dict
    lift_table: Optional[dict]

    def __bool__(self):
        return self.holds


@dataclass(frozen=True)
class FormalPhysicalReport:
    level: int
    formal_cycle: bool
    physical_logical: bool
    witness: Optional[tuple]

    @property
    def agree(self) -> bool:
        return self.formal_cycle == self.physical_logical


def _stabilizer_strings(code: CssCode, rank_cap: int) -> np.ndarray:
    hx2 = ResidueMatrix(code.hx2, 1, cols=code.n)
    basis, _ = howell_form(hx2)
    if basis.rows > rank_cap:
        raise CapExceeded(f"rank(H_X mod 2) = {basis.rows} exceeds cap {rank_cap}")
    return xor_span(basis.array, code.n)


def _cocycle(code: CssCode, gamma) -> np.ndarray:
    gamma = np.asarray(getattr(gamma, "array", gamma), dtype=np.uint8) & 1
    if gamma.shape != (code.n,):
        raise DimensionMismatch(f"gamma has length {gamma.shape}, code has n={code.n}")
    if code.m_z and ((code.hz2.astype(np.int64) @ gamma) % 2).any():
        raise NotACocycle(f"gamma {gamma.tolist()} is not in ker H_Z")
    return gamma


def _phases(coset: np.ndarray, theta) -> np.ndarray:
    values = np.asarray(theta.array, dtype=np.int64)
    return (coset.astype(np.int64) @ values) % (1 << theta.level)


def coset_phases(code: CssCode, theta, gamma, rank_cap: int = RANK_CAP) -> Counter:
    """Multiset {<theta, gamma xor h> mod 2^m : h in rowspace(H_X mod 2)}."""
    if len(theta) != code.n:
        raise DimensionMismatch(f"theta has length {len(theta)}, code has n={code.n}")
    gamma = _cocycle(code, gamma)
    strings = _stabilizer_strings(code, rank_cap) ^ gamma
    return Counter(_phases(strings, theta).tolist())


def _class_representatives(code: CssCode, class_cap: int):
    basis = logical_bases(code)
    if basis.k > class_cap:
        raise CapExceeded(f"k = {basis.k} exceeds class cap {class_cap}")
    gammas = np.array([g.array for g in basis.gammas], dtype=np.uint8).reshape(basis.k, code.n)
    for index in range(1 << basis.k):
        label = tuple((index >> b) & 1 for b in range(basis.k))
        rep = np.zeros(code.n, dtype=np.uint8)
        for b, bit in enumerate(label):
            if bit:
                rep ^= gammas[b]
        yield label, rep


def _classify(code, theta, rank_cap, class_cap):
    if len(theta) != code.n:
        raise DimensionMismatch(f"theta has length {len(theta)}, code has n={code.n}")
    stabilizers = _stabilizer_strings(code, rank_cap)
    for label, rep in _class_representatives(code, class_cap):
        values = np.unique(_phases(stabilizers ^ rep, theta))
        yield label, rep, values


def is_logical_diagonal(
    code: CssCode, theta, rank_cap: int = RANK_CAP, class_cap: int = CLASS_CAP
) -> LogicalityCheck:
    """Whether every logical coset sees a single phase; reports the first offending coset."""
    for _, rep, values in _classify(code, theta, rank_cap, class_cap):
        if values.size != 1:
            return LogicalityCheck(False, tuple(int(x) for x in rep))
    return LogicalityCheck(True, None)


def logical_action(
    code: CssCode, theta, rank_cap: int = RANK_CAP, class_cap: int = CLASS_CAP
) -> LogicalActionTable:
    entries = {}
    for label, rep, values in _classify(code, theta, rank_cap, class_cap):
        if values.size != 1:
            raise NotLogical(theta.level, tuple(int(x) for x in rep))
        entries[label] = int(values[0])
    return LogicalActionTable(theta.level, entries)


def same_logical(code: CssCode, theta1, theta2) -> bool:
    if theta1.level != theta2.level:
        raise LevelMismatch(f"levels {theta1.level} and {theta2.level} differ")
    return logical_action(code, theta1).entries == logical_action(code, theta2).entries


def verify_square_root(code: CssCode, theta, theta_hat) -> SquareRootCheck:
    """Whether theta_hat (level m+1) is logical and squares to theta's logical action.

    A non-logical ``theta`` is an error (:class:`NotLogical` with role
    ``"theta"``); a non-logical ``theta_hat`` is a negative verdict.
    """
    if theta_hat.level != theta.level + 1:
        raise LevelMismatch(
            f"theta_hat must sit one level above theta ({theta_hat.level} vs {theta.level})"
        )
    try:
        base = logical_action(code, theta)
    except NotLogical as exc:
        raise NotLogical(exc.level, exc.offending, role="theta") from None
    check = is_logical_diagonal(code, theta_hat)
    if not check:
        return SquareRootCheck(False, False, check.offending, base.entries, None)
    lifted = logical_action(code, theta_hat)
    return SquareRootCheck(
        lifted.squared() == base.entries, True, None, base.entries, lifted.entries
    )


def compare_formal_physical(code: CssCode, theta) -> FormalPhysicalReport:
    """Cycle condition versus oracle logicality; reports either way without ruling."""
    formal = is_cycle(code, theta)
    check = is_logical_diagonal(code, theta)
    return FormalPhysicalReport(theta.level, formal, check.logical, check.offending)

