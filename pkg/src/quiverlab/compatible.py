"""Euler matrices of ice quivers and compatible Poisson pairs."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import BadOrdering, EulerSingular, IndexFrozen
from .icequiver import IceQuiver
from .matrices import IntMatrix, bareiss_det, det_inv


def euler_matrix(iq: IceQuiver, order=None) -> IntMatrix:
    """m x m Euler matrix for a vertex ordering listing unfrozen ids first.

    Off-diagonal entry (i, j) counts unfrozen arrows i -> j minus all
    arrows j -> i; the diagonal is 0 on unfrozen and 1 on frozen vertices.
    """
    if order is None:
        order = iq.default_order()
    order = list(order)
    if sorted(map(repr, order)) != sorted(map(repr, iq.vertex_ids())):
        raise BadOrdering("ordering must list every vertex exactly once")
    n = len(iq.unfrozen_ids())
    if any(iq.is_frozen(v) for v in order[:n]) or any(not iq.is_frozen(v) for v in order[n:]):
        raise BadOrdering("unfrozen vertices must come first")
    rows = []
    for i, vi in enumerate(order):
        row = []
        for j, vj in enumerate(order):
            if i == j:
                row.append(1 if iq.is_frozen(vi) else 0)
            else:
                row.append(
                    iq.arrow_count(vi, vj, unfrozen_only=True) - iq.arrow_count(vj, vi)
                )
        rows.append(row)
    return IntMatrix.from_rows(rows)


def btilde_of(bhat: IntMatrix, n: int) -> IntMatrix:
    """Extended exchange matrix: the first n columns of the Euler matrix."""
    return bhat.submatrix(range(bhat.rows), range(n))


@dataclass(frozen=True)
class CompatiblePair:
    btilde: IntMatrix  # m x n
    lam: IntMatrix  # m x m skew-symmetric
    d: int  # type scalar, S = d * I_n

    def __post_init__(self):
        m, n = self.btilde.rows, self.btilde.cols
        assert self.lam.rows == self.lam.cols == m
        assert self.lam.is_skew_symmetric(), "lambda must be skew-symmetric"
        prod = self.btilde.transpose() * self.lam
        for i in range(n):
            for j in range(m):
                want = self.d if i == j else 0
                assert prod[i, j] == want, f"compatibility fails at ({i},{j})"

    @property
    def m(self):
        return self.btilde.rows

    @property
    def n(self):
        return self.btilde.cols


def build_pair(iq: IceQuiver, order=None):
    """Compatible pair of an ice quiver: Lambda = |det| (B^-T - B^-1).

    Returns (pair, bhat).  Raises EulerSingular when det(bhat) = 0.
    """
    bhat = euler_matrix(iq, order)
    det = bareiss_det(bhat)
    if det == 0:
        raise EulerSingular("Euler matrix is singular")
    _, num, den = det_inv(bhat)  # inverse = num / den, den = |det|
    lam = num.transpose() - num  # |det| * (B^-T - B^-1)
    n = len(iq.unfrozen_ids())
    pair = CompatiblePair(btilde_of(bhat, n), lam, 2 * abs(det))
    return pair, bhat


def e_matrix(bhat: IntMatrix, v: int) -> IntMatrix:
    """The involutive matrix E_v built from column v of the Euler matrix."""
    m = bhat.rows
    rows = []
    for i in range(m):
        row = []
        for j in range(m):
            if j != v:
                row.append(1 if i == j else 0)
            elif i == v:
                row.append(-1)
            else:
                row.append(max(bhat[i, v], 0))
        rows.append(row)
    return IntMatrix.from_rows(rows)


def _lambda_componentwise(lam: IntMatrix, bhat: IntMatrix, v: int) -> IntMatrix:
    m = lam.rows
    rows = []
    for i in range(m):
        row = []
        for j in range(m):
            if i != v and j == v:
                row.append(-lam[i, v] + sum(max(bhat[l, v], 0) * lam[i, l] for l in range(m)))
            elif i == v and j != v:
                row.append(-lam[v, j] + sum(max(bhat[l, v], 0) * lam[l, j] for l in range(m)))
            else:
                row.append(lam[i, j])
        rows.append(row)
    return IntMatrix.from_rows(rows)


def _bhat_componentwise(bhat: IntMatrix, v: int) -> IntMatrix:
    m = bhat.rows
    rows = []
    for i in range(m):
        row = []
        for j in range(m):
            if i == j:
                row.append(bhat[i, j])
            elif i == v or j == v:
                row.append(-bhat[i, j])
            else:
                row.append(
                    bhat[i, j]
                    + max(bhat[i, v], 0) * max(bhat[v, j], 0)
                    - max(-bhat[i, v], 0) * max(-bhat[v, j], 0)
                )
        rows.append(row)
    return IntMatrix.from_rows(rows)


def mutate_pair(pair: CompatiblePair, bhat: IntMatrix, v: int):
    """Mutation of the pair at unfrozen index v via E_v conjugation.

    Also evaluates the component-wise mutation formulas and asserts both
    routes agree.  Returns (pair', bhat').
    """
    if not (0 <= v < pair.n):
        raise IndexFrozen(f"index {v} is not an unfrozen index")
    ev = e_matrix(bhat, v)
    assert ev * ev == IntMatrix.identity(bhat.rows), "E_v must square to identity"
    bhat2 = ev * bhat * ev.transpose()
    lam2 = ev.transpose() * pair.lam * ev
    assert bhat2 == _bhat_componentwise(bhat, v), "Euler mutation: routes disagree"
    assert lam2 == _lambda_componentwise(pair.lam, bhat, v), "lambda mutation: routes disagree"
    return CompatiblePair(btilde_of(bhat2, pair.n), lam2, pair.d), bhat2
