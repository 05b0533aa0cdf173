"""Partition-class arithmetic: which realising matrices are powers?

The ``predict_*`` functions map the partition data of a source matrix B
to the partition class of B**c; the ``decide_*`` functions answer the
inverse question: given a target-class matrix A, is A = B**c for some
realising B?  ``oracle_power_partition`` settles individual cases by
exact matrix powering.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arc_powers import power_targets
from .digraph import BudgetError
from .farey import ArcId, ArcType, arc_params, mod_index
from .realizations import (
    PartitionClass,
    SparseStochasticMatrix,
    build_typeI,
    build_typeII,
    build_typeIII,
    partition_class_of,
)


@dataclass(frozen=True)
class PowerPrediction:
    """Partition class of B**c from the partition data of B.

    ``grid`` and ``grid_ordered`` are the d_hat x c working tables (the
    split of each source part into c pieces, before and after the
    column reordering); the target class is the column-stacking of
    ``grid_ordered``.
    """

    source: ArcId
    target: ArcId
    c: int
    source_partition: PartitionClass | None
    target_partition: PartitionClass
    grid: tuple
    grid_ordered: tuple


def _stack_columns(grid) -> tuple:
    rows, cols = len(grid), len(grid[0])
    return tuple(grid[i][j] for j in range(cols) for i in range(rows))


def predict_TII_to_TII(q: int, c: int, d_hat: int, z_hat) -> PowerPrediction:
    """Power a type II source with d_hat q*c-cycles down to c*d_hat q-cycles.

    Source part ``z_hat_i = (w_i + 1) * c - beta_i`` splits into
    ``beta_i`` pieces equal to ``w_i`` and ``c - beta_i`` pieces equal
    to ``w_i + 1``; a part of zero splits into zeros (``beta_i = 0``,
    ``w_i = -1``).  Row i of the ordered grid is row i of the split
    table read from column ``<1 - (j-1)*B - sum(beta_1..beta_{i-1})>_c``
    with B the total of the betas.
    """
    z_hat = tuple(int(v) for v in z_hat)
    if c < 2 or d_hat < 1 or len(z_hat) != d_hat:
        raise ValueError("need c >= 2 and one source part per source cycle")
    z = sum(z_hat)
    n = c * d_hat * q
    if any(v < 0 for v in z_hat):
        raise ValueError("parts must be nonnegative")
    if not 1 <= z <= q - 1:
        raise ValueError(f"total z={z} must lie in 1..q-1")
    source = ArcId(n, c * q, n - z)
    target = ArcId(n, q, n - z)
    beta, w = [], []
    for v in z_hat:
        if v == 0:
            beta.append(0)
            w.append(-1)
        else:
            m = mod_index(v, c)
            beta.append(c - m)
            w.append((v - m) // c)
    grid = tuple(
        tuple(w[i] if j <= beta[i] else w[i] + 1 for j in range(1, c + 1))
        for i in range(d_hat)
    )
    total = sum(beta)
    acc = 0
    ordered = []
    for i in range(d_hat):
        row = tuple(
            grid[i][mod_index(1 - (j - 1) * total - acc, c) - 1]
            for j in range(1, c + 1)
        )
        ordered.append(row)
        acc += beta[i]
    ordered = tuple(ordered)
    return PowerPrediction(
        source,
        target,
        c,
        PartitionClass(z_hat),
        PartitionClass(_stack_columns(ordered)),
        grid,
        ordered,
    )


def predict_TI_to_TII(q: int, d: int, z: int) -> PowerPrediction:
    """Power a type I source (one n-cycle and one (n-z)-cycle) by c = d."""
    return predict_TII_to_TII(q, d, 1, (z,))


def predict_TIII_to_TIII(q: int, c: int, d_hat: int, y: int, y_hat=None) -> PowerPrediction:
    """Power a type III source with d_hat blocks down to c*d_hat blocks.

    Source gap ``y_hat_i = u_i * c + beta_i`` (0 <= beta_i < c) splits
    into ``beta_i`` gaps of ``u_i + 1`` placed cyclically after the
    running total of earlier betas, the rest being ``u_i``.  Column j of
    the ordered grid is column ``<1 - (j-1)*y>_c`` of the split table.
    """
    if y_hat is None:
        raise ValueError("the source gap vector y_hat is required")
    y_hat = tuple(int(v) for v in y_hat)
    if c < 2 or d_hat < 1 or len(y_hat) != d_hat:
        raise ValueError("need c >= 2 and one source gap per block")
    if any(v < 0 for v in y_hat):
        raise ValueError("gaps must be nonnegative")
    if sum(y_hat) != y:
        raise ValueError(f"gaps sum to {sum(y_hat)}, expected y={y}")
    n = c * d_hat * q + y
    if not 1 <= y <= q - 1:
        raise ValueError(f"total y={y} must lie in 1..q-1")
    source = ArcId(n, c * q, n)
    target = ArcId(n, q, n)
    u = [v // c for v in y_hat]
    beta = [v % c for v in y_hat]
    grid = []
    gamma = 0
    for i in range(d_hat):
        hot = {mod_index(gamma + t, c) for t in range(1, beta[i] + 1)}
        grid.append(tuple(u[i] + 1 if j in hot else u[i] for j in range(1, c + 1)))
        gamma = (gamma + beta[i]) % c
    grid = tuple(grid)
    ordered = tuple(
        tuple(grid[i][mod_index(1 - (j - 1) * y, c) - 1] for j in range(1, c + 1))
        for i in range(d_hat)
    )
    return PowerPrediction(
        source,
        target,
        c,
        PartitionClass(y_hat),
        PartitionClass(_stack_columns(ordered)),
        grid,
        ordered,
    )


def predict_TI_to_TIII(q: int, d: int, y: int) -> PowerPrediction:
    """Power a type I source (one n-cycle, n = q*d + y) by c = d."""
    return predict_TIII_to_TIII(q, d, 1, y, (y,))


@dataclass(frozen=True)
class PowerDecision:
    """Answer to "is some B with B**c in this class realising?"."""

    verdict: bool
    witness: PartitionClass | None
    witnesses: tuple


def _tracks(vec, c: int, d_hat: int):
    """Split a length c*d_hat vector into d_hat stride-d_hat tracks."""
    return [[vec[t * d_hat + i] for t in range(c)] for i in range(d_hat)]


def decide_power_TII(target: ArcId, c: int, partition) -> PowerDecision:
    """Is a type II matrix in this class the c-th power of a realiser?

    Tries every rotation of the class; a rotation is admissible when
    each stride track takes at most two adjacent values, and the
    candidate source part it determines reproduces the class under
    ``predict_TII_to_TII``.
    """
    params = arc_params(target)
    if params.arc_type is not ArcType.TYPE_II:
        raise ValueError(f"{target} is not a type II arc")
    if c < 2:
        raise ValueError("power must be at least 2")
    cls = partition if isinstance(partition, PartitionClass) else PartitionClass(partition)
    if len(cls) != params.d or cls.total != params.excess:
        raise ValueError("partition does not match the arc")
    if params.d % c != 0:
        return PowerDecision(False, None, ())
    d_hat = params.d // c
    q, z = target.q, params.excess
    witnesses = []
    for vec in cls.rotations():
        z_hat = []
        for track in _tracks(vec, c, d_hat):
            lo, hi = min(track), max(track)
            if hi - lo > 1:
                break
            if lo == hi:
                w, beta = lo - 1, 0
            else:
                w, beta = lo, track.count(lo)
            z_hat.append(c * (w + 1) - beta)
        else:
            if any(v < 0 for v in z_hat) or sum(z_hat) != z:
                continue
            try:
                pred = predict_TII_to_TII(q, c, d_hat, tuple(z_hat))
            except ValueError:
                continue
            if pred.target_partition == cls:
                cand = PartitionClass(z_hat)
                if cand not in witnesses:
                    witnesses.append(cand)
    return PowerDecision(bool(witnesses), witnesses[0] if witnesses else None, tuple(witnesses))


def decide_power_TIII(target: ArcId, c: int, partition) -> PowerDecision:
    """Is a type III matrix in this class the c-th power of a realiser?"""
    params = arc_params(target)
    if params.arc_type is not ArcType.TYPE_III:
        raise ValueError(f"{target} is not a type III arc")
    if c < 2:
        raise ValueError("power must be at least 2")
    cls = partition if isinstance(partition, PartitionClass) else PartitionClass(partition)
    if len(cls) != params.d or cls.total != params.excess:
        raise ValueError("partition does not match the arc")
    if params.d % c != 0:
        return PowerDecision(False, None, ())
    d_hat = params.d // c
    q, y = target.q, params.excess
    witnesses = []
    for vec in cls.rotations():
        y_hat = []
        for track in _tracks(vec, c, d_hat):
            lo, hi = min(track), max(track)
            if hi - lo > 1:
                break
            if lo == hi:
                u, beta = lo, 0
            else:
                u, beta = lo, track.count(hi)
            y_hat.append(u * c + beta)
        else:
            if sum(y_hat) != y:
                continue
            try:
                pred = predict_TIII_to_TIII(q, c, d_hat, y, tuple(y_hat))
            except ValueError:
                continue
            if pred.target_partition == cls:
                cand = PartitionClass(y_hat)
                if cand not in witnesses:
                    witnesses.append(cand)
    return PowerDecision(bool(witnesses), witnesses[0] if witnesses else None, tuple(witnesses))


def oracle_power_partition(
    source: ArcId,
    c: int,
    partition=None,
    alpha=Fraction(1, 2),
    budget: int = 64,
) -> PartitionClass:
    """Partition class of B**c by exact rational matrix powering.

    B is the realising matrix of the source arc (with the given
    partition where the type needs one); the class is extracted
    structurally from the support of B**c against the target arc of the
    corresponding power relation.
    """
    if source.n > budget:
        raise BudgetError(f"order {source.n} exceeds the oracle budget of {budget}")
    params = arc_params(source)
    if params.arc_type is ArcType.TYPE_I:
        B = build_typeI(source, alpha)
    elif params.arc_type is ArcType.TYPE_II:
        B = build_typeII(source, PartitionClass(partition), alpha)
    elif params.arc_type is ArcType.TYPE_III:
        B = build_typeIII(source, PartitionClass(partition), alpha)
    else:
        raise ValueError(f"{source} has no supported realising matrix")
    if c == 1:
        return partition_class_of(B, source)
    rel = next((r for r in power_targets(source) if r.c == c), None)
    if rel is None:
        raise ValueError(f"{source} has no power relation at c={c}")
    return partition_class_of(B.matrix_power(c), rel.target)
