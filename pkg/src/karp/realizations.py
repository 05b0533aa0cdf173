"""Sparsest stochastic matrices realising boundary eigenvalues.

Matrices are exact: entries are Fractions and every row sums to one.
Each supported arc type has one builder; ``partition_class_of`` goes the
other way and reads the cyclic partition class off a matrix support.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .digraph import Digraph
from .farey import ArcId, ArcType, arc_params, mod_index


class ClassificationError(ValueError):
    """The matrix support does not have the expected arc structure."""


@dataclass(frozen=True)
class PartitionClass:
    """Composition vector up to cyclic rotation.

    Stored as the lexicographically smallest rotation, so two classes
    are equal iff the vectors are rotations of each other.
    """

    parts: tuple

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if not parts:
            raise ValueError("partition must have at least one part")
        if any(p < 0 for p in parts):
            raise ValueError("parts must be nonnegative")
        best = min(parts[i:] + parts[:i] for i in range(len(parts)))
        object.__setattr__(self, "parts", best)

    def rotations(self) -> list:
        p = self.parts
        return [p[i:] + p[:i] for i in range(len(p))]

    @property
    def total(self) -> int:
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    def __str__(self):
        return "T(" + ",".join(str(p) for p in self.parts) + ")"


class SparseStochasticMatrix:
    """Row-stochastic matrix in sparse triplet form, 1-indexed."""

    def __init__(self, n: int, entries: dict):
        if n < 1:
            raise ValueError("dimension must be positive")
        self.n = n
        self.entries = {}
        rowsum = {i: Fraction(0) for i in range(1, n + 1)}
        for (i, j), w in entries.items():
            if not (1 <= i <= n and 1 <= j <= n):
                raise ValueError(f"index ({i},{j}) out of range")
            w = Fraction(w)
            if w < 0:
                raise ValueError(f"negative entry at ({i},{j})")
            if w > 0:
                self.entries[(i, j)] = w
                rowsum[i] += w
        for i, s in rowsum.items():
            if s != 1:
                raise ValueError(f"row {i} sums to {s}, not 1")

    def __getitem__(self, idx):
        return self.entries.get(idx, Fraction(0))

    def __eq__(self, other):
        return (
            isinstance(other, SparseStochasticMatrix)
            and self.n == other.n
            and self.entries == other.entries
        )

    def digraph(self) -> Digraph:
        return Digraph(self.n, frozenset(self.entries), dict(self.entries))

    def nnz(self) -> int:
        return len(self.entries)

    def __matmul__(self, other: "SparseStochasticMatrix") -> "SparseStochasticMatrix":
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        rows = {}
        for (i, k), w in self.entries.items():
            rows.setdefault(i, []).append((k, w))
        other_rows = {}
        for (k, j), w in other.entries.items():
            other_rows.setdefault(k, []).append((j, w))
        out = {}
        for i, row in rows.items():
            acc = {}
            for k, w in row:
                for j, w2 in other_rows.get(k, ()):
                    acc[j] = acc.get(j, Fraction(0)) + w * w2
            for j, w in acc.items():
                if w != 0:
                    out[(i, j)] = w
        return SparseStochasticMatrix(self.n, out)

    def matrix_power(self, c: int) -> "SparseStochasticMatrix":
        if c < 1:
            raise ValueError("power must be a positive integer")
        result = None
        sq = self
        while c:
            if c & 1:
                result = sq if result is None else result @ sq
            c >>= 1
            if c:
                sq = sq @ sq
        return result

    def to_triplets(self) -> str:
        lines = [f"n={self.n}"]
        for (i, j), w in sorted(self.entries.items()):
            lines.append(f"{i} {j} {w}")
        return "\n".join(lines)

    def dense(self) -> list:
        return [
            [self[(i, j)] for j in range(1, self.n + 1)] for i in range(1, self.n + 1)
        ]


def _as_alpha(alpha) -> Fraction:
    alpha = Fraction(alpha)
    if not 0 < alpha < 1:
        raise ValueError("alpha must lie strictly between 0 and 1")
    return alpha


def build_type0(n: int, alpha) -> SparseStochasticMatrix:
    """(1 - alpha) * I + alpha * (cyclic shift)."""
    alpha = _as_alpha(alpha)
    entries = {}
    for i in range(1, n + 1):
        entries[(i, i)] = entries.get((i, i), Fraction(0)) + (1 - alpha)
        j = mod_index(i + 1, n)
        entries[(i, j)] = entries.get((i, j), Fraction(0)) + alpha
    return SparseStochasticMatrix(n, entries)


def build_typeI(arc: ArcId, alpha) -> SparseStochasticMatrix:
    """n-cycle plus the chord (q, 1); chord weight 1 - alpha."""
    alpha = _as_alpha(alpha)
    params = arc_params(arc)
    if params.arc_type is not ArcType.TYPE_I:
        raise ValueError(f"{arc} is not a type I arc")
    n, q = arc.n, arc.q
    entries = {}
    for i in range(1, n + 1):
        entries[(i, mod_index(i + 1, n))] = Fraction(1)
    entries[(q, q + 1)] = alpha
    entries[(q, 1)] = 1 - alpha
    return SparseStochasticMatrix(n, entries)


def build_typeII(arc: ArcId, partition, alpha) -> SparseStochasticMatrix:
    """d disjoint q-cycles linked into an s-cycle by d chords.

    Cycle i occupies vertices (i-1)*q + 1, ..., i*q; its chord leaves
    vertex i*q - z_i with weight alpha towards the next cycle, and the
    q-cycle edge out of the same vertex keeps weight 1 - alpha.  The
    partition lists how many vertices of each q-cycle the s-cycle skips.
    """
    alpha = _as_alpha(alpha)
    params = arc_params(arc)
    if params.arc_type is not ArcType.TYPE_II:
        raise ValueError(f"{arc} is not a type II arc")
    n, q, d, z = arc.n, arc.q, params.d, params.excess
    parts = partition.parts if isinstance(partition, PartitionClass) else tuple(partition)
    if len(parts) != d:
        raise ValueError(f"partition must have d={d} parts")
    if sum(parts) != z:
        raise ValueError(f"partition must sum to z={z}")
    if any(not 0 <= p <= q - 1 for p in parts):
        raise ValueError("each part must lie in {0, ..., q-1}")
    entries = {}
    for i in range(1, d + 1):
        base = (i - 1) * q
        for j in range(1, q + 1):
            u = base + j
            v = base + mod_index(j + 1, q)
            entries[(u, v)] = Fraction(1)
        src = i * q - parts[i - 1]
        succ = base + mod_index(src - base + 1, q)
        entries[(src, succ)] = 1 - alpha
        entries[(src, mod_index(i * q + 1, n))] = alpha
    return SparseStochasticMatrix(n, entries)


def build_typeIII(arc: ArcId, partition, alpha) -> SparseStochasticMatrix:
    """n-cycle with d chords closing q-cycles; chord weight 1 - alpha.

    Block i of q consecutive n-cycle vertices is preceded by a gap of
    y_i vertices; the chord returns from the block's last vertex to its
    first one, and the displaced n-cycle edge there keeps weight alpha.
    """
    alpha = _as_alpha(alpha)
    params = arc_params(arc)
    if params.arc_type is not ArcType.TYPE_III:
        raise ValueError(f"{arc} is not a type III arc")
    n, q, d, y = arc.n, arc.q, params.d, params.excess
    parts = partition.parts if isinstance(partition, PartitionClass) else tuple(partition)
    if len(parts) != d:
        raise ValueError(f"partition must have d={d} parts")
    if sum(parts) != y:
        raise ValueError(f"partition must sum to y={y}")
    if any(p < 0 for p in parts):
        raise ValueError("parts must be nonnegative")
    entries = {}
    for i in range(1, n + 1):
        entries[(i, mod_index(i + 1, n))] = Fraction(1)
    acc = 0
    for i in range(1, d + 1):
        acc += parts[i - 1]
        src = i * q + acc
        entries[(src, mod_index(src + 1, n))] = alpha
        entries[(src, 1 + (i - 1) * q + acc)] = 1 - alpha
    return SparseStochasticMatrix(n, entries)


def _walk_hits(adj, u, v, steps):
    """Walk ``steps`` out-degree-one edges from v; land exactly on u?"""
    cur = v
    for _ in range(steps):
        if cur == u or len(adj[cur]) != 1:
            return False
        cur = adj[cur][0]
    return cur == u


def partition_class_of(m: SparseStochasticMatrix, arc: ArcId) -> PartitionClass:
    """Read the partition class off the support of a realising matrix.

    Purely structural (ignores the weights), so it also applies to
    powers of realising matrices whose support has the right shape.
    """
    params = arc_params(arc)
    if params.arc_type is ArcType.TYPE_II:
        return _partition_typeII(m, params)
    if params.arc_type is ArcType.TYPE_III:
        return _partition_typeIII(m, params)
    raise ClassificationError(f"{arc} does not carry a partition (type {params.arc_type.value})")


def _partition_typeII(m, params):
    n, q, s, d, z = params.n, params.q, params.s, params.d, params.excess
    if m.n != n:
        raise ClassificationError(f"matrix is {m.n}x{m.n}, arc has order {n}")
    adj = {u: [] for u in range(1, n + 1)}
    for u, v in m.entries:
        adj[u].append(v)
    chord_src = sorted(u for u in adj if len(adj[u]) == 2)
    if any(len(adj[u]) not in (1, 2) for u in adj):
        raise ClassificationError("out-degrees other than 1 and 2 present")
    if len(chord_src) != d:
        raise ClassificationError(f"expected {d} chord sources, found {len(chord_src)}")
    cyc_edge, chord_edge = {}, {}
    for u in chord_src:
        back = [v for v in adj[u] if _walk_hits(adj, u, v, q - 1)]
        if len(back) != 1:
            raise ClassificationError(f"vertex {u} does not sit on a unique {q}-cycle")
        cyc_edge[u] = back[0]
        chord_edge[u] = next(v for v in adj[u] if v != back[0])
    # the long cycle: follow chords at chord sources, cycle edges elsewhere
    start = chord_edge[chord_src[0]]
    walk, cur = [], start
    for _ in range(n + 1):
        walk.append(cur)
        cur = chord_edge[cur] if cur in chord_edge else adj[cur][0]
        if cur == start:
            break
    else:
        raise ClassificationError("the long cycle does not close")
    if len(walk) != s:
        raise ClassificationError(f"long cycle has length {len(walk)}, expected {s}")
    # q-cycles: walk cycle edges from each chord source
    cycle_id, sizes = {}, {}
    for u in chord_src:
        cur, seen = u, []
        for _ in range(q):
            seen.append(cur)
            cur = cyc_edge[cur] if cur in cyc_edge else adj[cur][0]
        if cur != u:
            raise ClassificationError(f"{q}-cycle through {u} does not close")
        for v in seen:
            if v in cycle_id:
                raise ClassificationError(f"{q}-cycles overlap at vertex {v}")
            cycle_id[v] = u
        sizes[u] = len(seen)
    if len(cycle_id) != n:
        raise ClassificationError("the q-cycles do not cover all vertices")
    # partition: per q-cycle, how many of its vertices the long cycle skips
    on_long = set(walk)
    order, last = [], None
    for v in walk:
        cid = cycle_id[v]
        if cid != last:
            order.append(cid)
            last = cid
    if order and order[0] == order[-1] and len(order) > 1:
        order.pop()
    if sorted(order) != chord_src:
        raise ClassificationError("long cycle does not visit each q-cycle once")
    parts = tuple(q - sum(1 for v in walk if cycle_id[v] == cid) for cid in order)
    if sum(parts) != z:
        raise ClassificationError(f"partition sums to {sum(parts)}, expected {z}")
    return PartitionClass(parts)


def _partition_typeIII(m, params):
    n, q, d, y = params.n, params.q, params.d, params.excess
    if m.n != n:
        raise ClassificationError(f"matrix is {m.n}x{m.n}, arc has order {n}")
    adj = {u: [] for u in range(1, n + 1)}
    for u, v in m.entries:
        adj[u].append(v)
    chord_src = sorted(u for u in adj if len(adj[u]) == 2)
    if any(len(adj[u]) not in (1, 2) for u in adj):
        raise ClassificationError("out-degrees other than 1 and 2 present")
    if len(chord_src) != d:
        raise ClassificationError(f"expected {d} chord sources, found {len(chord_src)}")
    long_edge, chord_edge = {}, {}
    for u in chord_src:
        back = [v for v in adj[u] if _walk_hits(adj, u, v, q - 1)]
        if len(back) != 1:
            raise ClassificationError(f"vertex {u} does not close a unique {q}-cycle")
        chord_edge[u] = back[0]
        long_edge[u] = next(v for v in adj[u] if v != back[0])
    # the n-cycle: take the non-chord edge everywhere
    start = chord_src[0]
    walk, cur = [], start
    for _ in range(n + 1):
        walk.append(cur)
        cur = long_edge[cur] if cur in long_edge else adj[cur][0]
        if cur == start:
            break
    else:
        raise ClassificationError("the n-cycle does not close")
    if len(walk) != n:
        raise ClassificationError(f"outer cycle misses vertices ({len(walk)} of {n})")
    # blocks: q consecutive n-cycle vertices ending at each chord source
    pos = {v: i for i, v in enumerate(walk)}
    in_block = {}
    for u in chord_src:
        first = chord_edge[u]
        if (pos[u] - pos[first]) % n != q - 1:
            raise ClassificationError(f"chord at {u} does not span {q} vertices")
        for t in range(q):
            v = walk[(pos[first] + t) % n]
            if v in in_block:
                raise ClassificationError(f"blocks overlap at vertex {v}")
            in_block[v] = u
    # gaps between consecutive blocks, read along the n-cycle
    first_block_start = pos[chord_edge[chord_src[0]]]
    parts, gap = [], 0
    for t in range(n):
        v = walk[(first_block_start + t) % n]
        if v in in_block:
            if v == chord_edge[in_block[v]]:  # block start: close the gap
                parts.append(gap)
                gap = 0
        else:
            gap += 1
    # the gap trailing the last block wraps around to precede the first
    parts[0] += gap
    if len(parts) != d or sum(parts) != y:
        raise ClassificationError("gap structure does not match (d, y)")
    return PartitionClass(tuple(parts))


def char_poly(m: SparseStochasticMatrix, budget: int = 400) -> tuple:
    """Characteristic polynomial det(tI - A), exactly.

    Returns monic coefficients as Fractions, lowest power first.  Works
    by exact similarity reduction to Hessenberg form followed by the
    standard leading-minor recurrence; refuses matrices above the
    dimension budget.
    """
    n = m.n
    if n > budget:
        raise ClassificationError(
            f"dimension {n} exceeds the characteristic-polynomial budget of {budget}"
        )
    H = [[m[(i, j)] for j in range(1, n + 1)] for i in range(1, n + 1)]
    for j in range(n - 2):
        piv = next((i for i in range(j + 1, n) if H[i][j] != 0), None)
        if piv is None:
            continue
        if piv != j + 1:
            H[piv], H[j + 1] = H[j + 1], H[piv]
            for row in H:
                row[piv], row[j + 1] = row[j + 1], row[piv]
        for i in range(j + 2, n):
            if H[i][j] == 0:
                continue
            f = H[i][j] / H[j + 1][j]
            for k in range(j, n):
                H[i][k] -= f * H[j + 1][k]
            for k in range(n):
                H[k][j + 1] += f * H[k][i]
    # p_k(t) = (t - H[k][k]) p_{k-1} - sum_i H[i][k] (prod subdiag) p_{i-1}
    polys = [(Fraction(1),)]
    for k in range(n):
        prev = polys[k]
        cur = [Fraction(0)] * (len(prev) + 1)
        for e, c in enumerate(prev):
            cur[e + 1] += c
            cur[e] -= H[k][k] * c
        run = Fraction(1)
        for i in range(k - 1, -1, -1):
            run *= H[i + 1][i]
            if run == 0:
                break
            coef = H[i][k] * run
            if coef != 0:
                for e, c in enumerate(polys[i]):
                    cur[e] -= coef * c
        polys.append(tuple(cur))
    return polys[n]
