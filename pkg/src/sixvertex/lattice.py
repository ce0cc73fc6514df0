"""Six-vertex configurations with domain wall boundary conditions.

Lattice layout
--------------
Vertices sit at (row i, column j), 0 <= i, j < n, rows counted from the top.

``h_edges[k][i]`` is the horizontal edge in row ``i`` at slot ``k``: slot k lies
immediately left of column k, slot n is the right boundary.  True means the
arrow points east.  Shape (n+1) x n.

``v_edges[j][k]`` is the vertical edge in column ``j`` at slot ``k``: slot k
lies immediately above row k, slot n is the bottom boundary.  True means the
arrow points north.  Shape n x (n+1).

Vertex types (arrows given as left/right horizontal, top/bottom vertical):

    1: east, east, north, north        (weight a)
    2: west, west, south, south        (weight a)
    3: east, east, south, south        (weight b)
    4: west, west, north, north        (weight b)
    5: west, east, south, north        (weight c; horizontal out, vertical in)
    6: east, west, north, south        (weight c; horizontal in, vertical out)

DWBC: top and bottom boundary arrows point into the square, left and right
boundary arrows point out.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator

from .precision import DomainError, Number
from .weights import ABCWeights, SixWeights

MAX_ENUMERATION_SIZE = 6

# (left east, right east, top north, bottom north) -> type
_TYPE_OF = {
    (True, True, True, True): 1,
    (False, False, False, False): 2,
    (True, True, False, False): 3,
    (False, False, True, True): 4,
    (False, True, False, True): 5,
    (True, False, True, False): 6,
}
_ARROWS_OF = {v: k for k, v in _TYPE_OF.items()}


class ConventionError(AssertionError):
    """Two constructions that must agree under the lattice conventions do not."""


@dataclass(frozen=True)
class Config:
    n: int
    h_edges: tuple[tuple[bool, ...], ...]
    v_edges: tuple[tuple[bool, ...], ...]

    def arrows_at(self, i: int, j: int) -> tuple[bool, bool, bool, bool]:
        return (
            self.h_edges[j][i],
            self.h_edges[j + 1][i],
            self.v_edges[j][i],
            self.v_edges[j][i + 1],
        )

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "h_edges": [list(r) for r in self.h_edges],
            "v_edges": [list(r) for r in self.v_edges],
        }

    @classmethod
    def from_json(cls, data) -> "Config":
        if isinstance(data, str):
            data = json.loads(data)
        c = cls(
            int(data["n"]),
            tuple(tuple(bool(x) for x in r) for r in data["h_edges"]),
            tuple(tuple(bool(x) for x in r) for r in data["v_edges"]),
        )
        validate(c)
        return c


@dataclass(frozen=True)
class VertexCounts:
    counts: tuple[int, int, int, int, int, int]

    def __getitem__(self, vertex_type: int) -> int:
        return self.counts[vertex_type - 1]

    def as_tuple(self) -> tuple[int, ...]:
        return self.counts


@dataclass
class ConservationReport:
    n: int
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def _check_size(n: int) -> None:
    if not 1 <= n <= MAX_ENUMERATION_SIZE:
        raise DomainError(f"enumeration supports 1 <= n <= {MAX_ENUMERATION_SIZE}, got {n}")


def vertex_type(c: Config, i: int, j: int) -> int:
    try:
        return _TYPE_OF[c.arrows_at(i, j)]
    except KeyError:
        raise ConventionError(f"ice rule violated at vertex ({i}, {j})") from None


def vertex_types(c: Config) -> list[list[int]]:
    return [[vertex_type(c, i, j) for j in range(c.n)] for i in range(c.n)]


def validate(c: Config) -> None:
    """Raise ConventionError unless ``c`` obeys the ice rule and DWBC."""
    n = c.n
    if len(c.h_edges) != n + 1 or any(len(r) != n for r in c.h_edges):
        raise ConventionError("h_edges must have shape (n+1) x n")
    if len(c.v_edges) != n or any(len(r) != n + 1 for r in c.v_edges):
        raise ConventionError("v_edges must have shape n x (n+1)")
    for i in range(n):
        if c.h_edges[0][i] or not c.h_edges[n][i]:
            raise ConventionError(f"row {i}: side boundary arrows must point out")
    for j in range(n):
        if c.v_edges[j][0] or not c.v_edges[j][n]:
            raise ConventionError(f"column {j}: top/bottom boundary arrows must point in")
    vertex_types(c)


def enumerate_dwbc(n: int) -> Iterator[Config]:
    """Yield every DWBC configuration once, in lexicographic order of choices.

    Vertices are visited row by row; at each vertex the left and top arrows are
    already fixed and the (right, bottom) pair is chosen among the ice-rule
    completions, False before True.
    """
    _check_size(n)
    h = [[False] * n for _ in range(n + 1)]
    v = [[False] * (n + 1) for _ in range(n)]
    for j in range(n):
        v[j][n] = True
    for i in range(n):
        h[n][i] = True

    def freeze() -> Config:
        return Config(n, tuple(tuple(r) for r in h), tuple(tuple(r) for r in v))

    def visit(pos: int):
        if pos == n * n:
            yield freeze()
            return
        i, j = divmod(pos, n)
        left, top = h[j][i], v[j][i]
        for right in (False, True):
            if j == n - 1 and not right:
                continue
            for bottom in (False, True):
                if i == n - 1 and not bottom:
                    continue
                if (left, right, top, bottom) not in _TYPE_OF:
                    continue
                h[j + 1][i] = right
                v[j][i + 1] = bottom
                yield from visit(pos + 1)
        if j < n - 1:
            h[j + 1][i] = False
        if i < n - 1:
            v[j][i + 1] = False

    yield from visit(0)


def vertex_counts(c: Config) -> VertexCounts:
    tally = Counter(t for row in vertex_types(c) for t in row)
    return VertexCounts(tuple(tally.get(k, 0) for k in range(1, 7)))


def config_weight(c: Config, a: Number, b: Number, cc: Number):
    if min(a, b, cc) <= 0:
        raise DomainError("weights must be positive")
    N = vertex_counts(c)
    return a ** (N[1] + N[2]) * b ** (N[3] + N[4]) * cc ** (N[5] + N[6])


def config_weight_six(c: Config, w: SixWeights):
    result = 1
    for wi, ni in zip(w.as_tuple(), vertex_counts(c).as_tuple()):
        result = result * wi**ni
    return result


def brute_force_partition(n: int, a: Number, b: Number, cc: Number):
    if min(a, b, cc) <= 0:
        raise DomainError("weights must be positive")
    groups = Counter()
    for c in enumerate_dwbc(n):
        N = vertex_counts(c)
        groups[(N[1] + N[2], N[3] + N[4], N[5] + N[6])] += 1
    total = 0
    for (na, nb, nc), mult in sorted(groups.items()):
        total = total + mult * a**na * b**nb * cc**nc
    return total


def brute_force_partition_six(n: int, w: SixWeights):
    groups = Counter(vertex_counts(c).as_tuple() for c in enumerate_dwbc(n))
    total = 0
    for counts, mult in sorted(groups.items()):
        term = mult
        for wi, ni in zip(w.as_tuple(), counts):
            term = term * wi**ni
        total = total + term
    return total


def brute_force_abc(n: int, w: ABCWeights):
    return brute_force_partition(n, w.a, w.b, w.c)


def gibbs_probability(c: Config, a: Number, b: Number, cc: Number, z=None):
    """Boltzmann weight of ``c`` over Z_n; pass ``z`` to reuse a partition sum."""
    if z is None:
        z = brute_force_partition(c.n, a, b, cc)
    return config_weight(c, a, b, cc) / z


def height_function(c: Config) -> list[list[int]]:
    """Height function on the (n+1) x (n+1) dual lattice.

    ``H[p][k]`` lives between rows p-1 and p and columns k-1 and k.  Crossing an
    edge raises the height by one when its arrow points from the walker's left
    to the walker's right, and lowers it by one otherwise.  The bottom-left dual
    point is anchored at 0.
    """
    n = c.n
    H: list[list[int | None]] = [[None] * (n + 1) for _ in range(n + 1)]

    def east_step(p: int, k: int) -> int:
        # walking east, the right-hand side is south
        return 1 if not c.v_edges[k][p] else -1

    def south_step(p: int, k: int) -> int:
        # walking south, the right-hand side is west
        return 1 if not c.h_edges[k][p] else -1

    H[n][0] = 0
    for p in range(n, 0, -1):
        H[p - 1][0] = H[p][0] - south_step(p - 1, 0)
    for p in range(n + 1):
        for k in range(n):
            H[p][k + 1] = H[p][k] + east_step(p, k)
    for p in range(n):
        for k in range(n + 1):
            if H[p + 1][k] - H[p][k] != south_step(p, k):
                raise ConventionError(f"height function inconsistent at dual point ({p}, {k})")
    return H  # type: ignore[return-value]


def asm_from_config(c: Config) -> list[list[int]]:
    """ASM image: type 5 -> 1, type 6 -> -1, others 0.

    Cross-checked entry-wise against the quarter-sum of the height function
    (h_NE - h_NW + h_SW - h_SE) / 2.
    """
    types = vertex_types(c)
    by_type = [[{5: 1, 6: -1}.get(t, 0) for t in row] for row in types]
    H = height_function(c)
    n = c.n
    for i in range(n):
        for j in range(n):
            ne, nw, sw, se = H[i][j + 1], H[i][j], H[i + 1][j], H[i + 1][j + 1]
            quarter = ne - nw + sw - se
            if quarter % 2 or quarter // 2 != by_type[i][j]:
                raise ConventionError(f"ASM constructions disagree at ({i}, {j})")
    return by_type


def is_asm(m: list[list[int]]) -> bool:
    n = len(m)
    lines = [list(r) for r in m] + [[m[i][j] for i in range(n)] for j in range(n)]
    for line in lines:
        if sum(line) != 1:
            return False
        nz = [x for x in line if x]
        if any(x not in (-1, 1) for x in nz):
            return False
        if any(nz[k] == nz[k + 1] for k in range(len(nz) - 1)):
            return False
    return True


def check_conservation(c: Config) -> ConservationReport:
    """Global and per-line conservation laws.

    Per line: N3 = N4 on every line i + j = const (parallel to y = x), N1 = N2
    on every line i - j = const, and N5 - N6 = 1 on every row.
    """
    n = c.n
    report = ConservationReport(n)
    types = vertex_types(c)
    N = vertex_counts(c)
    if N[1] != N[2]:
        report.failures.append(f"N1 = N2 violated: {N[1]} != {N[2]}")
    if N[3] != N[4]:
        report.failures.append(f"N3 = N4 violated: {N[3]} != {N[4]}")
    if N[5] - N[6] != n:
        report.failures.append(f"N5 - N6 = n violated: {N[5] - N[6]} != {n}")
    for s in range(2 * n - 1):
        cells = [types[i][s - i] for i in range(n) if 0 <= s - i < n]
        if cells.count(3) != cells.count(4):
            report.failures.append(f"N3 = N4 violated on line i+j={s}")
    for d in range(-(n - 1), n):
        cells = [types[i][i - d] for i in range(n) if 0 <= i - d < n]
        if cells.count(1) != cells.count(2):
            report.failures.append(f"N1 = N2 violated on line i-j={d}")
    for i, row in enumerate(types):
        if row.count(5) - row.count(6) != 1:
            report.failures.append(f"N5 - N6 = 1 violated on row {i}")
    return report


def config_from_types(types: list[list[int]]) -> Config:
    """Assemble a Config from a vertex-type grid; raises if edges clash."""
    n = len(types)
    h: list[list[bool | None]] = [[None] * n for _ in range(n + 1)]
    v: list[list[bool | None]] = [[None] * (n + 1) for _ in range(n)]

    def put(grid, a, b, value):
        if grid[a][b] is not None and grid[a][b] != value:
            raise ConventionError("vertex types do not fit together")
        grid[a][b] = value

    for i in range(n):
        for j in range(n):
            left, right, top, bottom = _ARROWS_OF[types[i][j]]
            put(h, j, i, left)
            put(h, j + 1, i, right)
            put(v, j, i, top)
            put(v, j, i + 1, bottom)
    c = Config(n, tuple(tuple(r) for r in h), tuple(tuple(r) for r in v))
    validate(c)
    return c


def ground_state(n: int) -> Config:
    """Type 5 on the main diagonal, type 3 above it, type 4 below."""
    if n < 1:
        raise DomainError("n must be positive")
    types = [[5 if i == j else (3 if j > i else 4) for j in range(n)] for i in range(n)]
    return config_from_types(types)
