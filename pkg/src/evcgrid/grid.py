"""Regular lattice construction.

Four infinite lattices are supported, identified by their degree: the
hexagonal grid (degree 3), the square grid (4), the triangular grid (6)
and the octagonal / king grid (8).  Every integer point of the plane is a
vertex of each infinite lattice; finite instances are rectangular windows
with a degree-pruning rule, toroidal instances wrap coordinates.

Paths and cycles are available as degenerate oracle kinds for solver
cross-checks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

from .errors import DegenerateParameters

Coord = tuple[int, int]
Edge = tuple[Coord, Coord]


class GridKind(str, Enum):
    HEX3 = "hex3"
    SQUARE4 = "square4"
    TRI6 = "tri6"
    OCT8 = "oct8"
    # oracle-only degenerate kinds
    PATH = "path"
    CYCLE = "cycle"

    @property
    def degree(self) -> int:
        return _DEGREE[self]

    @property
    def is_grid(self) -> bool:
        return self in (GridKind.HEX3, GridKind.SQUARE4, GridKind.TRI6, GridKind.OCT8)


_DEGREE = {
    GridKind.HEX3: 3,
    GridKind.SQUARE4: 4,
    GridKind.TRI6: 6,
    GridKind.OCT8: 8,
    GridKind.PATH: 2,
    GridKind.CYCLE: 2,
}


class Topology(str, Enum):
    RECT = "rect"
    TORUS = "torus"


# Neighbor offsets for the translation-invariant kinds.
_SQUARE_OFFSETS = ((1, 0), (-1, 0), (0, 1), (0, -1))
_TRI_OFFSETS = _SQUARE_OFFSETS + ((1, 1), (-1, -1))
_OCT_OFFSETS = _TRI_OFFSETS + ((-1, 1), (1, -1))


def hex_slant_offset(y: int) -> tuple[int, int]:
    """Direction of the single slanted edge at a hexagonal vertex.

    The slant alternates with the row: rows 0 and 1 (mod 4) are joined
    up-right / down-left, rows 2 and 3 up-left / down-right.
    """
    r = y % 4
    if r == 0:
        return (1, 1)
    if r == 1:
        return (-1, -1)
    if r == 2:
        return (-1, 1)
    return (1, -1)


def build_infinite_adjacency(kind: GridKind, v: Coord) -> frozenset[Coord]:
    """Neighbors of ``v`` on the infinite lattice of the given kind."""
    x, y = v
    if kind is GridKind.SQUARE4:
        offs = _SQUARE_OFFSETS
    elif kind is GridKind.TRI6:
        offs = _TRI_OFFSETS
    elif kind is GridKind.OCT8:
        offs = _OCT_OFFSETS
    elif kind is GridKind.HEX3:
        dx, dy = hex_slant_offset(y)
        offs = ((0, 1), (0, -1), (dx, dy))
    else:
        raise DegenerateParameters(f"no infinite lattice for kind {kind.value}")
    return frozenset((x + dx, y + dy) for dx, dy in offs)


def canonical_edge(u: Coord, v: Coord) -> Edge:
    """Unordered edge as an ordered pair, smaller coordinate first."""
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class GridGraph:
    """A finite simple graph with lattice coordinates.

    Immutable after construction; safe to share between threads.  The
    vertex and edge tuples are in canonical lexicographic order so that
    serialization is bit-exact across runs.
    """

    kind: GridKind
    h: int
    w: int
    topology: Topology
    vertices: tuple[Coord, ...]
    edges: tuple[Edge, ...]
    adjacency: dict[Coord, frozenset[Coord]] = field(repr=False)

    # ---- basic queries -------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, v: Coord) -> frozenset[Coord]:
        return self.adjacency[v]

    def closed_neighborhood(self, v: Coord) -> frozenset[Coord]:
        return self.adjacency[v] | {v}

    def degree(self, v: Coord) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: Coord, v: Coord) -> bool:
        return v in self.adjacency.get(u, frozenset())

    @property
    def edge_set(self) -> frozenset[Edge]:
        cached = self.__dict__.get("_eset")
        if cached is None:
            cached = frozenset(self.edges)
            object.__setattr__(self, "_eset", cached)
        return cached

    # ---- bitmask helpers (hot paths in the solvers) --------------------

    @property
    def vertex_index(self) -> dict[Coord, int]:
        idx = self.__dict__.get("_vidx")
        if idx is None:
            idx = {v: i for i, v in enumerate(self.vertices)}
            object.__setattr__(self, "_vidx", idx)
        return idx

    @property
    def adjacency_masks(self) -> tuple[int, ...]:
        masks = self.__dict__.get("_amasks")
        if masks is None:
            vidx = self.vertex_index
            out = [0] * self.n
            for v, nbrs in self.adjacency.items():
                i = vidx[v]
                for u in nbrs:
                    out[i] |= 1 << vidx[u]
            masks = tuple(out)
            object.__setattr__(self, "_amasks", masks)
        return masks

    def coords_to_mask(self, coords) -> int:
        vidx = self.vertex_index
        mask = 0
        for c in coords:
            mask |= 1 << vidx[c]
        return mask

    def mask_to_coords(self, mask: int) -> frozenset[Coord]:
        verts = self.vertices
        out = []
        while mask:
            low = mask & -mask
            out.append(verts[low.bit_length() - 1])
            mask ^= low
        return frozenset(out)

    def is_cover_mask(self, mask: int) -> bool:
        """True iff the complement of ``mask`` is an independent set."""
        masks = self.adjacency_masks
        rest = ((1 << self.n) - 1) & ~mask
        probe = rest
        while probe:
            low = probe & -probe
            if masks[low.bit_length() - 1] & rest:
                return False
            probe ^= low
        return True

    def is_cover(self, guarded) -> bool:
        return self.is_cover_mask(self.coords_to_mask(guarded))

    # ---- serialization -------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "h": self.h,
            "w": self.w,
            "topology": self.topology.value,
            "vertices": [[x, y] for x, y in self.vertices],
            "edges": [[[a, b], [c, d]] for (a, b), (c, d) in self.edges],
        }


def _assemble(kind: GridKind, h: int, w: int, topology: Topology,
              adjacency: dict[Coord, set[Coord]]) -> GridGraph:
    vertices = tuple(sorted(adjacency))
    edges = tuple(sorted({canonical_edge(u, v) for u, nbrs in adjacency.items() for v in nbrs}))
    frozen = {v: frozenset(nbrs) for v, nbrs in adjacency.items()}
    return GridGraph(kind=kind, h=h, w=w, topology=topology,
                     vertices=vertices, edges=edges, adjacency=frozen)


def _check_finite_params(kind: GridKind, h: int, w: int) -> None:
    if not kind.is_grid:
        raise DegenerateParameters(f"{kind.value} is not a rectangular grid kind")
    if h < 2 or w < 2:
        raise DegenerateParameters("grid height and width must both be at least 2")
    if kind is GridKind.HEX3 and (h < 4 or h % 2 != 0):
        raise DegenerateParameters("hexagonal grids need an even height of at least 4")


def build_finite(kind: GridKind, h: int, w: int) -> GridGraph:
    """Rectangular window of the infinite lattice.

    All integer points of ``[0,w-1] x [0,h-1]`` are taken, edges are
    induced from the infinite adjacency, and vertices of degree <= 1 are
    deleted until none remain (this only ever prunes slant-orphaned
    hexagonal corners).  Coordinates are normalized so the lower-left
    retained vertex sits at (0, 0).
    """
    _check_finite_params(kind, h, w)
    box = {(x, y) for x in range(w) for y in range(h)}

    # The king grid is built from the planar (triangular) restriction and
    # then the anti-diagonal families are re-added among retained vertices.
    probe_kind = GridKind.TRI6 if kind is GridKind.OCT8 else kind

    retained = set(box)
    while True:
        adjacency = {
            v: {u for u in build_infinite_adjacency(probe_kind, v) if u in retained}
            for v in retained
        }
        drop = {v for v, nbrs in adjacency.items() if len(nbrs) <= 1}
        if not drop:
            break
        retained -= drop
    if not retained:
        raise DegenerateParameters("window contains no usable vertices")

    if kind is GridKind.OCT8:
        adjacency = {
            v: {u for u in build_infinite_adjacency(kind, v) if u in retained}
            for v in retained
        }

    min_x = min(x for x, _ in retained)
    min_y = min(y for _, y in retained)
    if min_x or min_y:
        adjacency = {
            (x - min_x, y - min_y): {(a - min_x, b - min_y) for a, b in nbrs}
            for (x, y), nbrs in adjacency.items()
        }
    return _assemble(kind, h, w, Topology.RECT, adjacency)


def build_torus(kind: GridKind, h: int, w: int) -> GridGraph:
    """Toroidal wrapping: the infinite rule with coordinates mod (w, h)."""
    if not kind.is_grid:
        raise DegenerateParameters(f"{kind.value} is not a rectangular grid kind")
    if h < 3 or w < 3:
        raise DegenerateParameters("torus dimensions must both be at least 3")
    if kind is GridKind.HEX3 and h % 4 != 0:
        raise DegenerateParameters("hexagonal torus height must be a multiple of 4")
    adjacency: dict[Coord, set[Coord]] = {}
    for x in range(w):
        for y in range(h):
            adjacency[(x, y)] = {
                (nx % w, ny % h) for nx, ny in build_infinite_adjacency(kind, (x, y))
            }
    return _assemble(kind, h, w, Topology.TORUS, adjacency)


def build_oracle(kind: GridKind, n: int) -> GridGraph:
    """Path or cycle on ``n`` vertices, used as a solver oracle."""
    if kind is GridKind.PATH:
        if n < 2:
            raise DegenerateParameters("paths need at least 2 vertices")
    elif kind is GridKind.CYCLE:
        if n < 3:
            raise DegenerateParameters("cycles need at least 3 vertices")
    else:
        raise DegenerateParameters(f"{kind.value} is not an oracle kind")
    adjacency: dict[Coord, set[Coord]] = {(i, 0): set() for i in range(n)}
    for i in range(n - 1):
        adjacency[(i, 0)].add((i + 1, 0))
        adjacency[(i + 1, 0)].add((i, 0))
    if kind is GridKind.CYCLE:
        adjacency[(0, 0)].add((n - 1, 0))
        adjacency[(n - 1, 0)].add((0, 0))
    return _assemble(kind, 1, n, Topology.RECT, adjacency)


@lru_cache(maxsize=256)
def _cached_graph(kind: GridKind, h: int, w: int, topology: Topology) -> GridGraph:
    if kind in (GridKind.PATH, GridKind.CYCLE):
        return build_oracle(kind, w)
    if topology is Topology.TORUS:
        return build_torus(kind, h, w)
    return build_finite(kind, h, w)


def build_graph(kind: GridKind, h: int, w: int,
                topology: Topology = Topology.RECT) -> GridGraph:
    """Uniform entry point used by the CLI and the session service."""
    return _cached_graph(kind, h, w, topology)
