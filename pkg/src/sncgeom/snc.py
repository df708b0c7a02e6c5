"""Glued normal-crossing Calabi-Yau surfaces from triangulated 2-manifolds.

The dual complex has one polygon per triangulation vertex, one double
curve per triangulation edge and one triple point per triangle; all the
topological invariants of the glued surface are computed from it.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field

from . import lattice, picard


class NonManifold(ValueError):
    pass


class Boundary(ValueError):
    pass


class CycleLengthMismatch(ValueError):
    pass


class PolarizationDegreeMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Triangulation:
    vertex_count: int
    triangles: tuple

    def validate(self):
        edge_tris = {}
        for t, tri in enumerate(self.triangles):
            if len(set(tri)) != 3:
                raise NonManifold(f"degenerate triangle {tri}")
            if any(not 0 <= v < self.vertex_count for v in tri):
                raise ValueError(f"vertex index out of range in {tri}")
            for a, b in ((0, 1), (1, 2), (0, 2)):
                e = frozenset((tri[a], tri[b]))
                edge_tris.setdefault(e, []).append(t)
        for e, ts in edge_tris.items():
            if len(ts) != 2:
                raise Boundary(
                    f"edge {sorted(e)} lies in {len(ts)} triangles, not 2")
        for v in range(self.vertex_count):
            self.link_cycle(v)  # raises NonManifold if the link is bad
        return edge_tris

    def edges(self):
        out = set()
        for tri in self.triangles:
            for a, b in ((0, 1), (1, 2), (0, 2)):
                out.add(frozenset((tri[a], tri[b])))
        return out

    def link_cycle(self, v):
        """Ordered cycle of neighbours of v; NonManifold if not a cycle."""
        nbrs = {}
        for tri in self.triangles:
            if v in tri:
                a, b = [x for x in tri if x != v]
                nbrs.setdefault(a, set()).add(b)
                nbrs.setdefault(b, set()).add(a)
        if not nbrs:
            raise NonManifold(f"isolated vertex {v}")
        if any(len(s) != 2 for s in nbrs.values()):
            raise NonManifold(f"link of vertex {v} is not a cycle")
        start = min(nbrs)
        cycle = [start]
        prev, cur = None, start
        while True:
            nxt = [x for x in nbrs[cur] if x != prev]
            step = nxt[0] if prev is None else nxt[0]
            if step == start:
                break
            cycle.append(step)
            prev, cur = cur, step
        if len(cycle) != len(nbrs):
            raise NonManifold(f"link of vertex {v} is disconnected")
        return cycle

    def euler_characteristic(self):
        return self.vertex_count - len(self.edges()) + len(self.triangles)

    def to_json(self):
        return json.dumps({"vertices": self.vertex_count,
                           "triangles": [list(t) for t in self.triangles]})

    @classmethod
    def from_json(cls, text):
        d = json.loads(text)
        return cls(vertex_count=d["vertices"],
                   triangles=tuple(tuple(t) for t in d["triangles"]))


@dataclass
class DualComplex:
    # polygon per triangulation vertex: ordered sides, each side a tuple
    # (edge_key, from_triangle, to_triangle) in boundary-traversal order
    polygons: dict
    side_gluing: dict        # edge_key -> (vertex, vertex)
    orientation_data: dict   # edge_key -> True if the two traversals oppose
    triangle_count: int
    triangulation: Triangulation

    def euler_characteristic(self):
        return (len(self.polygons) - len(self.side_gluing)
                + self.triangle_count)

    def polygon_sizes(self):
        return {v: len(sides) for v, sides in self.polygons.items()}


def _tri_index(tri_of, v, a, b):
    return tri_of[frozenset((v, a, b))]


def dual_complex(t):
    """Polygonal subdivision dual to a closed-manifold triangulation."""
    t.validate()
    tri_of = {frozenset(tri): i for i, tri in enumerate(t.triangles)}
    polygons = {}
    side_gluing = {}
    for v in range(t.vertex_count):
        link = t.link_cycle(v)
        d = len(link)
        sides = []
        for i in range(d):
            u = link[i]
            prev_u = link[i - 1]
            next_u = link[(i + 1) % d]
            edge = frozenset((v, u))
            # the side dual to edge {v,u} runs between the two triangles
            # adjacent to it, crossed in link order
            sides.append((edge,
                          _tri_index(tri_of, v, prev_u, u),
                          _tri_index(tri_of, v, u, next_u)))
            side_gluing.setdefault(edge, []).append(v)
        polygons[v] = sides
    gluing = {}
    orientation = {}
    traversal = {}
    for v, sides in polygons.items():
        for edge, fr, to in sides:
            traversal.setdefault(edge, []).append((fr, to))
    for edge, owners in side_gluing.items():
        if len(owners) != 2 or owners[0] == owners[1]:
            raise NonManifold(
                f"side gluing for edge {sorted(edge)} is not a fixed-point"
                " free involution")
        gluing[edge] = tuple(owners)
        (f1, t1), (f2, t2) = traversal[edge]
        orientation[edge] = (f1, t1) == (t2, f2)
    return DualComplex(polygons=polygons, side_gluing=gluing,
                       orientation_data=orientation,
                       triangle_count=len(t.triangles), triangulation=t)


def canonical_order(d):
    """1 when the polygons admit a coherent orientation, else 2."""
    signs = {}
    for start in d.polygons:
        if start in signs:
            continue
        signs[start] = 1
        queue = [start]
        while queue:
            v = queue.pop()
            for edge, _, _ in d.polygons[v]:
                u, w = d.side_gluing[edge]
                other = w if v == u else u
                # opposing traversals are coherent for equal signs
                want = signs[v] if d.orientation_data[edge] else -signs[v]
                if other not in signs:
                    signs[other] = want
                    queue.append(other)
                elif signs[other] != want:
                    return 2
    return 1


def _edge_orientations(d):
    """Canonical direction per dual edge: (from, to) of the polygon whose
    vertex index is smaller."""
    out = {}
    for edge, (u, w) in d.side_gluing.items():
        v = min(u, w)
        for e, fr, to in d.polygons[v]:
            if e == edge:
                out[edge] = (fr, to)
                break
    return out


def _boundary_matrices(d):
    edges = sorted(d.side_gluing, key=sorted)
    eidx = {e: i for i, e in enumerate(edges)}
    direction = _edge_orientations(d)
    verts = sorted(d.polygons)
    # d2: edges x polygons
    d2 = [[0] * len(verts) for _ in edges]
    for col, v in enumerate(verts):
        for edge, fr, to in d.polygons[v]:
            sign = 1 if (fr, to) == direction[edge] else -1
            d2[eidx[edge]][col] += sign
    # d1: triangles x edges
    d1 = [[0] * len(edges) for _ in range(d.triangle_count)]
    for edge, i in eidx.items():
        fr, to = direction[edge]
        d1[to][i] += 1
        d1[fr][i] -= 1
    return d1, d2, edges


def structure_cohomology(z):
    """(h0, h1, h2) of the structure sheaf of the glued surface.

    Computed as the rational homology ranks of the dual cell complex,
    which the component-by-component cohomology sequence reduces to when
    every component is rational and every double curve is a cycle of
    rational curves."""
    d = z.dual if isinstance(z, SncSurface) else z
    d1, d2, edges = _boundary_matrices(d)
    n0 = d.triangle_count
    n1 = len(edges)
    n2 = len(d.polygons)
    r1 = lattice.rank(d1)
    r2 = lattice.rank(d2)
    h0 = n0 - r1
    h1 = n1 - r1 - r2
    h2 = n2 - r2
    return (h0, h1, h2)


@dataclass(frozen=True)
class GroupPresentation:
    generator_count: int
    relations: tuple  # words: tuples of nonzero signed generator indices

    def validate(self):
        for word in self.relations:
            for letter in word:
                if letter == 0 or abs(letter) > self.generator_count:
                    raise ValueError("relation letter out of range")
        return True


def fundamental_group(z):
    """Presentation of pi_1 from the dual complex: generators are the dual
    edges outside a spanning tree, relations the polygon boundary words."""
    d = z.dual if isinstance(z, SncSurface) else z
    direction = _edge_orientations(d)
    adj = {i: [] for i in range(d.triangle_count)}
    for edge, (fr, to) in direction.items():
        adj[fr].append((to, edge))
        adj[to].append((fr, edge))
    tree = set()
    seen = {0}
    queue = [0]
    while queue:
        v = queue.pop(0)
        for w, edge in adj[v]:
            if w not in seen:
                seen.add(w)
                tree.add(edge)
                queue.append(w)
    if len(seen) != d.triangle_count:
        raise ValueError("dual complex is not connected")
    gens = [e for e in sorted(d.side_gluing, key=sorted) if e not in tree]
    gidx = {e: i + 1 for i, e in enumerate(gens)}
    relations = []
    for v in sorted(d.polygons):
        word = []
        for edge, fr, to in d.polygons[v]:
            if edge in tree:
                continue
            sign = 1 if (fr, to) == direction[edge] else -1
            word.append(sign * gidx[edge])
        relations.append(tuple(word))
    return GroupPresentation(generator_count=len(gens),
                             relations=tuple(relations))


@dataclass(frozen=True)
class AbelianInvariants:
    free_rank: int
    torsion: tuple  # invariant factors > 1, each dividing the next

    def __str__(self):
        parts = [f"Z/{d}" for d in self.torsion]
        if self.free_rank:
            parts.append(f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"


def abelianization(g):
    """H_1 invariants of a presentation, by Smith normal form of the
    relation matrix."""
    rows = [[0] * g.generator_count for _ in g.relations]
    for i, word in enumerate(g.relations):
        for letter in word:
            rows[i][abs(letter) - 1] += 1 if letter > 0 else -1
    if not rows or g.generator_count == 0:
        return AbelianInvariants(free_rank=g.generator_count, torsion=())
    snf = lattice.smith_normal_form(rows)
    nonzero = [x for x in snf.diagonal if x != 0]
    return AbelianInvariants(
        free_rank=g.generator_count - len(nonzero),
        torsion=tuple(x for x in nonzero if x > 1))


# -- assembled surfaces ----------------------------------------------------


@dataclass
class SncSurface:
    dual: DualComplex
    components: dict          # vertex -> (CycleSurface, polarization tuple)
    curve_identifications: dict  # edge_key -> ((v, middle pos), (w, middle pos))
    refinement: int
    node_markings: set = field(default_factory=set)


_FACTORY_CACHE = {}


def default_component_factory(cycle_length):
    if cycle_length not in _FACTORY_CACHE:
        s = picard.cycle_surface(cycle_length)
        h = picard.degree_one_polarization(s, picard.uniform_degree_seed(s))
        _FACTORY_CACHE[cycle_length] = (s, h)
    return _FACTORY_CACHE[cycle_length]


def assemble(d, component_factory=None, refinement=3, node_markings=None):
    """Glue one anticanonical-cycle surface per polygon.

    Each polygon side is refined into `refinement` consecutive cycle
    curves (the middle one carries the identification), so the factory is
    asked for cycles of length refinement * side_count with all
    self-intersections <= -2 and a degree-1 polarization.
    """
    if refinement < 1 or refinement % 2 == 0:
        raise ValueError("refinement must be a positive odd number")
    factory = component_factory or default_component_factory
    components = {}
    cache = {}
    for v, sides in d.polygons.items():
        want = refinement * len(sides)
        if want not in cache:
            cache[want] = factory(want)
        surf, h = cache[want]
        if surf.length != want:
            raise CycleLengthMismatch(
                f"factory returned cycle length {surf.length}, wanted {want}")
        for c in surf.cycle:
            if picard.dot(h, c) != 1:
                raise PolarizationDegreeMismatch(
                    "polarization does not have degree 1 on the cycle")
        components[v] = (surf, h)
    identifications = {}
    for edge, (u, w) in d.side_gluing.items():
        pos = {}
        for v in (u, w):
            for i, (e, _, _) in enumerate(d.polygons[v]):
                if e == edge:
                    pos[v] = refinement * i + refinement // 2
                    break
        identifications[edge] = ((u, pos[u]), (w, pos[w]))
    marks = set(d.side_gluing) if node_markings is None else set(node_markings)
    return SncSurface(dual=d, components=components,
                      curve_identifications=identifications,
                      refinement=refinement, node_markings=marks)


def loop_kernel_classes(z):
    """Number of loop classes around components after merging across every
    node-marked double curve; 1 means the kernel is cyclic."""
    parent = {v: v for v in z.dual.polygons}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for edge in z.node_markings:
        u, w = z.dual.side_gluing[edge]
        parent[find(u)] = find(w)
    return len({find(v) for v in parent})


# -- independent simplicial route (oracle for the dual-complex route) ------


def simplicial_boundaries(t):
    """Boundary matrices of the simplicial chain complex over Z, with the
    canonical orientation given by sorted vertex tuples."""
    verts = list(range(t.vertex_count))
    edges = sorted(t.edges(), key=sorted)
    eidx = {e: i for i, e in enumerate(edges)}
    d1 = [[0] * len(edges) for _ in verts]
    for e, i in eidx.items():
        a, b = sorted(e)
        d1[b][i] += 1
        d1[a][i] -= 1
    d2 = [[0] * len(t.triangles) for _ in edges]
    for j, tri in enumerate(t.triangles):
        a, b, c = sorted(tri)
        d2[eidx[frozenset((b, c))]][j] += 1
        d2[eidx[frozenset((a, c))]][j] -= 1
        d2[eidx[frozenset((a, b))]][j] += 1
    return d1, d2


def simplicial_homology(t):
    """((h0, h1, h2) over Q, H_1 invariants over Z) of the triangulation."""
    d1, d2 = simplicial_boundaries(t)
    n0, n1, n2 = t.vertex_count, len(d2), len(d2[0]) if d2 else 0
    r1 = lattice.rank(d1)
    r2 = lattice.rank(d2)
    h0 = n0 - r1
    h1 = n1 - r1 - r2
    h2 = n2 - r2
    snf = lattice.smith_normal_form(d2)
    torsion = tuple(x for x in snf.diagonal if x > 1)
    return (h0, h1, h2), AbelianInvariants(free_rank=h1, torsion=torsion)


# -- test surfaces ---------------------------------------------------------


def tetrahedron():
    return Triangulation(4, ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)))


def torus_7():
    """The 7-vertex triangulation of the torus."""
    tris = []
    for i in range(7):
        tris.append(tuple(sorted((i, (i + 1) % 7, (i + 3) % 7))))
        tris.append(tuple(sorted((i, (i + 2) % 7, (i + 3) % 7))))
    return Triangulation(7, tuple(sorted(set(tris))))


def rp2_6():
    """The 6-vertex projective plane (antipodal icosahedron)."""
    return Triangulation(6, (
        (0, 1, 4), (0, 1, 5), (0, 2, 3), (0, 2, 5), (0, 3, 4),
        (1, 2, 3), (1, 2, 4), (1, 3, 5), (2, 4, 5), (3, 4, 5)))


def klein_bottle(n=4):
    """Grid triangulation of the Klein bottle: horizontal wrap is straight,
    the vertical wrap reflects the horizontal coordinate."""
    def vid(i, j):
        if j >= n:
            i, j = -i, j - n
        return (j % n) * n + (i % n)

    tris = []
    for i in range(n):
        for j in range(n):
            a = vid(i, j)
            b = vid(i + 1, j)
            c = vid(i, j + 1)
            d = vid(i + 1, j + 1)
            tris.append((a, b, c))
            tris.append((b, d, c))
    return Triangulation(n * n, tuple(tris))


def connected_sum(t1, t2):
    """Glue two triangulations along the boundary of one removed triangle
    from each (identifying the three boundary vertices pairwise)."""
    tri1 = t1.triangles[0]
    tri2 = t2.triangles[0]
    offset = t1.vertex_count
    remap = {}
    for a, b in zip(tri2, tri1):
        remap[a] = b
    fresh = {}
    for v in range(t2.vertex_count):
        if v not in remap:
            fresh[v] = offset + len(fresh)
    remap.update(fresh)
    tris = list(t1.triangles[1:])
    for tri in t2.triangles[1:]:
        tris.append(tuple(remap[v] for v in tri))
    return Triangulation(offset + len(fresh), tuple(tris))


def genus2():
    return connected_sum(torus_7(), torus_7())


def refine_random(t, splits, seed=0):
    """Random 1-to-3 triangle splits; preserves manifoldness, Euler
    characteristic and orientability."""
    rng = random.Random(seed)
    tris = list(t.triangles)
    nv = t.vertex_count
    for _ in range(splits):
        i = rng.randrange(len(tris))
        a, b, c = tris.pop(i)
        tris.extend([(a, b, nv), (b, c, nv), (a, c, nv)])
        nv += 1
    return Triangulation(nv, tuple(tris))


def glue_report(t, refinement=3):
    """Full invariant report for the surface glued from a triangulation."""
    d = dual_complex(t)
    z = assemble(d, refinement=refinement)
    coh = structure_cohomology(z)
    pres = fundamental_group(z)
    ab = abelianization(pres)
    (oh, oab) = simplicial_homology(t)
    return {
        "euler_characteristic": d.euler_characteristic(),
        "cohomology": list(coh),
        "cohomology_simplicial_oracle": list(oh),
        "cohomology_crosscheck": list(coh) == list(oh),
        "abelianization": {"free_rank": ab.free_rank,
                           "torsion": list(ab.torsion)},
        "abelianization_crosscheck": (ab.free_rank == oab.free_rank
                                      and ab.torsion == oab.torsion),
        "canonical_order": canonical_order(d),
        "loop_kernel_classes": loop_kernel_classes(z),
        "components": len(d.polygons),
        "double_curves": len(d.side_gluing),
        "triple_points": d.triangle_count,
    }
