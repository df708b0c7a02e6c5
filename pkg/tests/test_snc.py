import pytest

from sncgeom import snc

SURFACES = {
    "sphere": (snc.tetrahedron, (1, 0, 1), 1),
    "torus": (snc.torus_7, (1, 2, 1), 1),
    "projective_plane": (snc.rp2_6, (1, 0, 0), 2),
    "klein_bottle": (snc.klein_bottle, (1, 1, 0), 2),
    "genus2": (snc.genus2, (1, 4, 1), 1),
}


@pytest.mark.parametrize("name", sorted(SURFACES))
def test_triangulations_are_closed_manifolds(name):
    factory, _, _ = SURFACES[name]
    assert factory().validate()


def test_validate_rejects_boundary():
    t = snc.Triangulation(3, ((0, 1, 2),))
    with pytest.raises(snc.Boundary):
        t.validate()


def test_validate_rejects_nonmanifold():
    # two spheres sharing one edge: edge {0,1} lies in four triangles
    t = snc.Triangulation(6, ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3),
                              (0, 1, 4), (0, 1, 5), (0, 4, 5), (1, 4, 5)))
    with pytest.raises((snc.NonManifold, ValueError)):
        t.validate()
        snc.dual_complex(t)


@pytest.mark.parametrize("name", sorted(SURFACES))
def test_euler_characteristic_consistency(name):
    factory, (h0, h1, h2), _ = SURFACES[name]
    t = factory()
    d = snc.dual_complex(t)
    assert d.euler_characteristic() == t.euler_characteristic()


@pytest.mark.parametrize("name", sorted(SURFACES))
def test_structure_cohomology_vs_simplicial_oracle(name):
    factory, expected, _ = SURFACES[name]
    t = factory()
    coh = snc.structure_cohomology(snc.dual_complex(t))
    oracle, _ = snc.simplicial_homology(t)
    assert coh == expected == oracle


@pytest.mark.parametrize("name", sorted(SURFACES))
def test_canonical_order(name):
    factory, _, order = SURFACES[name]
    assert snc.canonical_order(snc.dual_complex(factory())) == order


@pytest.mark.parametrize("name", sorted(SURFACES))
def test_canonical_order_stable_under_refinement(name):
    factory, _, order = SURFACES[name]
    for seed in range(3):
        t = snc.refine_random(factory(), 5, seed=seed)
        t.validate()
        assert snc.canonical_order(snc.dual_complex(t)) == order


@pytest.mark.parametrize("name", sorted(SURFACES))
def test_abelianization_vs_oracle(name):
    factory, _, _ = SURFACES[name]
    t = factory()
    pres = snc.fundamental_group(snc.dual_complex(t))
    pres.validate()
    ab = snc.abelianization(pres)
    _, oracle = snc.simplicial_homology(t)
    assert ab == oracle


def test_rp2_torsion():
    pres = snc.fundamental_group(snc.dual_complex(snc.rp2_6()))
    ab = snc.abelianization(pres)
    assert ab.free_rank == 0 and ab.torsion == (2,)


def test_triangulation_json_roundtrip():
    t = snc.torus_7()
    assert snc.Triangulation.from_json(t.to_json()).triangles == t.triangles


def test_assemble_components_and_identifications():
    d = snc.dual_complex(snc.tetrahedron())
    z = snc.assemble(d)
    assert len(z.components) == 4
    for surf, h in z.components.values():
        assert surf.length == 3 * 3  # refinement 3, triangle degree 3
        from sncgeom import picard
        assert all(picard.dot(h, c) == 1 for c in surf.cycle)
    for edge, ((u, i), (w, j)) in z.curve_identifications.items():
        assert {u, w} == set(d.side_gluing[edge])
        assert i % 3 == 1 and j % 3 == 1  # middle curve of each side


def test_assemble_rejects_even_refinement():
    d = snc.dual_complex(snc.tetrahedron())
    with pytest.raises(ValueError):
        snc.assemble(d, refinement=2)


def test_assemble_rejects_bad_factory():
    d = snc.dual_complex(snc.tetrahedron())
    from sncgeom import picard

    def bad_factory(n):
        s = picard.cycle_surface(n + 3)
        return s, picard.degree_one_polarization(
            s, picard.uniform_degree_seed(s))

    with pytest.raises(snc.CycleLengthMismatch):
        snc.assemble(d, component_factory=bad_factory)


def test_loop_kernel_classes_fully_marked():
    for factory in (snc.tetrahedron, snc.torus_7, snc.rp2_6):
        d = snc.dual_complex(factory())
        z = snc.assemble(d)
        assert snc.loop_kernel_classes(z) == 1


def test_loop_kernel_classes_no_markings():
    d = snc.dual_complex(snc.tetrahedron())
    z = snc.assemble(d, node_markings=[])
    assert snc.loop_kernel_classes(z) == len(d.polygons)


def test_loop_kernel_classes_partial_markings():
    d = snc.dual_complex(snc.tetrahedron())
    some_edge = next(iter(d.side_gluing))
    z = snc.assemble(d, node_markings=[some_edge])
    assert snc.loop_kernel_classes(z) == len(d.polygons) - 1


def test_glue_report_crosschecks():
    r = snc.glue_report(snc.klein_bottle())
    assert r["cohomology_crosscheck"]
    assert r["abelianization_crosscheck"]
    assert r["canonical_order"] == 2
    assert r["loop_kernel_classes"] == 1


def test_refine_random_preserves_invariants():
    t = snc.refine_random(snc.torus_7(), 10, seed=4)
    t.validate()
    assert t.euler_characteristic() == 0
    (h, _) = snc.simplicial_homology(t)
    assert h == (1, 2, 1)
