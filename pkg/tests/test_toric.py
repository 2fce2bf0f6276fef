from fractions import Fraction

import pytest

from abbvloc.core import Covector, Matrix, PiScalar, Vector
from abbvloc.engine import check_v_independence, localize_volume
from abbvloc.errors import (
    GoodnessViolation,
    InputError,
    NotSimpleVertex,
    PoleAtSample,
    UnboundedSection,
)
from abbvloc.polytope import vertices_from_halfspaces
from abbvloc.sampling import sample_vector
from abbvloc.toric import (
    GoodCone,
    enumerate_vertices,
    orbit_system_from_cone,
    simplex_cone,
    toric_volume,
    weighted_sphere_cone,
)
from conftest import make_rng, random_weights
from test_engine import sphere_closed_form


def nonpole_cone_sample(cone, rng):
    while True:
        v = sample_vector(cone.dim, rng)
        try:
            toric_volume(cone, v)
            return v
        except PoleAtSample:
            continue


def goodness_violating_cone():
    # the vertex where the first two facets meet has active normals
    # spanning an index-2 sublattice
    return GoodCone(
        dim=3,
        normals=(Vector([-1, 1, 0]), Vector([-1, -1, 0]), Vector([0, 0, -1])),
        reeb=Vector([1, 0, 1]),
    )


class TestConeValidation:
    def test_non_primitive_normal_rejected(self):
        with pytest.raises(InputError):
            GoodCone(dim=2, normals=(Vector([2, 0]), Vector([0, -1])), reeb=Vector([1, 1]))

    def test_zero_normal_rejected(self):
        with pytest.raises(InputError):
            GoodCone(dim=2, normals=(Vector([0, 0]), Vector([0, -1])), reeb=Vector([1, 1]))

    def test_duplicate_normals_rejected(self):
        with pytest.raises(InputError):
            GoodCone(
                dim=2,
                normals=(Vector([-1, 0]), Vector([-1, 0])),
                reeb=Vector([1, 1]),
            )

    def test_too_few_normals(self):
        with pytest.raises(InputError):
            GoodCone(dim=3, normals=(Vector([-1, 0, 0]),), reeb=Vector([1, 1, 1]))

    def test_pi_scale_exponent_domain(self):
        with pytest.raises(InputError):
            weighted_sphere_cone([1, 2], pi_scale_exponent=2)

    def test_lattice_basis_conversion(self):
        # normals given in ambient coordinates of a doubled lattice
        cone = GoodCone(
            dim=2,
            normals=(Vector([-2, 0]), Vector([0, -2])),
            reeb=Vector([2, 4]),
            lattice_basis=Matrix([[2, 0], [0, 2]]),
        )
        assert cone.normals == (Vector([-1, 0]), Vector([0, -1]))
        assert cone.reeb == Vector([1, 2])

    def test_lattice_basis_non_integer_normal(self):
        with pytest.raises(InputError):
            GoodCone(
                dim=2,
                normals=(Vector([-1, 0]), Vector([0, -1])),
                reeb=Vector([1, 2]),
                lattice_basis=Matrix([[2, 0], [0, 2]]),
            )


class TestVertexEnumeration:
    def test_weighted_s3_vertices(self):
        cone = weighted_sphere_cone([1, 2])
        orbits = enumerate_vertices(cone)
        assert [tuple(o.vertex) for o in orbits] == [
            (Fraction(0), Fraction(1, 2)),
            (Fraction(1), Fraction(0)),
        ]

    def test_simplex_vertices_are_basis_covectors(self):
        cone = simplex_cone(3)
        orbits = enumerate_vertices(cone)
        assert [tuple(o.vertex) for o in orbits] == [
            (0, 0, 1),
            (0, 1, 0),
            (1, 0, 0),
        ]

    def test_vertex_count_matches_halfspace_enumeration(self):
        for cone in (
            weighted_sphere_cone([1, 2]),
            weighted_sphere_cone([2, 3, 7]),
            simplex_cone(4),
            cube_cone(),
        ):
            orbits = enumerate_vertices(cone)
            independent = vertices_from_halfspaces(cone.normals, cone.reeb)
            assert len(orbits) == len(independent)
            assert sorted(tuple(o.vertex) for o in orbits) == sorted(
                tuple(phi) for phi, _ in independent
            )

    def test_ordering_convention_positive_delta(self):
        for cone in (simplex_cone(3), simplex_cone(4), cube_cone()):
            for orbit in enumerate_vertices(cone):
                assert orbit.delta > 0

    def test_goodness_violation(self):
        with pytest.raises(GoodnessViolation):
            enumerate_vertices(goodness_violating_cone())

    def test_not_simple_vertex(self):
        # square section with an extra diagonal facet through one corner
        cone = GoodCone(
            dim=3,
            normals=(
                Vector([1, 0, -1]),
                Vector([-1, 0, -1]),
                Vector([0, 1, -1]),
                Vector([0, -1, -1]),
                Vector([1, 1, -2]),
            ),
            reeb=Vector([0, 0, 1]),
        )
        with pytest.raises(NotSimpleVertex):
            enumerate_vertices(cone)

    def test_unbounded_section_with_vertex(self):
        cone = GoodCone(
            dim=2,
            normals=(Vector([-1, 0]), Vector([-1, -1])),
            reeb=Vector([1, 0]),
        )
        with pytest.raises(UnboundedSection):
            enumerate_vertices(cone)

    def test_no_vertex_at_all(self):
        cone = GoodCone(
            dim=2,
            normals=(Vector([1, 0]), Vector([-1, 0])),
            reeb=Vector([1, 0]),
        )
        with pytest.raises(UnboundedSection):
            enumerate_vertices(cone)

    def test_permuting_normals_is_irrelevant(self):
        base = weighted_sphere_cone([2, 3, 5])
        shuffled = GoodCone(
            dim=3,
            normals=(base.normals[2], base.normals[0], base.normals[1]),
            reeb=base.reeb,
        )
        va = [tuple(o.vertex) for o in enumerate_vertices(base)]
        vb = [tuple(o.vertex) for o in enumerate_vertices(shuffled)]
        assert va == vb
        rng = make_rng(3)
        for _ in range(5):
            v = nonpole_cone_sample(base, rng)
            assert toric_volume(base, v) == toric_volume(shuffled, v)


class TestOrbitData:
    def test_weighted_s3_matches_hand_data(self):
        system = orbit_system_from_cone(weighted_sphere_cone([1, 2]))
        by_moment = {tuple(o.moment): o for o in system.orbits}
        lo = by_moment[(Fraction(1), Fraction(0))]
        hi = by_moment[(Fraction(0), Fraction(1, 2))]
        assert lo.length == PiScalar(2, 1)
        assert hi.length == PiScalar(1, 1)
        assert [tuple(w) for w in lo.weights] == [(2, -1)]
        assert [tuple(w) for w in hi.weights] == [(-1, Fraction(1, 2))]

    def test_invariants_hold_by_construction(self):
        # OrbitSystem validates moment(b) = 1 and weight(b) = 0 exactly
        for w in ([1, 2], [2, 3, 7], [1, 2, 3, 5]):
            system = orbit_system_from_cone(weighted_sphere_cone(w))
            assert system.b == Vector(w)

    def test_weights_dual_to_active_normals(self):
        # stored weights pair to delta_ij with the stored normals; in the
        # geometric normalization the true normals are 2 pi times the
        # stored ones, so this is the 2 pi delta_ij duality exactly
        cone = weighted_sphere_cone([2, 3, 7])
        orbits = enumerate_vertices(cone)
        system = orbit_system_from_cone(cone)
        for orbit, datum in zip(orbits, system.orbits):
            for i, alpha in enumerate(datum.weights):
                for j, normal in enumerate(orbit.ordered_normals):
                    assert alpha(normal) == (1 if i == j else 0)

    def test_moment_equals_vertex(self):
        cone = weighted_sphere_cone([1, 2, 3, 5])
        orbits = enumerate_vertices(cone)
        system = orbit_system_from_cone(cone)
        for orbit, datum in zip(orbits, system.orbits):
            assert Covector(datum.moment) == orbit.vertex


class TestToricVolume:
    def test_weighted_s3_value(self):
        cone = weighted_sphere_cone([1, 2])
        assert toric_volume(cone, Vector([1, 0])) == PiScalar(1, 2)

    def test_matches_sphere_closed_form(self):
        rng = make_rng(5)
        for trial in range(6):
            w = random_weights(2 + trial % 3, seed=500 + trial)
            cone = weighted_sphere_cone(w)
            v = nonpole_cone_sample(cone, rng)
            assert toric_volume(cone, v) == sphere_closed_form(w)

    def test_two_route_equality(self):
        rng = make_rng(7)
        cones = [
            weighted_sphere_cone([1, 2]),
            weighted_sphere_cone([Fraction(1, 2), 3]),
            weighted_sphere_cone([2, 3, 7]),
            simplex_cone(3),
            simplex_cone(4),
            cube_cone(),
        ]
        for cone in cones:
            system = orbit_system_from_cone(cone)
            for _ in range(10):
                v = nonpole_cone_sample(cone, rng)
                assert toric_volume(cone, v) == localize_volume(system, v)

    def test_v_independence_of_cone_systems(self):
        for cone in (weighted_sphere_cone([1, 2]), simplex_cone(3)):
            outcome = check_v_independence(orbit_system_from_cone(cone), samples=10, seed=11)
            assert outcome.value == toric_volume(cone, outcome.samples_used[0])

    def test_pole_detection(self):
        cone = weighted_sphere_cone([1, 2])
        with pytest.raises(PoleAtSample):
            toric_volume(cone, Vector([1, 2]))  # parallel to the Reeb vector

    def test_lattice_unit_cone(self):
        # exponent 0 keeps the output rational in lattice units
        cone = simplex_cone(2, pi_scale_exponent=0)
        value = toric_volume(cone, Vector([1, 0]))
        assert value == PiScalar(Fraction(1, 2), 0)


def cube_cone():
    """Section is the cube [-1, 1]^3 at height phi_3 = 1."""
    return GoodCone(
        dim=4,
        normals=(
            Vector([1, 0, 0, -1]),
            Vector([-1, 0, 0, -1]),
            Vector([0, 1, 0, -1]),
            Vector([0, -1, 0, -1]),
            Vector([0, 0, 1, -1]),
            Vector([0, 0, -1, -1]),
        ),
        reeb=Vector([0, 0, 0, 1]),
    )
