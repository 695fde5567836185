import math

import numpy as np
import pytest

import gssf as G
from _builders import anti_invariant_point, invariant_point, sff_with, spot_point


def test_attach_full_tangent_space():
    ambient = G.canonical_model(2)
    functions = G.preset_structure_functions("s_space_form", 2.0)
    raw = list(np.eye(ambient.dim))
    point = G.attach_point(ambient, functions, raw,
                           G.SecondFundamentalForm.zeros(0, 6))
    assert point.n == 4
    assert point.normal_rank == 0
    assert np.array_equal(point.tangent.matrix[4], ambient.xi[0])
    assert np.array_equal(point.tangent.matrix[5], ambient.xi[1])


def test_attach_missing_xi():
    ambient = G.canonical_model(2)
    functions = G.preset_structure_functions("s_space_form", 2.0)
    raw = [np.eye(6)[0], np.eye(6)[1], ambient.xi[0]]
    with pytest.raises(G.XiNotTangent):
        G.attach_point(ambient, functions, raw, G.SecondFundamentalForm.zeros(3, 3))


def test_attach_shape_mismatch():
    ambient = G.canonical_model(2)
    functions = G.preset_structure_functions("s_space_form", 2.0)
    raw = G.slant_frame(ambient, 2, 0.0)
    with pytest.raises(G.BadShape):
        G.attach_point(ambient, functions, raw, G.SecondFundamentalForm.zeros(1, 4))


def test_attach_c_compatible_requires_zero_xi_rows():
    ambient = G.canonical_model(2)
    functions = G.preset_structure_functions("c_space_form", 1.0)
    raw = G.slant_frame(ambient, 2, 0.0)
    sff = sff_with(2, 4, {(0, 0, 2): 1.0})
    with pytest.raises(G.BadShape):
        G.attach_point(ambient, functions, raw, sff,
                       G.PointFlags(c_compatible=True))


def test_sff_symmetry_enforced():
    coeffs = np.zeros((1, 3, 3))
    coeffs[0, 0, 1] = 1.0
    with pytest.raises(G.BadShape):
        G.SecondFundamentalForm(coeffs)


def test_tn_decompose_examples():
    point = spot_point()
    xi1 = point.ambient.xi[0]
    t, n = G.tn_decompose(point, xi1)
    assert np.allclose(t, 0.0) and np.allclose(n, 0.0)

    x1 = point.tangent.matrix[0]
    t, n = G.tn_decompose(point, x1)
    assert np.allclose(t, point.tangent.matrix[1])  # f dx1 = dy1, tangent
    assert np.allclose(n, 0.0)

    anti = anti_invariant_point(n=2, m=2)
    t, n = G.tn_decompose(anti, anti.tangent.matrix[0])
    assert np.allclose(t, 0.0)
    assert np.allclose(n, np.eye(6)[1])  # dy1 is normal here


def test_tn_decompose_rejects_non_tangent():
    point = spot_point()
    with pytest.raises(G.NotTangent):
        G.tn_decompose(point, np.eye(6)[2])


def test_invariant_report_spot_values():
    point = spot_point()
    report = G.invariant_report(point)
    assert report.h_norm_sq == 0.0
    assert report.sigma_norm_sq == 0.0
    assert abs(report.t_norm_sq - 2.0) < 1e-12
    assert abs(report.n_norm_sq) < 1e-12
    assert abs(report.tau - 6.0) < 1e-12
    assert report.slant.is_slant and abs(report.slant.angle) < 1e-9


def test_induced_matches_ambient_when_sigma_vanishes():
    point = spot_point()
    rng = np.random.default_rng(9)
    for _ in range(10):
        coeffs = rng.normal(size=(4, 4))
        vs = [c @ point.tangent.matrix for c in coeffs]
        lit = G.ambient_curvature(point.ambient, point.functions, *vs)
        ind = G.induced_curvature(point, *vs)
        assert abs(lit - ind) < 1e-10


def test_induced_sectional_spot():
    point = spot_point()
    assert abs(G.induced_sectional(point, 0, 1) - 2.0) < 1e-12
    with pytest.raises(G.BadShape):
        G.induced_sectional(point, 0, 0)


def test_gauss_product_term():
    functions = G.preset_structure_functions("real_space_form", 0.0)
    sff = sff_with(2, 4, {(0, 0, 0): 1.0, (0, 1, 1): 1.0})
    point = invariant_point(n=2, m=2, functions=functions, sff=sff)
    assert abs(G.induced_sectional(point, 0, 1) - 1.0) < 1e-12


def test_ricci_examples():
    point = spot_point()
    assert abs(G.ricci(point, point.tangent.matrix[0]) - 4.0) < 1e-12

    inv = invariant_point(n=2, m=2)
    assert abs(G.ricci(inv, inv.tangent.matrix[0]) - 6.0) < 1e-12

    anti = anti_invariant_point(n=2, m=2)
    assert abs(G.ricci(anti, anti.tangent.matrix[0]) - 3.0) < 1e-12


def test_ricci_preconditions():
    point = spot_point()
    with pytest.raises(G.NotUnitVector):
        G.ricci(point, 2.0 * point.tangent.matrix[0])
    with pytest.raises(G.NotInL):
        G.ricci(point, point.ambient.xi[0])
    with pytest.raises(G.NotInL):
        G.ricci(point, np.eye(6)[2])


def test_ricci_frame_independent_of_completion():
    # Ricci of U must agree with the row sum over the original frame when
    # U is itself a frame vector.
    rng = np.random.default_rng(10)
    for trial in range(10):
        cfg = G.GeneratorConfig(seed=500 + trial, n=3 + trial % 3, m=6,
                                constraint="none")
        point = G.random_instance(cfg)
        i = trial % point.n
        direct = float(np.sum(point.sectional_matrix[i])) - float(
            point.sectional_matrix[i, i]
        )
        assert abs(G.ricci(point, point.tangent.matrix[i]) - direct) < 1e-9


def test_scalar_identity_spot_and_structure():
    point = spot_point()
    result = G.scalar_identity_check(point)
    assert abs(result.lhs - 12.0) < 1e-12
    assert abs(result.rhs - 12.0) < 1e-12

    # anti-invariant points: |T| = 0, so the rhs cannot depend on F2
    base = G.StructureFunctions(1.0, 1.0, 1.0, 0.0, 0.0, 0.0, 0.0)
    bumped = G.StructureFunctions(1.0, -1.5, 1.0, 0.0, 0.0, 0.0, 0.0)
    p1 = anti_invariant_point(n=2, m=2, functions=base)
    p2 = anti_invariant_point(n=2, m=2, functions=bumped)
    assert abs(G.scalar_identity_check(p1).rhs - G.scalar_identity_check(p2).rhs) < 1e-12


def test_scalar_identity_fuzz():
    for trial in range(150):
        n = 1 + trial % 6
        cfg = G.GeneratorConfig(seed=3_000 + trial, n=n, m=max(n, 2),
                                constraint="none")
        point = G.random_instance(cfg)
        result = G.scalar_identity_check(point)
        assert result.abs_diff <= 1e-9 * max(1.0, abs(result.lhs))


def test_slant_probe_cases():
    assert G.slant_probe(invariant_point(n=2, m=2)).angle == pytest.approx(0.0, abs=1e-9)
    anti = G.slant_probe(anti_invariant_point(n=2, m=2))
    assert anti.is_slant and abs(anti.angle - math.pi / 2) < 1e-9

    ambient = G.canonical_model(4)
    functions = G.StructureFunctions(1, 0, 0, 0, 0, 0, 0)
    raw = G.slant_frame(ambient, 2, math.pi / 3)
    point = G.attach_point(ambient, functions, raw,
                           G.SecondFundamentalForm.zeros(ambient.dim - 4, 4))
    probe = G.slant_probe(point)
    assert probe.is_slant and abs(probe.angle - math.pi / 3) < 1e-6
    assert abs(point.t_norm_sq - 2 * math.cos(math.pi / 3) ** 2) < 1e-9


def test_slant_probe_mixed_frame_is_not_slant():
    ambient = G.canonical_model(4)
    functions = G.StructureFunctions(1, 0, 0, 0, 0, 0, 0)
    eye = np.eye(ambient.dim)
    raw = [eye[0], eye[1], eye[2], eye[4], ambient.xi[0], ambient.xi[1]]
    point = G.attach_point(ambient, functions, raw,
                           G.SecondFundamentalForm.zeros(ambient.dim - 6, 6))
    assert G.slant_probe(point).kind == "not_slant"


def test_slant_probe_indeterminate_without_l():
    ambient = G.canonical_model(1)
    functions = G.StructureFunctions(1, 0, 0, 0, 0, 0, 0)
    point = G.attach_point(ambient, functions, [ambient.xi[0], ambient.xi[1]],
                           G.SecondFundamentalForm.zeros(2, 2))
    assert G.slant_probe(point).kind == "indeterminate"


def test_relative_null_space_cases():
    point = spot_point()
    kernel = G.relative_null_space(point)
    assert len(kernel) == 4  # vanishing form: the whole tangent space

    sff = sff_with(2, 4, {(0, 0, 0): 1.0})
    pinned = invariant_point(n=2, m=2, sff=sff)
    kernel = G.relative_null_space(pinned)
    assert len(kernel) == 3
    for vec in kernel:
        assert abs(vec @ pinned.tangent.matrix[0]) < 1e-12

    rng = np.random.default_rng(11)
    dense = rng.normal(size=(2, 4, 4))
    dense = (dense + dense.transpose(0, 2, 1)) / 2
    generic = invariant_point(n=2, m=2, sff=G.SecondFundamentalForm(dense))
    assert G.relative_null_space(generic) == []


def test_null_space_vectors_annihilate_sigma():
    for trial in range(20):
        cfg = G.GeneratorConfig(seed=700 + trial, n=2 + trial % 4,
                                m=3 + trial % 3, constraint="minimal")
        point = G.random_instance(cfg)
        s = point.sff.coeffs
        for vec in G.relative_null_space(point):
            coords = point.tangent.matrix @ vec
            assert np.max(np.abs(np.einsum("rij,i->rj", s, coords))) <= 1e-8


def test_classify_cases():
    point = spot_point()
    flags = G.classify_sff(point)
    assert all(flags.as_dict().values())

    # identity block on L only: f-umbilical but not umbilical
    n, rank = 3, 3
    entries = {(0, i, i): 1.0 for i in range(n)}
    sff = sff_with(rank, n + 2, entries)
    point_f = anti_invariant_point(n=n, m=3, sff=sff)
    flags = G.classify_sff(point_f)
    assert flags.totally_f_umbilical and not flags.totally_umbilical
    assert not flags.totally_geodesic and not flags.totally_f_geodesic
    assert not flags.minimal

    # single off-diagonal entry: traceless, hence minimal, nothing else
    sff = sff_with(2, 4, {(0, 0, 1): 1.0})
    point_o = invariant_point(n=2, m=2, sff=sff)
    flags = G.classify_sff(point_o)
    assert flags.minimal
    assert not flags.totally_geodesic and not flags.totally_umbilical
    assert not flags.totally_f_geodesic and not flags.totally_f_umbilical


def test_t_plus_n_splits_f_norms():
    for trial in range(25):
        cfg = G.GeneratorConfig(seed=1_500 + trial, n=1 + trial % 6,
                                m=max(2, 1 + trial % 6), constraint="none")
        point = G.random_instance(cfg)
        report = G.invariant_report(point)
        f_norms = sum(
            float(np.linalg.norm(point.ambient.f_matrix @ e) ** 2)
            for e in point.tangent.matrix[: point.n]
        )
        assert abs(report.t_norm_sq + report.n_norm_sq - f_norms) < 1e-9


def test_tau_invariant_under_l_reordering():
    rng = np.random.default_rng(12)
    for trial in range(10):
        cfg = G.GeneratorConfig(seed=2_500 + trial, n=3 + trial % 4, m=6,
                                constraint="none")
        point = G.random_instance(cfg)
        n = point.n
        perm = rng.permutation(n)
        order = np.concatenate([perm, [n, n + 1]])
        raw = [point.tangent.matrix[i] for i in order]
        coeffs = point.sff.coeffs[:, order][:, :, order]
        shuffled = G.attach_point(point.ambient, point.functions, raw,
                                  G.SecondFundamentalForm(coeffs), point.flags)
        assert abs(shuffled.tau - point.tau) < 1e-9


def test_slant_metric_relation():
    rng = np.random.default_rng(13)
    ambient = G.canonical_model(4)
    functions = G.StructureFunctions(1, 1, 1, 0, 0, 0, 0)
    theta = 0.9
    raw = G.slant_frame(ambient, 4, theta)
    sff = G.random_sff(rng, ambient.dim - 6, 6, 1.0, "none", 4)
    point = G.attach_point(ambient, functions, raw, sff)
    for _ in range(10):
        x = rng.normal(size=6) @ point.tangent.matrix
        y = rng.normal(size=6) @ point.tangent.matrix
        _, nx = G.tn_decompose(point, x)
        _, ny = G.tn_decompose(point, y)
        fx = ambient.f_matrix @ x
        fy = ambient.f_matrix @ y
        assert abs(float(nx @ ny) - math.sin(theta) ** 2 * float(fx @ fy)) < 1e-9
