import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import example
from paracontact import classes as fc
from paracontact.errors import BadClassIndex, BadN, NotDim3, NotPhiBasis, ResidualTooLarge, SymmetryViolation
from paracontact.frame import cubic_inner, cubic_norm
from paracontact.gallery import LieExample, build, random_structure
from paracontact.lie import nabla_phi


def family_F(a1, a2):
    _, s, conn = example(a1, a2)
    return fc.compute_F(nabla_phi(conn, s), s)


def test_lee_forms_on_family():
    lee = fc.lee_forms(family_F(0.7, -1.3))
    assert lee.theta == pytest.approx([2.6, 0, 0])
    assert lee.theta_star == pytest.approx([0, 0, 0])
    assert lee.omega == pytest.approx([0, 0, 0])


def test_family_components_match_dim3_closed_forms():
    F = family_F(1.0, 1.0)
    sc = fc.dim3_components(F)
    assert (sc.theta0, sc.mu) == (-2.0, -1.0)
    assert all(v == 0 for k, v in sc.as_dict().items() if k not in ("theta0", "mu"))
    closed = fc.dim3_class_tensors(sc)
    for i, Fi in fc.components(F).items():
        assert np.allclose(Fi, closed[i], atol=1e-12), i


@given(st.integers(0, 10_000))
@settings(max_examples=30, deadline=None)
def test_dim3_scalars_rebuild_random_F(seed):
    _, s, _ = build(LieExample(1, (0, 0)))
    F = fc.random_F(s, seed)
    sc = fc.dim3_components(F)
    T = F.F
    assert sc.theta0 == pytest.approx(T[1, 1, 0] + T[2, 2, 0])
    assert sc.theta_star0 == pytest.approx(T[1, 2, 0] + T[2, 1, 0])
    assert sc.omega1 == pytest.approx(T[0, 0, 1])
    closed = fc.dim3_class_tensors(sc)
    assert np.allclose(sum(closed.values()), T, atol=1e-12)
    for i, Fi in fc.components(F).items():
        assert np.allclose(Fi, closed[i], atol=1e-12), i


def test_dim3_requires_phi_basis():
    s, _ = random_structure(3, 1)
    with pytest.raises(NotPhiBasis):
        fc.dim3_components(fc.random_F(s, 0))
    s5, _ = random_structure(5, 1)
    with pytest.raises(NotDim3):
        fc.dim3_components(fc.random_F(s5, 0))


@pytest.mark.parametrize("a, names", [((1, 1), ["F4", "F9"]), ((0, 1), ["F4'"]), ((1, 0), ["F9"]), ((0, 0), ["F0"])])
def test_family_class_names(a, names):
    assert fc.classify(family_F(*a)).class_names == names


def test_f4_prime_needs_exact_f4_prime_component():
    r = fc.classify(family_F(0, 2))
    assert r.members == (4,) and not r.is_F4_prime and r.theta_xi == pytest.approx(-4)
    s, _ = random_structure(5, 3)
    r = fc.classify(fc.FundamentalTensor(fc.f4_prime_tensor(s), s))
    assert r.is_F4_prime and r.theta_xi == pytest.approx(-2 * s.n)


def test_zero_tensor_is_F0():
    s, _ = random_structure(3, 0)
    r = fc.classify(fc.FundamentalTensor(np.zeros((3, 3, 3)), s))
    assert r.is_F0 and r.members == () and r.class_names == ["F0"]


def test_non_admissible_tensor_rejected(rng):
    s, _ = random_structure(3, 0)
    raw = fc.FundamentalTensor(rng.standard_normal((3, 3, 3)), s)
    with pytest.raises(SymmetryViolation):
        raw.check()
    with pytest.raises(ResidualTooLarge):
        fc.classify(raw)


def test_bad_indices():
    s, _ = random_structure(3, 0)
    with pytest.raises(BadClassIndex):
        fc.component(fc.random_F(s, 0), 12)
    with pytest.raises(BadN):
        fc.subspace_dim_formula(0, 1)
    with pytest.raises(BadClassIndex):
        fc.subspace_dim_formula(2, 0)


def test_dim_formulas():
    assert [fc.subspace_dim_formula(1, i) for i in fc.CLASS_INDICES] == [2, 0, 0, 1, 1, 0, 0, 1, 1, 1, 2]
    assert [fc.subspace_dim_formula(3, i) for i in fc.CLASS_INDICES] == [6, 30, 18, 1, 1, 10, 6, 9, 9, 9, 6]
    for n in (1, 2):
        s, _ = random_structure(2 * n + 1, 5)
        ranks = fc.subspace_dims_numeric(s)
        assert ranks.total == sum(fc.subspace_dim_formula(n, i) for i in fc.CLASS_INDICES)


@given(st.integers(0, 10_000), st.sampled_from([3, 5]))
@settings(max_examples=25, deadline=None)
def test_projection_is_idempotent_and_admissible(seed, dim):
    s, _ = random_structure(dim, seed)
    raw = np.random.default_rng(seed).standard_normal((dim,) * 3)
    P = fc.project_to_space(raw, s)
    assert max(fc.symmetry_residuals(P, s)) <= 1e-10 * max(1, np.abs(P).max())
    assert np.allclose(fc.project_to_space(P, s), P, atol=1e-10)
    # orthogonal: the discarded part is g-orthogonal to the admissible space
    other = fc.random_F(s, seed + 1).F
    assert abs(cubic_inner(raw - P, other, s.model)) <= 1e-9 * cubic_norm(raw, s.model) * cubic_norm(other, s.model)


@given(st.integers(0, 10_000), st.sampled_from([3, 5]))
@settings(max_examples=25, deadline=None)
def test_decomposition_properties(seed, dim):
    s, _ = random_structure(dim, seed)
    F = fc.random_F(s, seed)
    comps = fc.components(F)
    scale = max(1.0, F.norm)
    assert cubic_norm(F.F - sum(comps.values()), s.model) <= 1e-10 * scale
    norms = {i: cubic_norm(c, s.model) for i, c in comps.items()}
    live = [i for i in norms if norms[i] > 1e-9 * scale]
    for i, j in itertools.combinations(live, 2):
        assert abs(cubic_inner(comps[i], comps[j], s.model)) <= 1e-10 * norms[i] * norms[j]


@pytest.mark.parametrize("i", fc.CLASS_INDICES)
def test_pure_samples_classify_as_their_class(i):
    n = 1 if fc.subspace_dim_formula(1, i) else 2
    s, _ = random_structure(2 * n + 1, 40 + i)
    r = fc.classify(fc.pure_class_sample(s, i, i))
    assert r.members == (i,)


def test_lee_form_identities(random_pair):
    s, F = random_pair
    lee = fc.lee_forms(F)
    assert abs(lee.omega @ s.xi) <= 1e-12 * max(1, F.norm)
    assert np.allclose(lee.theta_star @ s.phi, -lee.theta @ s.h, atol=1e-10 * max(1, F.norm))
