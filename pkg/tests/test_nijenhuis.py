import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import example
from paracontact import classes as fc
from paracontact import torsion as nj
from paracontact.errors import ModeUnsupported
from paracontact.frame import cubic_norm, tensor_norm
from paracontact.gallery import random_structure
from paracontact.lie import nabla_phi

GRID = [(1.0, 1.0), (0.0, 1.0), (1.0, 0.0), (0.0, 0.0), (-2.0, 3.0)]


def family(a1, a2):
    _, s, conn = example(a1, a2)
    return s, conn, fc.compute_F(nabla_phi(conn, s), s)


def antisym(T, i, j, k, v):
    T[i, j, k] += v
    T[j, i, k] -= v


def sym(T, i, j, k, v):
    T[i, j, k] += v
    if i != j:
        T[j, i, k] += v


@pytest.mark.parametrize("a1, a2", GRID)
def test_family_nijenhuis_from_definition(a1, a2):
    # hand evaluation of the bracket definitions on the frame; N(E1, E2) = 0
    N = np.zeros((3, 3, 3))
    antisym(N, 0, 1, 1, -2 * a1)
    antisym(N, 0, 2, 2, 2 * a1)
    H = np.zeros((3, 3, 3))
    sym(H, 1, 2, 0, -4 * a2)
    sym(H, 0, 1, 1, 2 * a1)
    sym(H, 0, 2, 2, -2 * a1)
    N2 = np.zeros((3, 3))
    N3 = np.zeros((3, 3))
    N3[1, 2], N3[2, 1] = 2 * a1, -2 * a1
    H2 = np.diag([0.0, 4 * a2, 4 * a2])
    H3 = -N3

    s, conn, F = family(a1, a2)
    got, hat = nj.nijenhuis(F), nj.assoc_nijenhuis(F)
    for a, b in [(got.N1, N), (got.N2, N2), (got.N3, N3), (got.N4, 0), (hat.N1, H), (hat.N2, H2), (hat.N3, H3), (hat.N4, 0)]:
        assert np.allclose(a, b, atol=1e-12)
    Nb, Hb = nj.bracket_nijenhuis(conn, s)
    assert np.allclose(Nb, N, atol=1e-12) and np.allclose(Hb, H, atol=1e-12)


def test_family_predicates():
    _, conn, F = family(1.0, 1.0)
    p = nj.predicates(F, conn)
    assert p.normal.holds is False
    _, conn, F = family(0.0, 1.0)
    p = nj.predicates(F, conn)
    assert p.para_sasakian.holds and p.normal.holds and p.paracontact.holds
    assert not p.notes
    # a1 != 0 makes xi non-Killing
    _, conn, F = family(1.0, 0.0)
    p = nj.predicates(F, conn)
    assert p.killing_xi.holds is False
    assert np.allclose(nj.lie_derivative_g(F), np.diag([0.0, 2.0, -2.0]))


def test_raw_mode_leaves_connection_predicates_open():
    s, _ = random_structure(3, 2)
    p = nj.predicates(fc.random_F(s, 2))
    assert p.para_sasakian.holds is None and p.phi_integrable.holds is None
    with pytest.raises(ModeUnsupported):
        nj.phi_brackets(None, s)


def test_zero_F_is_normal_everything():
    s, _ = random_structure(5, 8)
    F = fc.FundamentalTensor(np.zeros((5, 5, 5)), s)
    for bundle in (nj.nijenhuis(F), nj.assoc_nijenhuis(F)):
        assert all(v == 0 for v in bundle.norms(s.model).values())
    p = nj.predicates(F)
    assert p.normal.holds and p.killing_xi.holds and p.eta_closed.holds and not p.paracontact.holds


@pytest.mark.parametrize("dim", [3, 5])
def test_pure_F4_lie_derivative(dim):
    s, _ = random_structure(dim, 21)
    F = fc.pure_class_sample(s, 4, 3)
    t = fc.classify(F).theta_xi
    assert np.allclose(nj.lie_derivative_g(F), -(t / s.n) * (s.g @ s.phi), atol=1e-10)


def test_f4_prime_is_paracontact_not_killing():
    for seed in range(5):
        s, _ = random_structure(5, seed)
        p = nj.predicates(nj.f4_prime_sample(s))
        assert p.paracontact.holds and not p.killing_xi.holds


@given(st.integers(0, 10_000), st.sampled_from([3, 5]))
@settings(max_examples=25, deadline=None)
def test_relations_and_reconstruction(seed, dim):
    s, _ = random_structure(dim, seed)
    F = fc.random_F(s, seed)
    scale = max(1.0, F.norm)
    N, H = nj.nijenhuis(F), nj.assoc_nijenhuis(F)
    for d in list(nj.nijenhuis_relations(N, s).values()) + list(nj.assoc_relations(H, s).values()):
        assert tensor_norm(d, s.model) <= 1e-10 * scale
    for d in list(nj.symmetry_identities(N.N1, s).values()) + list(nj.symmetry_identities(H.N1, s).values()):
        assert tensor_norm(d, s.model) <= 1e-10 * scale
    assert tensor_norm(nj.omega_identity(F, H), s.model) <= 1e-10 * scale
    back = nj.reconstruct_F(N, H, s)
    assert cubic_norm(back - F.F, s.model) <= 1e-10 * scale


@pytest.mark.parametrize("allowed, which", [((1, 2, 4, 5, 6), "N"), ((3, 7), "H")])
def test_membership_implies_vanishing(allowed, which):
    s, _ = random_structure(5, 77)
    F = fc.FundamentalTensor(sum(fc.pure_class_sample(s, i, i).F for i in allowed), s)
    N1 = nj.nijenhuis(F).N1 if which == "N" else nj.assoc_nijenhuis(F).N1
    assert cubic_norm(N1, s.model) <= 1e-10 * max(1.0, F.norm)


def test_para_sasakian_disagreement_is_noted():
    # add an F1 part to the para-Sasakian example: nabla xi is unchanged
    s, conn, F = family(0.0, 1.0)
    extra = fc.pure_class_sample(s, 1, 0).F
    mixed = fc.FundamentalTensor(F.F + extra, s)
    p = nj.predicates(mixed, conn)
    assert any("differ" in note for note in p.notes)
