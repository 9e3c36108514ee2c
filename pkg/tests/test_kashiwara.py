import json
from fractions import Fraction
from pathlib import Path

import pytest

from jetweil.errors import DegreeOverflow, DimensionMismatch, SingularCenter
from jetweil.kashiwara import (
    EnvelopingElement,
    ZModule,
    alpha_iso_check,
    degenerate_center_check,
    filt_identity_check,
    filt_module_check,
    induce,
    invariants_F,
    key_lemma_check,
    module_from_spec,
    monomials,
    roundtrip_check,
    truncation_soundness,
)
from jetweil.suites import run_kashiwara

MODULES = Path(__file__).resolve().parent.parent / "resources" / "modules" / "examples.json"

x, y, z = EnvelopingElement.x(), EnvelopingElement.y(), EnvelopingElement.z()


def load_specs():
    with open(MODULES, "r", encoding="utf-8") as f:
        return [module_from_spec(item) for item in json.load(f)]


def all_pass(cases):
    assert [c.to_dict() for c in cases if not c.passed] == []


# ---------------------------------------------------------
# Enveloping algebra
# ---------------------------------------------------------

def test_heisenberg_relation():
    assert x * y == y * x + z
    assert (x * y - y * x) * z == z ** 2


def test_z_is_invertible_and_central():
    assert EnvelopingElement.z(-1) * z == EnvelopingElement.one()
    assert z * x == x * z
    assert z * y == y * z


def test_associativity():
    assert (x * y) * (x * y) == x * (y * x) * y
    assert (x ** 2 * y) * y == x ** 2 * y ** 2


def test_indices_commute():
    x0, y1 = EnvelopingElement.x(0, 2), EnvelopingElement.y(1, 2)
    assert x0 * y1 == y1 * x0
    with pytest.raises(DimensionMismatch):
        x0 + x


@pytest.mark.parametrize("i", range(5))
def test_filtration_identities(i):
    all_pass(filt_identity_check(i))


# ---------------------------------------------------------
# Modules over Q[z, 1/z]
# ---------------------------------------------------------

def test_singular_center_is_rejected():
    with pytest.raises(SingularCenter):
        ZModule([[0]])
    with pytest.raises(SingularCenter):
        ZModule([[1, 1], [1, 1]])


def test_isomorphism_classes():
    jordan = ZModule([[1, 1], [0, 1]])
    assert jordan.is_isomorphic(ZModule([[1, 2], [0, 1]]))
    assert not jordan.is_isomorphic(ZModule([[1, 0], [0, 1]]))
    assert not ZModule([[2]]).is_isomorphic(ZModule([[3]]))


def test_random_modules_are_invertible(rng):
    for dim in (1, 2, 3):
        base = ZModule.random(rng, dim)
        assert base.dim == dim
        assert base.is_isomorphic(ZModule(base.z_matrix))


def test_from_dict_checks_dimension():
    with pytest.raises(DimensionMismatch):
        ZModule.from_dict({"dim": 2, "z_matrix": [["1"]]})
    assert ZModule.from_dict({"z_matrix": [["-1/2"]]}).to_dict()["z_matrix"] == [["-1/2"]]


# ---------------------------------------------------------
# Induced modules
# ---------------------------------------------------------

def test_monomials():
    assert monomials(1, 3) == [(0,), (1,), (2,), (3,)]
    assert len(monomials(2, 3)) == 10


def test_induced_dimension():
    assert induce(ZModule([[1, 1], [0, 1]]), 1, 4).dim == 10
    assert induce(ZModule([[2]]), 2, 3).dim == 10
    with pytest.raises(ValueError):
        induce(ZModule([[2]]), 1, -1)


def test_action_on_induced_module():
    module = induce(ZModule([[2]]), 1, 3)
    assert module.apply(x, [0, 1, 0, 0]) == [2, 0, 0, 0]
    assert module.apply(y, [1, 0, 0, 0]) == [0, 1, 0, 0]
    assert module.apply(EnvelopingElement.z(-1), [1, 0, 0, 0]) == [Fraction(1, 2), 0, 0, 0]
    assert module.apply(x * y, [1, 0, 0, 0]) == [2, 0, 0, 0]


def test_y_past_the_truncation():
    module = induce(ZModule([[2]]), 1, 3)
    with pytest.raises(DegreeOverflow):
        module.apply(y ** 4, [1, 0, 0, 0])


def test_roundtrip_on_examples():
    for index, (base, n, bound) in enumerate(load_specs()):
        case = roundtrip_check(base, n, bound, f"{index}/")
        assert case.passed, case.to_dict()


def test_roundtrip_on_random_modules(rng):
    for n in (1, 2):
        for index in range(3):
            case = roundtrip_check(ZModule.random(rng, 2), n, 3, f"{index}/")
            assert case.passed, case.to_dict()


def test_invariants_of_a_direct_sum():
    a, b = ZModule([[1, 1], [0, 1]]), ZModule([[-3]])
    total = induce(a, 1, 3).direct_sum(induce(b, 1, 3))
    assert invariants_F(total).is_isomorphic(a.direct_sum(b))


@pytest.mark.parametrize("n", [1, 2])
def test_key_lemma(n):
    module = induce(ZModule([[0, -2], [1, 0]]), n, 4 if n == 1 else 3)
    all_pass(key_lemma_check(module, module.degree_bound - 1))
    with pytest.raises(ValueError):
        key_lemma_check(module, module.degree_bound)


def test_alpha_is_bijective():
    for base, n, bound in load_specs():
        all_pass(alpha_iso_check(induce(base, n, bound)))


@pytest.mark.parametrize("i", range(3))
def test_filtration_on_module(i):
    module = induce(ZModule([[Fraction(1, 2), 1], [0, Fraction(1, 2)]]), 2, 3)
    all_pass(filt_module_check(module, i))


def test_truncation_is_sound():
    assert truncation_soundness(ZModule([[3]]), 1, 4).passed
    assert truncation_soundness(ZModule([[1, 1], [0, 1]]), 2, 2).passed


def test_zero_center_breaks_the_equivalence():
    all_pass(degenerate_center_check(1, 1, 3))
    all_pass(degenerate_center_check(2, 2, 2))


# ---------------------------------------------------------
# Higher-dimensional N
# ---------------------------------------------------------

@pytest.mark.parametrize("dim", [3, 4])
@pytest.mark.parametrize("n", [1, 2])
def test_equivalence_up_to_dimension_four(rng, dim, n):
    for index in range(2):
        base = ZModule.random(rng, dim)
        module = induce(base, n, 3)
        assert roundtrip_check(base, n, 3, f"{index}/").passed
        all_pass(alpha_iso_check(module))
        all_pass(key_lemma_check(module, 2))


def test_suite_sweeps_every_dimension():
    report = run_kashiwara([1, 2, 3, 4], [1, 2], degree_bound=3, samples={1: 1, 2: 1}, seed=7, i_max=1,
                           detailed=0)
    names = [case.name for case in report.cases]
    assert report.passed, [c.to_dict() for c in report.cases if not c.passed]
    assert report.parameters["dim"] == [1, 2, 3, 4]
    for dim in (1, 2, 3, 4):
        for n in (1, 2):
            assert f"F(G(N))=N/d={dim},n={n}/000/n={n}" in names
            assert any(name.startswith(f"F(G(N1)+G(N2))=N1+N2/d={dim},n={n}/") for name in names)
