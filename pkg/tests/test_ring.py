import random
from fractions import Fraction

import pytest

from kazhdan.backends import FinitelyPresentedBackend
from kazhdan.presentations import free_group_spec, presentation
from kazhdan.ring import LaplacianBundle, RingElem, laplacian

S3 = FinitelyPresentedBackend(
    presentation(["s", "t"], ["(s*t)^3"], involutions=["s", "t"], name="A2"))
Z5 = FinitelyPresentedBackend(presentation(["a"], ["a^5"], name="Z/5"))
FREE2 = FinitelyPresentedBackend(free_group_spec(2))


def random_elem(backend, rng, nterms=4, span=3):
    gens = backend.generator_ids()
    coeffs = {}
    for _ in range(nterms):
        g = backend.identity()
        for _ in range(rng.randrange(span + 1)):
            g = backend.multiply(g, rng.choice(gens))
        coeffs[g] = coeffs.get(g, 0) + Fraction(rng.randrange(-5, 6))
    return RingElem(backend, coeffs)


def test_star_on_free_group():
    two_e_plus_3a = RingElem(FREE2, {FREE2.identity(): 2,
                                     FREE2.generator_id("a"): 3})
    starred = two_e_plus_3a.star()
    assert starred.coeff(FREE2.identity()) == 2
    assert starred.coeff(FREE2.generator_id("A")) == 3
    assert starred.coeff(FREE2.generator_id("a")) == 0


def test_laplacian_is_self_adjoint_and_augmentation_zero():
    for backend in (S3, Z5, FREE2):
        bundle = laplacian(backend)
        assert bundle.delta.star() == bundle.delta
        assert bundle.delta.augmentation() == 0
        assert bundle.delta_squared().augmentation() == 0


def test_star_antiautomorphism_on_s3():
    rng = random.Random(11)
    for _ in range(25):
        x, y = random_elem(S3, rng), random_elem(S3, rng)
        assert (x * y).star() == y.star() * x.star()
        assert x.star().star() == x


def test_infinite_order_product():
    s = RingElem.from_generator(FREE2, "a")
    sinv = RingElem.from_generator(FREE2, "A")
    one = RingElem.unit(FREE2)
    prod = (one - s) * (one - sinv)
    assert prod.coeff(FREE2.identity()) == 2
    assert prod.coeff(FREE2.generator_id("a")) == -1
    assert prod.coeff(FREE2.generator_id("A")) == -1
    assert len(prod) == 3


def test_free_group_delta_squared_identity_coefficient():
    # coefficient of e in Delta^2 is |S|^2 + |S| for a free symmetric set
    for rank in (2, 3):
        backend = FinitelyPresentedBackend(free_group_spec(rank))
        bundle = laplacian(backend)
        size = bundle.size
        assert bundle.delta_squared().coeff(backend.identity()) == size * size + size


def test_ring_laws_exact_random():
    rng = random.Random(5)
    for backend in (S3, Z5):
        for _ in range(15):
            x, y, z = (random_elem(backend, rng) for _ in range(3))
            assert (x * y) * z == x * (y * z)
            assert x * (y + z) == x * y + x * z
            assert (x + y) * z == x * z + y * z
            assert (x + y).augmentation() == x.augmentation() + y.augmentation()
            assert (x * y).augmentation() == x.augmentation() * y.augmentation()
            assert (x + y).l1_norm() <= x.l1_norm() + y.l1_norm()


def test_float_and_exact_paths_agree():
    rng = random.Random(3)
    for _ in range(10):
        x, y = random_elem(S3, rng), random_elem(S3, rng)
        exact = (x * y).to_float()
        approx = x.to_float() * y.to_float()
        for g in set(exact.support()) | set(approx.support()):
            assert abs(exact.coeff(g) - approx.coeff(g)) < 1e-12


def test_mixed_backend_rejected():
    x = RingElem.unit(S3)
    y = RingElem.unit(Z5)
    with pytest.raises(ValueError):
        _ = x + y


def test_laplacian_requires_symmetric_generators():
    bundle = LaplacianBundle(S3)
    assert bundle.size == 2          # two involutions, counted once
    assert bundle.delta.coeff(S3.identity()) == 2


def test_dump_format():
    x = RingElem(S3, {S3.identity(): Fraction(1, 2), S3.generator_id("s"): -2})
    lines = x.dump().splitlines()
    assert lines[0] == "1/2\te"
    assert lines[1] == "-2\ts"
