import time

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from amalgam.rings import Polynomial, make_gf, make_poly_quotient, make_quotient, make_zmod
from amalgam.ideals import ideal_generated
from amalgam.constructions import amalgamation
from amalgam.verifier.corpus import generate_corpus
from amalgam.verifier.instances import Builder
from amalgam.verifier.suite import run_suite

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def polyx(p, k):
    F = make_gf(p)
    return make_poly_quotient(F, Polynomial.from_ints(F, [0] * k + [1]))


def canonical_amalgam(R, I_gens, J_gens):
    """R -> R/(I_gens) canonical surjection with J generated in the quotient."""
    S, f = make_quotient(R, ideal_generated(R, I_gens))
    return amalgamation(f, ideal_generated(S, J_gens))


@pytest.fixture(scope="session")
def z48_instance():
    R = make_zmod(48)
    return canonical_amalgam(R, [24], [6])


@pytest.fixture(scope="session")
def x8_instance():
    R = polyx(2, 8)
    X = R.generator
    S, f = make_quotient(R, ideal_generated(R, [R.pow(X, 4)]))
    return amalgamation(f, ideal_generated(S, [S.pow(S.generator, 2)]))


@pytest.fixture(scope="session")
def x4_instance():
    R = polyx(2, 4)
    X = R.generator
    S, f = make_quotient(R, ideal_generated(R, [R.pow(X, 2)]))
    return amalgamation(f, ideal_generated(S, [S.generator]))


@pytest.fixture(scope="session")
def builder():
    return Builder()


# wall-clock seconds of the shared session computations, filled on first use
TIMINGS = {}


@pytest.fixture(scope="session")
def corpus(builder):
    t0 = time.perf_counter()
    out = generate_corpus(builder=builder)
    TIMINGS["corpus"] = time.perf_counter() - t0
    return out


@pytest.fixture(scope="session")
def suite_summary(corpus):
    t0 = time.perf_counter()
    out = run_suite(corpus)
    TIMINGS["suite"] = time.perf_counter() - t0
    return out


@pytest.fixture(scope="session")
def timings():
    return TIMINGS


@pytest.fixture(scope="session")
def small_corpus():
    from amalgam.verifier.corpus import CorpusBounds
    b = CorpusBounds(zmod_max=12, polyx_max=16, extension_fields=((2, 2),),
                     max_amalgam_size=64, trivext_base_max=4, trivext_max=32)
    return generate_corpus(b, Builder())


def as_set(mask):
    return set(np.flatnonzero(mask).tolist())


def f2_trivext_f2sq():
    """F2 |x F2^2: local, square-zero maximal ideal, Gaussian but not arithmetical."""
    from amalgam.constructions import trivial_extension
    from amalgam.modules import free_module
    F = make_gf(2)
    return trivial_extension(F, free_module(F, 2))
