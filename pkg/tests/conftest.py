import numpy as np
import pytest
from hypothesis import strategies as st

from mkpolar.construction import CodeSpec, design_code
from mkpolar.kernels import code_length


def kernel_vectors(max_n, min_n=2):
    """All kernel vectors whose code length lies in [min_n, max_n]."""
    found = []

    def grow(prefix, width):
        if min_n <= width:
            found.append(tuple(prefix))
        for k in (2, 3):
            if width * k <= max_n:
                prefix.append(k)
                grow(prefix, width * k)
                prefix.pop()

    grow([], 1)
    return [kv for kv in found if kv]


def spec_with_frozen(kv, frozen):
    frozen = np.asarray(frozen, dtype=np.uint8)
    n = code_length(kv)
    return CodeSpec(n_bits=n, k_bits=n - int(frozen.sum()), kernels=tuple(kv), frozen=frozen)


def rate1_spec(kv):
    n = code_length(kv)
    return spec_with_frozen(kv, np.zeros(n, dtype=np.uint8))


def rep_spec(kv):
    """All bits frozen except the last."""
    n = code_length(kv)
    frozen = np.ones(n, dtype=np.uint8)
    frozen[-1] = 0
    return spec_with_frozen(kv, frozen)


def noiseless_llrs(x, magnitude=6.0):
    return magnitude * (1.0 - 2.0 * np.asarray(x, dtype=float))


@st.composite
def arbitrary_specs(draw, max_n=72):
    """Codes with a random kernel vector and a completely arbitrary frozen mask."""
    kv = draw(
        st.lists(st.sampled_from([2, 3]), min_size=1, max_size=6).filter(
            lambda v: np.prod(v) <= max_n
        )
    )
    n = int(np.prod(kv))
    frozen = draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))
    return spec_with_frozen(tuple(kv), np.array(frozen, dtype=np.uint8))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def spec96():
    return design_code((2, 2, 2, 2, 2, 3), 48)
