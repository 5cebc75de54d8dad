"""Message expansion and codeword encoding.

Two encoders are provided: a direct GF(2) vector-matrix product against the
full generator, and the stage-wise transform that costs O(N log N). They are
interchangeable; the matrix form doubles as the test oracle for the fast one.
"""

import numpy as np

from .kernels import generator_matrix, gf2_vecmat, stage_transform


def expand_message(a, spec):
    """Place the K message bits into the information positions of a sourceword.

    Frozen positions are zero. Accepts a batch with the message bits on the
    trailing axis.
    """
    a = np.asarray(a, dtype=np.uint8)
    if a.shape[-1] != spec.k_bits:
        raise ValueError(f"message length {a.shape[-1]} != K = {spec.k_bits}")
    u = np.zeros(a.shape[:-1] + (spec.n_bits,), dtype=np.uint8)
    u[..., spec.info_indices] = a
    return u


def encode_matrix(u, spec):
    """Codeword x = u . G over GF(2) using the dense generator."""
    return gf2_vecmat(u, generator_matrix(spec.kernels)).astype(np.uint8)


def encode_recursive(u, spec):
    """Codeword via stage-wise combine maps; equals encode_matrix on all inputs."""
    return stage_transform(u, spec.kernels)


def encode_message(a, spec):
    """Expand then encode in one step."""
    return encode_recursive(expand_message(a, spec), spec)
