"""Reference successive-cancellation decoding over mixed binary/ternary trees.

The decode tree follows the generator's Kronecker order: the first kernel in
the vector governs the root split, a node at depth d branches by the (d+1)-th
kernel, and leaves are single sourceword bits. Binary nodes apply the f and g
LLR maps to their left and right children; ternary nodes apply lambda0/1/2 to
left, center and right. Partial sums travel back up through the c2/c3
combines. LLR sign convention: positive means bit 0.
"""

import numpy as np

from .kernels import validate_kernel_vector


def f_op(l0, l1):
    """Min-sum box-plus: sign(l0) sign(l1) min(|l0|, |l1|)."""
    return np.sign(l0) * np.sign(l1) * np.minimum(np.abs(l0), np.abs(l1))


def g_op(l0, l1, u0):
    """(-1)^u0 * l0 + l1, with u0 the left partial sum."""
    return (1.0 - 2.0 * np.asarray(u0, dtype=float)) * l0 + l1


def lambda0(l0, l1, l2):
    """Three-way min-sum box-plus for the left branch of a ternary node."""
    return f_op(f_op(l0, l1), l2)


def lambda1(l0, l1, l2, u0):
    """(-1)^u0 * l0 + (l1 box-plus l2), for the center branch."""
    return (1.0 - 2.0 * np.asarray(u0, dtype=float)) * l0 + f_op(l1, l2)


def lambda2(l1, l2, u0, u1):
    """(-1)^u0 * l1 + (-1)^(u0 xor u1) * l2, for the right branch.

    u0 and u1 are the left and center partial sums.
    """
    u0 = np.asarray(u0, dtype=np.uint8)
    u1 = np.asarray(u1, dtype=np.uint8)
    s0 = 1.0 - 2.0 * u0
    s1 = 1.0 - 2.0 * (u0 ^ u1)
    return s0 * l1 + s1 * l2


def hard_decision(llr, is_frozen=False):
    """Bit decision: frozen positions decide 0, otherwise 0 iff llr > 0.

    An LLR of exactly zero decides 1 on unfrozen positions.
    """
    if is_frozen:
        return np.zeros_like(np.asarray(llr), dtype=np.uint8)[()]
    return (np.asarray(llr) <= 0).astype(np.uint8)[()]


def combine2(s0, s1):
    """Binary partial-sum combine: (s0 xor s1, s1)."""
    return s0 ^ s1, s1


def combine3(s0, s1, s2):
    """Ternary combine: (s0^s1, s0^s2, s0^s1^s2); equals (s0,s1,s2) . T3."""
    return s0 ^ s1, s0 ^ s2, s0 ^ s1 ^ s2


def combine3_inv(s0, s1, s2):
    """Inverse ternary combine: (s0^s1^s2, s1^s2, s0^s2)."""
    return s0 ^ s1 ^ s2, s1 ^ s2, s0 ^ s2


def tree_spans(kv):
    """Leaf span of a node at each depth: spans[0] = N down to spans[M] = 1."""
    kv = validate_kernel_vector(kv)
    spans = [1]
    for k in reversed(kv):
        spans.append(spans[-1] * k)
    return spans[::-1]


class SCDecoder:
    """Successive-cancellation decoder for one code.

    Owns per-depth LLR and partial-sum scratch buffers, so an instance must
    not be shared mid-decode; create one per worker. decode_batch runs any
    number of independent frames through the same schedule at once.
    """

    def __init__(self, spec):
        self.spec = spec
        self.kv = spec.kernels
        self.spans = tree_spans(self.kv)
        self._batch = 0
        self._llr = None
        self._beta = None
        self._u = None

    def _ensure_buffers(self, batch):
        if batch == self._batch:
            return
        self._batch = batch
        self._llr = [np.empty((batch, s), dtype=float) for s in self.spans]
        self._beta = [np.empty((batch, s), dtype=np.uint8) for s in self.spans]
        self._u = np.empty((batch, self.spec.n_bits), dtype=np.uint8)

    def decode(self, llr):
        """Decode one frame; returns (u_hat, x_hat) with x_hat the root partial sums."""
        llr = np.asarray(llr, dtype=float)
        if llr.shape != (self.spec.n_bits,):
            raise ValueError(f"expected {self.spec.n_bits} LLRs, got shape {llr.shape}")
        u, x = self.decode_batch(llr[np.newaxis, :])
        return u[0], x[0]

    def decode_batch(self, llrs):
        llrs = np.asarray(llrs, dtype=float)
        if llrs.ndim != 2 or llrs.shape[1] != self.spec.n_bits:
            raise ValueError(f"expected (batch, {self.spec.n_bits}) LLRs, got {llrs.shape}")
        self._ensure_buffers(llrs.shape[0])
        self._llr[0][:] = llrs
        self._decode_node(0, 0)
        return self._u.copy(), self._beta[0].copy()

    def _decode_node(self, depth, offset):
        span = self.spans[depth]
        if span == 1:
            beta = self._beta[depth]
            if self.spec.frozen[offset]:
                beta[:, 0] = 0
            else:
                beta[:, 0] = self._llr[depth][:, 0] <= 0
            self._u[:, offset] = beta[:, 0]
            return

        k = self.kv[depth]
        q = span // k
        alpha = self._llr[depth]
        child = self._llr[depth + 1]
        beta = self._beta[depth]

        if k == 2:
            l0, l1 = alpha[:, :q], alpha[:, q:span]
            child[:] = f_op(l0, l1)
            self._decode_node(depth + 1, offset)
            beta[:, :q] = self._beta[depth + 1]
            child[:] = g_op(l0, l1, beta[:, :q])
            self._decode_node(depth + 1, offset + q)
            b1 = self._beta[depth + 1]
            beta[:, :q] ^= b1
            beta[:, q:span] = b1
        else:
            l0, l1, l2 = alpha[:, :q], alpha[:, q : 2 * q], alpha[:, 2 * q : span]
            child[:] = lambda0(l0, l1, l2)
            self._decode_node(depth + 1, offset)
            beta[:, :q] = self._beta[depth + 1]
            child[:] = lambda1(l0, l1, l2, beta[:, :q])
            self._decode_node(depth + 1, offset + q)
            beta[:, q : 2 * q] = self._beta[depth + 1]
            child[:] = lambda2(l1, l2, beta[:, :q], beta[:, q : 2 * q])
            self._decode_node(depth + 1, offset + 2 * q)
            s0 = beta[:, :q].copy()
            s1 = beta[:, q : 2 * q].copy()
            s2 = self._beta[depth + 1]
            beta[:, :q] = s0 ^ s1
            beta[:, q : 2 * q] = s0 ^ s2
            beta[:, 2 * q : span] = s0 ^ s1 ^ s2


def decode_sc(spec, llr):
    """One-shot SC decode; returns (u_hat, x_hat)."""
    return SCDecoder(spec).decode(llr)
