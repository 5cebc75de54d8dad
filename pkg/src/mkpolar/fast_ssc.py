"""Fast-SSC decoding: frozen-pattern classification, pruned schedules, fast nodes.

Subtrees whose frozen pattern mirrors a simple subcode are decoded in one
specialized step instead of being traversed:

  Rate-0  all bits frozen                 -> zeros
  Rate-1  no bits frozen                  -> elementwise hard decision
  SPC     only the first bit frozen       -> single parity check (Wagner)
  REP     only the last bit unfrozen      -> repetition over pattern P_v

Ternary kernels leave the repeated bit in only part of the codeword, so REP
nodes carry a mask P_v (Kronecker product of (1,1) / (0,1,1) factors). REP2
nodes are all-binary, REP3A all-ternary, REP3B/REP3C have a single ternary
stage first/last; those admit fixed index arithmetic instead of a mask.
"""

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .kernels import code_length, stage_transform, validate_kernel_vector
from .sc import f_op, g_op, lambda0, lambda1, lambda2


class NodeClass(str, Enum):
    RATE0 = "rate0"
    RATE1 = "rate1"
    SPC = "spc"
    REP2 = "rep2"
    REP3A = "rep3a"
    REP3B = "rep3b"
    REP3C = "rep3c"
    GENERIC = "generic"


REP_CLASSES = frozenset({NodeClass.REP2, NodeClass.REP3A, NodeClass.REP3B, NodeClass.REP3C})


@dataclass(frozen=True)
class NodeLimits:
    """Constraints on which fast nodes the schedule builder may emit.

    rep3a_max_span caps all-ternary REP nodes so their patterns can be
    tabulated (3, 9 or 27). REP3B/C are only recognized with at most
    rep3bc_max_ternary_stages ternary stages so the masked sum reduces to
    fixed index arithmetic. The optional span caps disable or bound a node
    class (0 disables, None leaves it uncapped). general_rep lifts the
    REP constraints entirely and decodes any repetition pattern through its
    mask; it exists as an oracle/debug path, not the production default.
    """

    rep3a_max_span: int = 27
    rep3bc_max_ternary_stages: int = 1
    rate1_max_span: int | None = None
    spc_max_span: int | None = None
    rep2_max_span: int | None = None
    general_rep: bool = False

    def __post_init__(self):
        if self.rep3a_max_span not in (3, 9, 27):
            raise ValueError(f"rep3a_max_span must be 3, 9 or 27, got {self.rep3a_max_span}")


_REP_FACTORS = {2: np.array([1, 1], dtype=np.uint8), 3: np.array([0, 1, 1], dtype=np.uint8)}


def rep_pattern(kv_sub):
    """Repetition pattern P_v: Kronecker product of (1,1)/(0,1,1) in kv order.

    Equals the last generator row, i.e. the codeword of (0, ..., 0, 1).
    """
    kv_sub = validate_kernel_vector(kv_sub)
    pat = np.array([1], dtype=np.uint8)
    for k in kv_sub:
        pat = np.kron(pat, _REP_FACTORS[k])
    return pat


def _within(span, cap):
    return cap is None or span <= cap


def classify_node(frozen_span, kv_sub, limits=None):
    """Fast-node class of a subtree from its frozen mask and sub-kernel vector.

    Priority where patterns coincide: Rate0 > Rate1 > REP > SPC.
    """
    limits = limits or NodeLimits()
    mask = np.asarray(frozen_span, dtype=np.uint8)
    kv_sub = validate_kernel_vector(kv_sub)
    span = len(mask)
    if span < 2:
        raise ValueError("classify_node requires span >= 2")
    if span != code_length(kv_sub):
        raise ValueError(f"mask length {span} does not match kernel product")

    n_frozen = int(mask.sum())
    if n_frozen == span:
        return NodeClass.RATE0
    if n_frozen == 0:
        return NodeClass.RATE1 if _within(span, limits.rate1_max_span) else NodeClass.GENERIC
    if n_frozen == span - 1 and mask[-1] == 0:
        n3 = kv_sub.count(3)
        if n3 == 0:
            return NodeClass.REP2 if _within(span, limits.rep2_max_span) else NodeClass.GENERIC
        if n3 == len(kv_sub):
            if span <= limits.rep3a_max_span or limits.general_rep:
                return NodeClass.REP3A
            return NodeClass.GENERIC
        if limits.general_rep:
            return NodeClass.REP3B if kv_sub[0] == 3 else NodeClass.REP3C
        if n3 <= limits.rep3bc_max_ternary_stages:
            if kv_sub[:n3] == (3,) * n3:
                return NodeClass.REP3B
            if kv_sub[-n3:] == (3,) * n3:
                return NodeClass.REP3C
        return NodeClass.GENERIC
    if n_frozen == 1 and mask[0] == 1:
        return NodeClass.SPC if _within(span, limits.spc_max_span) else NodeClass.GENERIC
    return NodeClass.GENERIC


@dataclass(frozen=True, eq=False)
class ScheduleNode:
    node_class: NodeClass
    depth: int
    offset: int
    span: int
    kv_sub: tuple
    pattern: np.ndarray | None = field(default=None, repr=False)
    children: tuple = ()


@dataclass(frozen=True, eq=False)
class PrunedSchedule:
    """Immutable pruned decode tree driving a Fast-SSC decoder."""

    root: ScheduleNode
    kernels: tuple
    n_bits: int
    frozen: np.ndarray = field(repr=False)

    def __iter__(self):
        stack = [self.root]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def leaves(self):
        return [n for n in self if n.node_class is not NodeClass.GENERIC]

    def export_lines(self):
        """Depth-first `depth,offset,span,class` line per pruned-tree node."""
        return [f"{n.depth},{n.offset},{n.span},{n.node_class.value}" for n in self]


def build_schedule(spec, limits=None):
    """Prune the decode tree of a code top-down into fast nodes.

    Classification is greedy: a recognized node becomes a leaf of the pruned
    tree, anything else recurses into its k children. Surviving single-bit
    leaves are emitted as Rate0/Rate1.
    """
    limits = limits or NodeLimits()
    kv = spec.kernels

    def make(depth, offset, span):
        if span == 1:
            cls = NodeClass.RATE0 if spec.frozen[offset] else NodeClass.RATE1
            return ScheduleNode(cls, depth, offset, span, kv_sub=())
        kv_sub = kv[depth:]
        cls = classify_node(spec.frozen[offset : offset + span], kv_sub, limits)
        if cls is not NodeClass.GENERIC:
            pattern = rep_pattern(kv_sub) if cls in REP_CLASSES else None
            return ScheduleNode(cls, depth, offset, span, kv_sub, pattern)
        k = kv[depth]
        q = span // k
        children = tuple(make(depth + 1, offset + j * q, q) for j in range(k))
        return ScheduleNode(cls, depth, offset, span, kv_sub, None, children)

    root = make(0, 0, spec.n_bits)
    return PrunedSchedule(root=root, kernels=kv, n_bits=spec.n_bits, frozen=spec.frozen.copy())


def decode_rate0(alpha):
    """Rate-0: everything is known to be zero; only the shape of alpha is used."""
    shape = np.shape(alpha)
    return np.zeros(shape, dtype=np.uint8), np.zeros(shape, dtype=np.uint8)


def decode_rate1(alpha, kv_sub):
    """Rate-1: beta = hard decisions, sourceword recovered via inverse combines."""
    alpha = np.asarray(alpha, dtype=float)
    beta = (alpha <= 0).astype(np.uint8)
    return beta, stage_transform(beta, kv_sub, inverse=True)


def rate1_uhat_matrix(beta, kv_sub):
    """Rate-1 sourceword by the dense route beta . G_p^-1 (oracle for decode_rate1)."""
    from .kernels import gf2_vecmat, inverse_generator

    return gf2_vecmat(beta, inverse_generator(kv_sub)).astype(np.uint8)


def decode_spc(alpha, kv_sub):
    """Single parity check: hard decisions, then flip the least reliable bit
    if the overall parity is odd. Maximum likelihood for this subcode."""
    alpha = np.asarray(alpha, dtype=float)
    span = alpha.shape[-1]
    flat = alpha.reshape(-1, span)
    beta = (flat <= 0).astype(np.uint8)
    parity = np.bitwise_xor.reduce(beta, axis=-1)
    least = np.argmin(np.abs(flat), axis=-1)
    beta[np.arange(len(beta)), least] ^= parity
    beta = beta.reshape(alpha.shape)
    return beta, stage_transform(beta, kv_sub, inverse=True)


def _rep3b_mask(span):
    mask = np.ones(span, dtype=np.uint8)
    mask[: span // 3] = 0
    return mask


def _rep3c_mask(span):
    return (np.arange(span) % 3 != 0).astype(np.uint8)


def decode_rep(alpha, node_class, pattern):
    """Repetition decode: hard decision on the pattern-masked LLR sum.

    REP2 sums everything, REP3B skips the first third, REP3C skips every
    third index; those shortcuts apply exactly when the pattern has the
    matching single-ternary shape, otherwise the mask itself is used (REP3A
    and the general path).
    """
    alpha = np.asarray(alpha, dtype=float)
    pattern = np.asarray(pattern, dtype=np.uint8)
    span = alpha.shape[-1]
    if node_class is NodeClass.REP2:
        total = alpha.sum(axis=-1)
    elif node_class is NodeClass.REP3B and np.array_equal(pattern, _rep3b_mask(span)):
        total = alpha[..., span // 3 :].sum(axis=-1)
    elif node_class is NodeClass.REP3C and np.array_equal(pattern, _rep3c_mask(span)):
        total = alpha[..., np.arange(span) % 3 != 0].sum(axis=-1)
    else:
        total = alpha @ pattern.astype(float)
    bit = (np.asarray(total) <= 0).astype(np.uint8)
    beta = bit[..., np.newaxis] * pattern
    u_hat = np.zeros(alpha.shape, dtype=np.uint8)
    u_hat[..., -1] = bit
    return beta, u_hat


class FastSSCDecoder:
    """Schedule-driven decoder; traversal matches SCDecoder except at fast leaves.

    Schedules are immutable and may be shared; the decoder owns its scratch
    buffers, so use one instance per worker.
    """

    def __init__(self, spec, limits=None, schedule=None):
        self.spec = spec
        self.limits = limits or NodeLimits()
        self.schedule = schedule if schedule is not None else build_schedule(spec, self.limits)
        if self.schedule.kernels != spec.kernels or not np.array_equal(
            self.schedule.frozen, spec.frozen
        ):
            raise ValueError("schedule was built for a different code")
        self.kv = spec.kernels
        spans = [spec.n_bits]
        for k in self.kv:
            spans.append(spans[-1] // k)
        self.spans = spans
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
        self._run(self.schedule.root)
        return self._u.copy(), self._beta[0].copy()

    def _run(self, node):
        depth, span = node.depth, node.span
        if node.node_class is not NodeClass.GENERIC:
            self._decode_leaf(node)
            return
        k = self.kv[depth]
        q = span // k
        alpha = self._llr[depth]
        child = self._llr[depth + 1]
        beta = self._beta[depth]
        if k == 2:
            l0, l1 = alpha[:, :q], alpha[:, q:span]
            child[:] = f_op(l0, l1)
            self._run(node.children[0])
            beta[:, :q] = self._beta[depth + 1]
            child[:] = g_op(l0, l1, beta[:, :q])
            self._run(node.children[1])
            b1 = self._beta[depth + 1]
            beta[:, :q] ^= b1
            beta[:, q:span] = b1
        else:
            l0, l1, l2 = alpha[:, :q], alpha[:, q : 2 * q], alpha[:, 2 * q : span]
            child[:] = lambda0(l0, l1, l2)
            self._run(node.children[0])
            beta[:, :q] = self._beta[depth + 1]
            child[:] = lambda1(l0, l1, l2, beta[:, :q])
            self._run(node.children[1])
            beta[:, q : 2 * q] = self._beta[depth + 1]
            child[:] = lambda2(l1, l2, beta[:, :q], beta[:, q : 2 * q])
            self._run(node.children[2])
            s0 = beta[:, :q].copy()
            s1 = beta[:, q : 2 * q].copy()
            s2 = self._beta[depth + 1]
            beta[:, :q] = s0 ^ s1
            beta[:, q : 2 * q] = s0 ^ s2
            beta[:, 2 * q : span] = s0 ^ s1 ^ s2

    def _decode_leaf(self, node):
        depth, offset, span = node.depth, node.offset, node.span
        beta = self._beta[depth]
        cls = node.node_class
        if cls is NodeClass.RATE0:
            beta[:] = 0
            self._u[:, offset : offset + span] = 0
            return
        alpha = self._llr[depth]
        if cls is NodeClass.RATE1:
            if span == 1:
                bits = (alpha[:, 0] <= 0).astype(np.uint8)
                beta[:, 0] = bits
                self._u[:, offset] = bits
                return
            b, u = decode_rate1(alpha, node.kv_sub)
        elif cls is NodeClass.SPC:
            b, u = decode_spc(alpha, node.kv_sub)
        else:
            b, u = decode_rep(alpha, cls, node.pattern)
        beta[:] = b
        self._u[:, offset : offset + span] = u


def decode_fast(spec, sched, llr):
    """One-shot Fast-SSC decode with a prebuilt schedule; returns (u_hat, x_hat)."""
    return FastSSCDecoder(spec, schedule=sched).decode(llr)
