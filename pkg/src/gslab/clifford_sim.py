"""Graph-rewriting stabilizer-circuit simulator.

A register is a graph plus one of the 24 local Cliffords per vertex (the
state is (tensor_a C_a)|G> up to global phase).  Single-qubit gates compose
frames, CZ rewrites the graph after reducing the operand frames by local
complementations, and Pauli measurements apply the graph measurement rules
with byproduct operators folded back into the frames.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from . import dense
from . import localclifford as lc
from .graphs import Graph

_AXIS = {"X": 0, "Y": 1, "Z": 2}
_AXIS_NAME = "XYZ"

# Frame element preparing |axis, sign> from |+>, keyed by (axis, sign).
_PREP = {
    (0, +1): lc.IDENTITY,
    (0, -1): lc.Z,
    (1, +1): lc.S,
    (1, -1): lc.SDG,
    (2, +1): lc.H,
    (2, -1): lc.X * lc.H,
}
# ZROT element with the same action on |+>, keyed by the (axis, sign) of the
# stabilizer C X C^dag of an equatorial single-qubit state.
_EQUATORIAL_SNAP = {(0, +1): lc.IDENTITY, (0, -1): lc.Z, (1, +1): lc.S, (1, -1): lc.SDG}


@dataclass
class MeasurementRecord:
    vertex: int
    basis: str
    outcome: int
    probability: float


class Register:
    """Mutable simulator state: graph, per-vertex frame, seeded RNG."""

    def __init__(self, n: int, initial: str = "plus", seed: int = 0):
        if n < 0:
            raise ValueError("negative register size")
        self.n = n
        self.adj: List[int] = [0] * n
        if initial == "plus":
            self.vops: List[int] = [lc.IDENTITY.index] * n
        elif initial == "zero":
            self.vops = [lc.H.index] * n
        else:
            raise ValueError(f"unknown initial state {initial!r}")
        self.rng = random.Random(seed)
        self.seed = seed
        self.toggle_ops = 0  # graph-edit work counter (complexity regression)

    # -- helpers -----------------------------------------------------------

    def copy(self) -> "Register":
        r = Register(self.n, "plus", self.seed)
        r.adj = list(self.adj)
        r.vops = list(self.vops)
        r.rng.setstate(self.rng.getstate())
        return r

    def graph(self) -> Graph:
        return Graph(self.n, self.adj)

    def frame(self) -> List[lc.LocalClifford]:
        return [lc.LocalClifford(i) for i in self.vops]

    def _check_vertex(self, a: int) -> None:
        if not 0 <= a < self.n:
            raise IndexError(f"vertex {a} out of range")

    def _neighbors(self, a: int) -> List[int]:
        out = []
        m = self.adj[a]
        while m:
            low = m & -m
            out.append(low.bit_length() - 1)
            m ^= low
        return out

    def _toggle(self, a: int, b: int) -> None:
        self.adj[a] ^= 1 << b
        self.adj[b] ^= 1 << a
        self.toggle_ops += 1

    def _local_complement(self, a: int) -> None:
        """Graph tau_a with the exact frame updates keeping the state fixed."""
        na = self.adj[a]
        nbrs = self._neighbors(a)
        for i, v in enumerate(nbrs):
            self.adj[v] ^= na & ~(1 << v)
        self.toggle_ops += len(nbrs) * len(nbrs)
        self.vops[a] = lc.MUL[self.vops[a]][lc.SQX.index]
        for v in nbrs:
            self.vops[v] = lc.MUL[self.vops[v]][lc.SQZD.index]

    def _reduce_vop(self, a: int, avoid: Optional[int]) -> None:
        """Drive vop[a] into the diagonal subgroup by local complementations
        at a (X moves) and at a fixed swapping neighbor (Z moves)."""
        partners = self.adj[a] & ~(1 << avoid) if avoid is not None else self.adj[a]
        partner = (partners & -partners).bit_length() - 1 if partners else None
        word = lc.REDUCTION_WORD[self.vops[a]]
        for move in word:
            if move == "X":
                self._local_complement(a)
            else:
                if partner is None:
                    raise AssertionError("Z move without a swapping neighbor")
                self._local_complement(partner)
        assert self.vops[a] in lc.ZROT

    # -- operations ---------------------------------------------------------

    def apply_local_gate(self, a: int, u: lc.LocalClifford) -> None:
        self._check_vertex(a)
        self.vops[a] = lc.MUL[u.index][self.vops[a]]

    def apply_cz(self, a: int, b: int) -> None:
        self._check_vertex(a)
        self._check_vertex(b)
        if a == b:
            raise ValueError("CZ needs two distinct vertices")
        bit_a, bit_b = 1 << a, 1 << b
        # Reduce each operand frame using swapping partners outside the pair.
        # A reduced operand only ever receives diagonal right-factors from the
        # other one's reduction, so at most three passes are needed.
        for _ in range(6):
            if self.vops[a] not in lc.ZROT and self.adj[a] & ~bit_b:
                self._reduce_vop(a, avoid=b)
                continue
            if self.vops[b] not in lc.ZROT and self.adj[b] & ~bit_a:
                self._reduce_vop(b, avoid=a)
                continue
            break
        za = self.vops[a] in lc.ZROT
        zb = self.vops[b] in lc.ZROT
        if za and zb:
            self._toggle(a, b)
            return
        if not za and not zb:
            # Both stuck: the pair is disconnected from the rest.
            self._apply_cz_table(a, b)
            return
        u, v = (a, b) if not za else (b, a)
        if self.adj[u] == 0:
            # Isolated single qubit in a stabilizer state C|+>.
            axis, sign = lc.LocalClifford(self.vops[u]).image(0)
            if axis == 2:
                if sign < 0:  # |1>: CZ acts as Z on the other operand
                    self.vops[v] = lc.MUL[lc.Z.index][self.vops[v]]
                return
            self.vops[u] = _EQUATORIAL_SNAP[(axis, sign)].index
            self._toggle(a, b)
            return
        self._resolve_pendant(center=v, pendant=u)

    def _apply_cz_table(self, a: int, b: int) -> None:
        if self.adj[a] & ~(1 << b) or self.adj[b] & ~(1 << a):
            raise AssertionError("CZ table applies only to an isolated pair")
        edge = 1 if self.adj[a] & (1 << b) else 0
        ca, cb, edge2 = _cz_table()[(self.vops[a], self.vops[b], edge)]
        self.vops[a] = ca
        self.vops[b] = cb
        if edge2 != edge:
            self._toggle(a, b)

    def _resolve_pendant(self, center: int, pendant: int) -> None:
        """CZ between a diagonal-frame center and a pendant vertex whose only
        neighbor is the center: resolve the pendant frame through the edge.

        With |G> = CZ (|+>_p (x) |G0>), the operator CZ C_p CZ acts per center
        branch w as Z^w C Z^w on the pendant; both branch states are
        single-qubit stabilizer states, either parallel (edge vanishes) or
        orthogonal (edge stays), which fixes new frames exactly.
        """
        if self.adj[pendant] != (1 << center) or self.vops[center] not in lc.ZROT:
            raise AssertionError("pendant resolution precondition violated")
        eprime, v_pend, v_center = _pendant_rule()[self.vops[pendant]]
        self.vops[pendant] = v_pend
        self.vops[center] = lc.MUL[self.vops[center]][v_center]
        if eprime == 0:
            self._toggle(center, pendant)

    def measure_pauli(
        self, a: int, basis: str, forced: Optional[int] = None
    ) -> MeasurementRecord:
        self._check_vertex(a)
        if basis not in _AXIS:
            raise ValueError(f"bad basis {basis!r}")
        if forced not in (None, 1, -1):
            raise ValueError("forced outcome must be +1 or -1")
        c = lc.LocalClifford(self.vops[a])
        eff_axis, eff_sign = c.conj_axis(_AXIS[basis])

        if eff_axis == 0 and self.adj[a] == 0:
            # X measurement of an isolated |+>: deterministic.
            outcome = eff_sign
            if forced is not None and forced != outcome:
                raise ValueError("forced outcome has probability 0")
            return MeasurementRecord(a, basis, outcome, 1.0)

        outcome = forced if forced is not None else (1 if self.rng.random() < 0.5 else -1)
        eps = outcome * eff_sign  # effective graph-side outcome
        na = self.adj[a]

        if eff_axis == 2:  # Z rule: remove the vertex
            if eps < 0:
                self._right_mul_mask(na, lc.Z)
            self._isolate(a)
        elif eff_axis == 1:  # Y rule: complement then remove
            self._right_mul_mask(na, lc.SQZD if eps > 0 else lc.SQZ)
            self._graph_local_complement_only(a)
            self._isolate(a)
        else:  # X rule with special neighbor b0
            b0 = (na & -na).bit_length() - 1
            nb0 = self.adj[b0]
            if eps > 0:
                self._right_mul_one(b0, lc.SQY)
                self._right_mul_mask(na & ~nb0 & ~(1 << b0), lc.Z)
            else:
                self._right_mul_one(b0, lc.SQYD)
                self._right_mul_mask(nb0 & ~na & ~(1 << a), lc.Z)
            self._graph_local_complement_only(b0)
            self._graph_local_complement_only(a)
            self._isolate(a)
            self._graph_local_complement_only(b0)

        self.vops[a] = lc.MUL[self.vops[a]][_PREP[(eff_axis, eps)].index]
        return MeasurementRecord(a, basis, outcome, 0.5)

    def _graph_local_complement_only(self, a: int) -> None:
        """tau_a on the stored graph without frame updates (measurement rules
        already carry their byproducts explicitly)."""
        na = self.adj[a]
        nbrs = self._neighbors(a)
        for v in nbrs:
            self.adj[v] ^= na & ~(1 << v)
        self.toggle_ops += len(nbrs) * len(nbrs)

    def _isolate(self, a: int) -> None:
        for v in self._neighbors(a):
            self.adj[v] &= ~(1 << a)
        self.adj[a] = 0

    def _right_mul_mask(self, mask: int, u: lc.LocalClifford) -> None:
        m = mask
        while m:
            low = m & -m
            v = low.bit_length() - 1
            self.vops[v] = lc.MUL[self.vops[v]][u.index]
            m ^= low

    def _right_mul_one(self, v: int, u: lc.LocalClifford) -> None:
        self.vops[v] = lc.MUL[self.vops[v]][u.index]

    # -- oracle bridge -------------------------------------------------------

    def dense_state(self) -> np.ndarray:
        """(tensor_a C_a)|G> for oracle comparisons (small n only)."""
        psi = dense.graph_state_vector(self.graph())
        return dense.apply_frame(psi, self.frame())


_PENDANT_RULE = None


def _pendant_rule():
    """For each pendant frame C: (edge', new pendant frame, diagonal factor
    for the center frame) realizing CZ (1 (x) C) CZ = (D (x) C') CZ^{edge'}
    on vectors |._center> (x) |+>_pendant."""
    global _PENDANT_RULE
    if _PENDANT_RULE is not None:
        return _PENDANT_RULE
    plus = np.array([1, 1], dtype=complex) / np.sqrt(2)
    minus = np.array([1, -1], dtype=complex) / np.sqrt(2)
    zmat = np.array([[1, 0], [0, -1]], dtype=complex)
    diag_factor = {1: lc.IDENTITY, 1j: lc.S, -1: lc.Z, -1j: lc.SDG}
    rule = {}
    for ic in range(24):
        c = lc.LocalClifford(ic).unitary
        phi0 = c @ plus
        phi1 = zmat @ c @ zmat @ plus
        eprime = 0 if abs(np.vdot(phi0, phi1)) > 0.5 else 1
        found = None
        for iv in range(24):
            v = lc.LocalClifford(iv).unitary
            psi0 = v @ plus
            psi1 = v @ (minus if eprime else plus)
            l0 = np.vdot(psi0, phi0)
            l1 = np.vdot(psi1, phi1)
            if abs(abs(l0) - 1) > 1e-9 or abs(abs(l1) - 1) > 1e-9:
                continue
            ratio = l1 / l0
            key = min((1, 1j, -1, -1j), key=lambda w: abs(w - ratio))
            if abs(key - ratio) > 1e-9:
                continue
            found = (eprime, iv, diag_factor[key].index)
            break
        if found is None:
            raise AssertionError("pendant rule search failed")
        rule[ic] = found
    _PENDANT_RULE = rule
    return rule


_CZ_TABLE = None


def _cz_table():
    """24 x 24 x 2 lookup: CZ acting on an isolated pair (C_a (x) C_b)|g>."""
    global _CZ_TABLE
    if _CZ_TABLE is not None:
        return _CZ_TABLE

    def key(state: np.ndarray) -> tuple:
        flat = state.copy()
        k = int(np.argmax(np.abs(flat) > 1e-8))
        flat = flat / flat[k]
        return tuple(np.round(flat, 6).tolist())

    states = {}
    reps = {}
    for ia in range(24):
        ua = lc.LocalClifford(ia).unitary
        for ib in range(24):
            ub = lc.LocalClifford(ib).unitary
            for edge in (0, 1):
                psi = np.full(4, 0.5, dtype=complex)
                if edge:
                    psi[3] *= -1
                psi = dense.apply_1q(psi, 0, ua)
                psi = dense.apply_1q(psi, 1, ub)
                k = key(psi)
                states[(ia, ib, edge)] = psi
                if k not in reps:
                    reps[k] = (ia, ib, edge)
    table = {}
    for (ia, ib, edge), psi in states.items():
        out = dense.apply_cz(psi, 0, 1)
        table[(ia, ib, edge)] = reps[key(out)]
    _CZ_TABLE = table
    return table


# -- circuits -----------------------------------------------------------------

_GATES_1Q = {
    "I": lc.IDENTITY, "X": lc.X, "Y": lc.Y, "Z": lc.Z, "H": lc.H, "S": lc.S,
    "SD": lc.SDG, "SQX": lc.SQX, "SQXD": lc.SQXD, "SQY": lc.SQY,
    "SQYD": lc.SQYD, "SQZ": lc.SQZ, "SQZD": lc.SQZD,
}


@dataclass
class Instruction:
    op: str
    targets: Tuple[int, ...]
    forced: Optional[int] = None
    line: int = 0


def parse_circuit(text: str) -> List[Instruction]:
    """One instruction per line; 1-based vertex indices; '#' comments.

    Gates: the 13 named single-qubit Cliffords, CZ a b, CNOT a b, and
    measurements MX/MY/MZ a with an optional '= +1' / '= -1' to force.
    """
    prog: List[Instruction] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        forced = None
        if "=" in line:
            head, _, tail = line.partition("=")
            tail = tail.strip()
            if tail not in ("+1", "-1", "1"):
                raise ValueError(f"line {lineno}: bad forced outcome {tail!r}")
            forced = 1 if tail in ("+1", "1") else -1
            line = head.strip()
        parts = line.split()
        op = parts[0].upper()
        try:
            targets = tuple(int(p) - 1 for p in parts[1:])
        except ValueError:
            raise ValueError(f"line {lineno}: bad vertex index") from None
        if any(t < 0 for t in targets):
            raise ValueError(f"line {lineno}: vertex indices are 1-based")
        if op in _GATES_1Q or op in ("MX", "MY", "MZ"):
            if len(targets) != 1:
                raise ValueError(f"line {lineno}: {op} takes one vertex")
        elif op in ("CZ", "CNOT"):
            if len(targets) != 2 or targets[0] == targets[1]:
                raise ValueError(f"line {lineno}: {op} takes two distinct vertices")
        else:
            raise ValueError(f"line {lineno}: unknown instruction {op!r}")
        if forced is not None and op not in ("MX", "MY", "MZ"):
            raise ValueError(f"line {lineno}: only measurements can be forced")
        prog.append(Instruction(op, targets, forced, lineno))
    return prog


def run_circuit(
    reg: Register, circuit: Iterable[Instruction]
) -> List[MeasurementRecord]:
    records: List[MeasurementRecord] = []
    for ins in circuit:
        try:
            if ins.op in _GATES_1Q:
                reg.apply_local_gate(ins.targets[0], _GATES_1Q[ins.op])
            elif ins.op == "CZ":
                reg.apply_cz(*ins.targets)
            elif ins.op == "CNOT":
                ctl, tgt = ins.targets
                reg.apply_local_gate(tgt, lc.H)
                reg.apply_cz(ctl, tgt)
                reg.apply_local_gate(tgt, lc.H)
            else:
                records.append(
                    reg.measure_pauli(ins.targets[0], ins.op[1], ins.forced)
                )
        except (IndexError, ValueError) as exc:
            raise ValueError(f"line {ins.line}: {exc}") from None
    return records


def new_register(n: int, initial: str = "plus", seed: int = 0) -> Register:
    return Register(n, initial, seed)


__all__ = [
    "Register",
    "MeasurementRecord",
    "Instruction",
    "new_register",
    "parse_circuit",
    "run_circuit",
]
