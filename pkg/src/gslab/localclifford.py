"""The 24-element single-qubit Clifford group as signed axis permutations.

Each element is identified by how it conjugates the Pauli axes:
C sigma_i C^dag = s_i sigma_{pi(i)} for i in (x, y, z).  That action is stored
as a pair of tuples (images, signs) and indexed 0..23; multiplication, inverses
and a representative 2x2 unitary for every element are tabulated at import.
"""

from __future__ import annotations

import cmath
from typing import Dict, List, Tuple

import numpy as np

_AXES = "xyz"

# Conjugation action: (images, signs) with images[i] = pi(i) in {0,1,2} for the
# image axis of sigma_i and signs[i] in {+1,-1}.
Action = Tuple[Tuple[int, int, int], Tuple[int, int, int]]

_I2 = np.eye(2, dtype=complex)
_SX = np.array([[0, 1], [1, 0]], dtype=complex)
_SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
_SZ = np.array([[1, 0], [0, -1]], dtype=complex)
_PAULIS = (_SX, _SY, _SZ)
_H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
_S = np.array([[1, 0], [0, 1j]], dtype=complex)


def _normalize_phase(u: np.ndarray) -> np.ndarray:
    flat = u.flatten()
    k = int(np.argmax(np.abs(flat) > 1e-9))
    return np.round(u / (flat[k] / abs(flat[k])), 12) + 0.0


def _action_of(u: np.ndarray) -> Action:
    images: List[int] = []
    signs: List[int] = []
    for p in _PAULIS:
        q = u @ p @ u.conj().T
        for j, target in enumerate(_PAULIS):
            if np.allclose(q, target, atol=1e-9):
                images.append(j)
                signs.append(1)
                break
            if np.allclose(q, -target, atol=1e-9):
                images.append(j)
                signs.append(-1)
                break
        else:
            raise ValueError("not a Clifford unitary")
    return tuple(images), tuple(signs)  # type: ignore[return-value]


def _generate() -> Tuple[List[Action], List[np.ndarray]]:
    found: Dict[Action, np.ndarray] = {}
    frontier = [_I2]
    while frontier:
        nxt = []
        for u in frontier:
            act = _action_of(u)
            if act in found:
                continue
            found[act] = _normalize_phase(u)
            nxt += [u @ _H, u @ _S]
        frontier = nxt
    assert len(found) == 24
    actions = sorted(found.keys())
    return actions, [found[a] for a in actions]


_ACTIONS, _UNITARIES = _generate()
_INDEX: Dict[Action, int] = {a: i for i, a in enumerate(_ACTIONS)}


def _compose(a: Action, b: Action) -> Action:
    """Action of U_a U_b (first apply b's conjugation, then a's)."""
    im_a, sg_a = a
    im_b, sg_b = b
    images = tuple(im_a[im_b[i]] for i in range(3))
    signs = tuple(sg_b[i] * sg_a[im_b[i]] for i in range(3))
    return images, signs  # type: ignore[return-value]


def _invert(a: Action) -> Action:
    im, sg = a
    images = [0, 0, 0]
    signs = [0, 0, 0]
    for i in range(3):
        images[im[i]] = i
        signs[im[i]] = sg[i]
    return tuple(images), tuple(signs)  # type: ignore[return-value]


MUL = tuple(
    tuple(_INDEX[_compose(_ACTIONS[i], _ACTIONS[j])] for j in range(24))
    for i in range(24)
)
INV = tuple(_INDEX[_invert(_ACTIONS[i])] for i in range(24))


class LocalClifford:
    """One of the 24 single-qubit Clifford unitaries (global phase dropped)."""

    __slots__ = ("index",)

    _pool: List["LocalClifford"] = []

    def __new__(cls, index: int) -> "LocalClifford":
        return cls._pool[index]

    @classmethod
    def _build_pool(cls) -> None:
        for i in range(24):
            obj = object.__new__(cls)
            obj.index = i
            cls._pool.append(obj)

    def __mul__(self, other: "LocalClifford") -> "LocalClifford":
        """Composition self∘other (apply other first)."""
        return LocalClifford(MUL[self.index][other.index])

    @property
    def inverse(self) -> "LocalClifford":
        return LocalClifford(INV[self.index])

    @property
    def action(self) -> Action:
        return _ACTIONS[self.index]

    @property
    def unitary(self) -> np.ndarray:
        return _UNITARIES[self.index]

    def image(self, axis: int) -> Tuple[int, int]:
        """(image axis, sign) of sigma_axis under C sigma C^dag."""
        im, sg = _ACTIONS[self.index]
        return im[axis], sg[axis]

    def conj_axis(self, axis: int) -> Tuple[int, int]:
        """(axis', sign) with C^dag sigma_axis C = sign * sigma_axis'."""
        im, sg = _ACTIONS[INV[self.index]]
        return im[axis], sg[axis]

    @property
    def name(self) -> str:
        return _NAMES.get(self.index, f"C{self.index}")

    def __repr__(self) -> str:
        im, sg = self.action
        parts = ", ".join(
            f"{_AXES[i]}->{'-' if sg[i] < 0 else ''}{_AXES[im[i]]}" for i in range(3)
        )
        return f"LocalClifford({self.name}: {parts})"

    def __hash__(self) -> int:
        return self.index

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LocalClifford) and other.index == self.index


LocalClifford._build_pool()


def from_unitary(u: np.ndarray) -> LocalClifford:
    return LocalClifford(_INDEX[_action_of(u)])


def _rot(axis: int, sign: int) -> np.ndarray:
    """sqrt(sign * i * sigma_axis) = exp(sign * i * pi/4 * sigma_axis)."""
    return np.cos(np.pi / 4) * _I2 + sign * 1j * np.sin(np.pi / 4) * _PAULIS[axis]


IDENTITY = from_unitary(_I2)
X = from_unitary(_SX)
Y = from_unitary(_SY)
Z = from_unitary(_SZ)
H = from_unitary(_H)
S = from_unitary(_S)
SDG = from_unitary(_S.conj().T)
SQX = from_unitary(_rot(0, +1))   # sqrt(+i sigma_x)
SQXD = from_unitary(_rot(0, -1))  # sqrt(-i sigma_x)
SQY = from_unitary(_rot(1, +1))
SQYD = from_unitary(_rot(1, -1))
SQZ = from_unitary(_rot(2, +1))
SQZD = from_unitary(_rot(2, -1))

_NAMES: Dict[int, str] = {}
for _nm, _el in [
    ("I", IDENTITY), ("X", X), ("Y", Y), ("Z", Z), ("H", H), ("S", S),
    ("SD", SDG), ("SQX", SQX), ("SQXD", SQXD), ("SQY", SQY), ("SQYD", SQYD),
    ("SQZ", SQZ), ("SQZD", SQZD),
]:
    _NAMES.setdefault(_el.index, _nm)

BY_NAME: Dict[str, LocalClifford] = {
    "I": IDENTITY, "X": X, "Y": Y, "Z": Z, "H": H, "S": S, "SD": SDG,
    "SQX": SQX, "SQXD": SQXD, "SQY": SQY, "SQYD": SQYD, "SQZ": SQZ, "SQZD": SQZD,
}

# Elements acting trivially on sigma_z (diagonal unitaries): commute with CZ.
ZROT = frozenset(
    i for i in range(24) if _ACTIONS[i][0][2] == 2 and _ACTIONS[i][1][2] == 1
)

ALL: Tuple[LocalClifford, ...] = tuple(LocalClifford(i) for i in range(24))


def _reduction_words() -> Tuple[str, ...]:
    """Shortest word over moves 'X' (right-multiply by sqrt(i sx)) and 'Z'
    (right-multiply by sqrt(-i sz)) taking each element into ZROT."""
    words: Dict[int, str] = {i: "" for i in ZROT}
    frontier = list(ZROT)
    while len(words) < 24:
        nxt = []
        for tgt in frontier:
            # c is reduced by move m if c*move == tgt, i.e. c = tgt*move^-1
            for move, el in (("X", SQX), ("Z", SQZD)):
                c = MUL[tgt][el.inverse.index]
                if c not in words:
                    words[c] = move + words[tgt]
                    nxt.append(c)
        frontier = nxt
    out = tuple(words[i] for i in range(24))
    assert max(len(w) for w in out) <= 5
    return out


REDUCTION_WORD = _reduction_words()

__all__ = [
    "LocalClifford", "MUL", "INV", "ALL", "BY_NAME", "ZROT", "REDUCTION_WORD",
    "IDENTITY", "X", "Y", "Z", "H", "S", "SDG",
    "SQX", "SQXD", "SQY", "SQYD", "SQZ", "SQZD", "from_unitary",
]
