"""
Fermionic operators as sums of per-mode labelled products.

A label is a string with one character per mode, read as the ordered
product over modes 1..n of the single-mode operators

    I  identity
    +  creation c^dagger
    -  annihilation c
    N  number c^dagger c
    E  hole c c^dagger = 1 - N
"""
from itertools import product
from numbers import Number
from typing import Dict, Mapping

from utils.errors import UsageError

MODE_LABELS = "I+-NE"
ODD_LABELS = "+-"

# (left, right) -> right-most operator of left * right on one mode, None when it vanishes
_MODE_PRODUCT = {
    ("+", "+"): None, ("+", "-"): "N", ("+", "N"): None, ("+", "E"): "+",
    ("-", "+"): "E", ("-", "-"): None, ("-", "N"): "-", ("-", "E"): None,
    ("N", "+"): "+", ("N", "-"): None, ("N", "N"): "N", ("N", "E"): None,
    ("E", "+"): None, ("E", "-"): "-", ("E", "N"): None, ("E", "E"): "E",
}
for _label in MODE_LABELS:
    _MODE_PRODUCT[("I", _label)] = _label
    _MODE_PRODUCT[(_label, "I")] = _label

_DAGGER = {"I": "I", "+": "-", "-": "+", "N": "N", "E": "E"}
_ZERO_TOLERANCE = 1e-14


def _multiply_labels(left: str, right: str):
    """Product of two labelled monomials as (sign, label) or None when it vanishes."""
    sign = 1
    merged = []
    for i, (a, b) in enumerate(zip(left, right)):
        if b in ODD_LABELS:
            # move the right operator past the odd left operators on later modes
            if sum(1 for c in left[i + 1:] if c in ODD_LABELS) % 2:
                sign = -sign
        combined = _MODE_PRODUCT[(a, b)]
        if combined is None:
            return None
        merged.append(combined)
    return sign, "".join(merged)


class FermionExpression:
    """Linear combination of labelled fermionic monomials on ``n_modes`` modes."""

    __slots__ = ("_n_modes", "_terms")

    def __init__(self, n_modes: int, terms: Mapping[str, complex] = None):
        if n_modes <= 0:
            raise UsageError("Number of modes must be positive, got {}".format(n_modes))
        merged: Dict[str, complex] = {}
        for label, coefficient in (terms or {}).items():
            if len(label) != n_modes or set(label) - set(MODE_LABELS):
                raise UsageError("Invalid label {!r} for {} modes".format(label, n_modes))
            merged[label] = merged.get(label, 0j) + complex(coefficient)
        self._n_modes = n_modes
        self._terms = {k: merged[k] for k in sorted(merged) if abs(merged[k]) > _ZERO_TOLERANCE}

    @classmethod
    def single(cls, n_modes, mode, label, coefficient=1.0):
        """One operator on a one-based mode."""
        if not 1 <= mode <= n_modes:
            raise UsageError("Mode {} outside [1, {}]".format(mode, n_modes))
        chars = ["I"] * n_modes
        chars[mode - 1] = label
        return cls(n_modes, {"".join(chars): coefficient})

    @classmethod
    def creation(cls, n_modes, mode):
        return cls.single(n_modes, mode, "+")

    @classmethod
    def annihilation(cls, n_modes, mode):
        return cls.single(n_modes, mode, "-")

    @classmethod
    def number(cls, n_modes, mode):
        return cls.single(n_modes, mode, "N")

    @classmethod
    def identity(cls, n_modes, coefficient=1.0):
        return cls(n_modes, {"I" * n_modes: coefficient})

    @property
    def n_modes(self):
        return self._n_modes

    @property
    def terms(self) -> Dict[str, complex]:
        return dict(self._terms)

    def __len__(self):
        return len(self._terms)

    def is_zero(self, atol=_ZERO_TOLERANCE):
        return all(abs(c) <= atol for c in self._terms.values())

    # ----- algebra -----
    def _coerce(self, other):
        if isinstance(other, FermionExpression):
            if other.n_modes != self.n_modes:
                raise UsageError("Mode counts differ: {} vs {}".format(self.n_modes, other.n_modes))
            return other
        if isinstance(other, Number):
            return FermionExpression.identity(self.n_modes, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        merged = dict(self._terms)
        for k, v in other._terms.items():
            merged[k] = merged.get(k, 0j) + v
        return FermionExpression(self.n_modes, merged)

    __radd__ = __add__

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Number):
            return FermionExpression(self.n_modes, {k: v * other for k, v in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        merged: Dict[str, complex] = {}
        for left, a in self._terms.items():
            for right, b in other._terms.items():
                result = _multiply_labels(left, right)
                if result is None:
                    continue
                sign, label = result
                merged[label] = merged.get(label, 0j) + sign * a * b
        return FermionExpression(self.n_modes, merged)

    def __rmul__(self, other):
        if isinstance(other, Number):
            return self * other
        return NotImplemented

    def adjoint(self) -> "FermionExpression":
        merged = {}
        for label, coefficient in self._terms.items():
            odd = sum(1 for c in label if c in ODD_LABELS)
            # reversing the order of k odd operators gives (-1)^(k(k-1)/2)
            sign = -1 if (odd * (odd - 1) // 2) % 2 else 1
            merged["".join(_DAGGER[c] for c in label)] = sign * coefficient.conjugate()
        return FermionExpression(self.n_modes, merged)

    def normal_ordered(self) -> "FermionExpression":
        """Rewrite every hole operator as 1 - N so labels only use I, +, - and N."""
        merged: Dict[str, complex] = {}
        for label, coefficient in self._terms.items():
            holes = [i for i, c in enumerate(label) if c == "E"]
            for choice in product("IN", repeat=len(holes)):
                chars = list(label)
                sign = 1
                for position, replacement in zip(holes, choice):
                    chars[position] = replacement
                    if replacement == "N":
                        sign = -sign
                key = "".join(chars)
                merged[key] = merged.get(key, 0j) + sign * coefficient
        return FermionExpression(self.n_modes, merged)

    def conserving_part(self) -> "FermionExpression":
        """Monomials with as many creation as annihilation operators."""
        return FermionExpression(self.n_modes, {k: v for k, v in self._terms.items()
                                                if k.count("+") == k.count("-")})

    def conserves_particle_number(self) -> bool:
        return all(k.count("+") == k.count("-") for k in self._terms)

    def equals(self, other, atol=1e-12) -> bool:
        difference = self.normal_ordered() - other.normal_ordered()
        return difference.is_zero(atol)

    def __eq__(self, other):
        if not isinstance(other, FermionExpression):
            return NotImplemented
        return self.n_modes == other.n_modes and self._terms == other._terms

    __hash__ = None

    @staticmethod
    def describe_label(label: str):
        """
        Normal-ordered operator string of a label and the sign picked up by reordering.
        :return: (sign, text) with creators first in ascending mode order
        """
        sequence = []
        for mode, c in enumerate(label, start=1):
            if c == "+":
                sequence.append(("+", mode))
            elif c == "-":
                sequence.append(("-", mode))
            elif c == "N":
                sequence.extend((("+", mode), ("-", mode)))
            elif c == "E":
                sequence.extend((("-", mode), ("+", mode)))
        inversions = 0
        annihilators_seen = 0
        for kind, _ in sequence:
            if kind == "-":
                annihilators_seen += 1
            else:
                inversions += annihilators_seen
        if "E" in label:
            # holes are not reordered, rendering keeps the labelled order
            text = " ".join(("c†{}" if k == "+" else "c{}").format(m) for k, m in sequence)
            return 1, text or "1"
        creators = ["c†{}".format(m) for k, m in sequence if k == "+"]
        annihilators = ["c{}".format(m) for k, m in sequence if k == "-"]
        return (-1 if inversions % 2 else 1), " ".join(creators + annihilators) or "1"

    def __repr__(self):
        if not self._terms:
            return "FermionExpression({}, 0)".format(self.n_modes)
        parts = []
        for label, coefficient in self._terms.items():
            sign, text = self.describe_label(label)
            parts.append("({:.6g}) {}".format(sign * coefficient, text))
        return "FermionExpression({}, {})".format(self.n_modes, " + ".join(parts))
