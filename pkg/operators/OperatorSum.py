from numbers import Number
from typing import Dict, Iterable, Mapping, Union

from utils.errors import UsageError
from .PauliTerm import PauliTerm, multiply

ZERO_TOLERANCE = 1e-14


class OperatorSum:
    """
    Canonical sum of Pauli terms on a fixed register.

    Identical factor strings are merged, coefficients with magnitude below
    ZERO_TOLERANCE are dropped and terms are kept in lexicographic order, so
    two equal operators have identical term lists. Instances are immutable.
    """

    __slots__ = ("_n_qubits", "_terms")

    def __init__(self, n_qubits: int, terms: Union[Mapping[str, complex], Iterable[PauliTerm]] = ()):
        if n_qubits <= 0:
            raise UsageError("Register size must be positive, got {}".format(n_qubits))
        merged: Dict[str, complex] = {}
        items = terms.items() if isinstance(terms, Mapping) else ((t.factors, t.coefficient) for t in terms)
        for factors, coefficient in items:
            if len(factors) != n_qubits:
                raise UsageError("Term {!r} does not fit a register of {} qubits".format(factors, n_qubits))
            merged[factors] = merged.get(factors, 0j) + complex(coefficient)
        self._n_qubits = n_qubits
        self._terms = {k: merged[k] for k in sorted(merged) if abs(merged[k]) > ZERO_TOLERANCE}

    # ----- construction helpers -----
    @classmethod
    def zero(cls, n_qubits):
        return cls(n_qubits)

    @classmethod
    def identity(cls, n_qubits, coefficient=1.0):
        return cls(n_qubits, {"I" * n_qubits: coefficient})

    @classmethod
    def from_term(cls, term: PauliTerm):
        return cls(term.n_qubits, [term])

    @classmethod
    def single(cls, n_qubits, qubit, label, coefficient=1.0):
        return cls.from_term(PauliTerm.from_sparse(n_qubits, {qubit: label}, coefficient))

    @classmethod
    def sigma_plus(cls, n_qubits, qubit):
        """(X + iY)/2, the map |1> -> |0>. |0> is the occupied state."""
        return cls(n_qubits, [PauliTerm.from_sparse(n_qubits, {qubit: "X"}, 0.5),
                              PauliTerm.from_sparse(n_qubits, {qubit: "Y"}, 0.5j)])

    @classmethod
    def sigma_minus(cls, n_qubits, qubit):
        return cls(n_qubits, [PauliTerm.from_sparse(n_qubits, {qubit: "X"}, 0.5),
                              PauliTerm.from_sparse(n_qubits, {qubit: "Y"}, -0.5j)])

    @classmethod
    def occupied(cls, n_qubits, qubit):
        """sigma+ sigma- = (I + Z)/2"""
        return cls.identity(n_qubits, 0.5) + cls.single(n_qubits, qubit, "Z", 0.5)

    @classmethod
    def empty(cls, n_qubits, qubit):
        """sigma- sigma+ = (I - Z)/2"""
        return cls.identity(n_qubits, 0.5) - cls.single(n_qubits, qubit, "Z", 0.5)

    @classmethod
    def hopping(cls, n_qubits, j, k):
        """sigma+_j sigma-_k + sigma-_j sigma+_k = (X_j X_k + Y_j Y_k)/2"""
        return cls(n_qubits, [PauliTerm.from_sparse(n_qubits, {j: "X", k: "X"}, 0.5),
                              PauliTerm.from_sparse(n_qubits, {j: "Y", k: "Y"}, 0.5)])

    # ----- accessors -----
    @property
    def n_qubits(self) -> int:
        return self._n_qubits

    @property
    def terms(self):
        return tuple(PauliTerm(k, v) for k, v in self._terms.items())

    def as_dict(self) -> Dict[str, complex]:
        return dict(self._terms)

    def coefficient(self, factors: str) -> complex:
        return self._terms.get(factors, 0j)

    @property
    def support(self):
        qubits = set()
        for factors in self._terms:
            qubits.update(q for q, label in enumerate(factors) if label != "I")
        return tuple(sorted(qubits))

    def is_zero(self, atol=ZERO_TOLERANCE) -> bool:
        return all(abs(c) <= atol for c in self._terms.values())

    def one_norm(self) -> float:
        """Sum of |coefficients|, an upper bound of the spectral norm."""
        return float(sum(abs(c) for c in self._terms.values()))

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self.terms)

    # ----- algebra -----
    def _coerce(self, other) -> "OperatorSum":
        if isinstance(other, OperatorSum):
            if other.n_qubits != self.n_qubits:
                raise UsageError("Register sizes differ: {} vs {}".format(self.n_qubits, other.n_qubits))
            return other
        if isinstance(other, PauliTerm):
            return self._coerce(OperatorSum.from_term(other))
        if isinstance(other, Number):
            return OperatorSum.identity(self.n_qubits, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        merged = dict(self._terms)
        for k, v in other._terms.items():
            merged[k] = merged.get(k, 0j) + v
        return OperatorSum(self.n_qubits, merged)

    __radd__ = __add__

    def __neg__(self):
        return OperatorSum(self.n_qubits, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Number):
            return OperatorSum(self.n_qubits, {k: v * other for k, v in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        products = []
        for left in self.terms:
            for right in other.terms:
                products.append(multiply(left, right))
        return OperatorSum(self.n_qubits, products)

    def __rmul__(self, other):
        if isinstance(other, Number):
            return self * other
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self

    def __truediv__(self, other):
        if not isinstance(other, Number):
            return NotImplemented
        return self * (1.0 / other)

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise UsageError("Negative powers are not supported")
        result = OperatorSum.identity(self.n_qubits)
        for _ in range(exponent):
            result = result * self
        return result

    def adjoint(self) -> "OperatorSum":
        # Pauli strings are Hermitian, so only the coefficients change
        return OperatorSum(self.n_qubits, {k: v.conjugate() for k, v in self._terms.items()})

    def commutator(self, other) -> "OperatorSum":
        other = self._coerce(other)
        return self * other - other * self

    def anticommutator(self, other) -> "OperatorSum":
        other = self._coerce(other)
        return self * other + other * self

    def is_hermitian(self, atol=1e-12) -> bool:
        return all(abs(v.imag) <= atol for v in self._terms.values())

    def hermitian_part(self) -> "OperatorSum":
        return OperatorSum(self.n_qubits, {k: v.real for k, v in self._terms.items()})

    def terms_commute(self) -> bool:
        """True when all Pauli terms commute pairwise."""
        terms = self.terms
        return all(a.commutes_with(b) for i, a in enumerate(terms) for b in terms[i + 1:])

    def equals(self, other, atol=1e-12) -> bool:
        """Term-by-term canonical comparison."""
        difference = self - other
        return difference.is_zero(atol)

    def embed(self, n_qubits: int, offset: int = 0) -> "OperatorSum":
        """Place this operator on a larger register starting at ``offset``."""
        if offset < 0 or offset + self.n_qubits > n_qubits:
            raise UsageError("Cannot embed {} qubits at offset {} into {}".format(self.n_qubits, offset, n_qubits))
        pad_left, pad_right = "I" * offset, "I" * (n_qubits - offset - self.n_qubits)
        return OperatorSum(n_qubits, {pad_left + k + pad_right: v for k, v in self._terms.items()})

    def __eq__(self, other):
        if not isinstance(other, OperatorSum):
            return NotImplemented
        return self.n_qubits == other.n_qubits and self._terms == other._terms

    __hash__ = None

    def __repr__(self):
        if not self._terms:
            return "OperatorSum({}, 0)".format(self.n_qubits)
        body = " + ".join("({:.6g}){}".format(v, k) for k, v in self._terms.items())
        return "OperatorSum({}, {})".format(self.n_qubits, body)
