from dataclasses import dataclass, field
from typing import Dict, Tuple

from operators import OperatorSum
from utils.errors import DomainError, UsageError
from .FermionExpression import FermionExpression
from .jordan_wigner import expression_to_pauli

SPINS = ("up", "down")


@dataclass(frozen=True)
class ModeRelabeling:
    """Bijection from (site, spin) to one-based linear mode index."""
    mapping: Dict[Tuple[int, str], int]

    def __post_init__(self):
        modes = sorted(self.mapping.values())
        if modes != list(range(1, len(modes) + 1)):
            raise UsageError("Relabeling must map onto modes 1..{}, got {}".format(len(modes), modes))
        for site, spin in self.mapping:
            if spin not in SPINS:
                raise UsageError("Unknown spin {!r}".format(spin))

    @classmethod
    def two_site_default(cls):
        """c1 = 1 up, c2 = 2 up, c3 = 2 down, c4 = 1 down."""
        return cls({(1, "up"): 1, (2, "up"): 2, (2, "down"): 3, (1, "down"): 4})

    @property
    def n_modes(self):
        return len(self.mapping)

    @property
    def sites(self):
        return tuple(sorted({site for site, _ in self.mapping}))

    def mode(self, site, spin) -> int:
        try:
            return self.mapping[(site, spin)]
        except KeyError:
            raise UsageError("No mode for site {} spin {}".format(site, spin))


@dataclass(frozen=True)
class FermionHamiltonian:
    """
    H = sum -(t c^dagger_j c_k + h.c.) + sum V n_j n_k + sum U n_up n_down, energies in units of g.
    """
    n_modes: int
    hoppings: Tuple[Tuple[int, int, complex], ...] = field(default_factory=tuple)
    interactions: Tuple[Tuple[int, int, float], ...] = field(default_factory=tuple)
    onsite_pairs: Tuple[Tuple[int, int, float], ...] = field(default_factory=tuple)

    def __post_init__(self):
        for group in (self.hoppings, self.interactions, self.onsite_pairs):
            for j, k, _ in group:
                for mode in (j, k):
                    if not 1 <= mode <= self.n_modes:
                        raise UsageError("Mode {} outside [1, {}]".format(mode, self.n_modes))

    def expression(self) -> FermionExpression:
        n = self.n_modes
        total = FermionExpression(n)
        for j, k, t in self.hoppings:
            forward = FermionExpression.creation(n, j) * FermionExpression.annihilation(n, k)
            term = forward * t
            total = total - term - term.adjoint()
        for j, k, v in list(self.interactions) + list(self.onsite_pairs):
            total = total + FermionExpression.number(n, j) * FermionExpression.number(n, k) * v
        return total.normal_ordered()

    def realize(self) -> OperatorSum:
        return realize(self)


def realize(h: FermionHamiltonian) -> OperatorSum:
    """
    Jordan-Wigner image of a fermionic Hamiltonian.
    :raises DomainError: when the result is not Hermitian
    """
    op = expression_to_pauli(h.expression())
    if not op.is_hermitian():
        raise DomainError("Realized Hamiltonian is not Hermitian: {}".format(op))
    return op


def build_hubbard_spinflip(U: float, t1: float, t2: float, relabeling: ModeRelabeling = None) -> FermionHamiltonian:
    """
    Two-site Hubbard model with on-site interaction U, inter-site hopping t1
    and on-site spin flips t2. Zero amplitudes leave their terms out.
    """
    relabeling = relabeling or ModeRelabeling.two_site_default()
    sites = relabeling.sites
    if len(sites) != 2:
        raise UsageError("The spin-flip Hubbard model needs exactly two sites, got {}".format(sites))
    first, second = sites
    onsite = tuple((relabeling.mode(s, "up"), relabeling.mode(s, "down"), U) for s in sites if U != 0)
    hoppings = []
    if t1 != 0:
        for spin in SPINS:
            j, k = sorted((relabeling.mode(first, spin), relabeling.mode(second, spin)))
            hoppings.append((j, k, t1))
    if t2 != 0:
        for site in sites:
            j, k = sorted((relabeling.mode(site, "up"), relabeling.mode(site, "down")))
            hoppings.append((j, k, t2))
    return FermionHamiltonian(relabeling.n_modes, tuple(hoppings), (), onsite)
