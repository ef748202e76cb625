#!/usr/bin/env python3
"""
Pair potentials with bounded Mayer functions: hard spheres and square wells in
one, two or three dimensions.

Besides f and f~ = 1 + f, each potential knows the closed form of its |f|
integral and draws displacements with density |f(r)| / integral |f|, which is
what the tree-integral importance sampler needs.
"""
import math
from dataclasses import dataclass
from typing import Dict, Literal, Tuple

import numpy as np

from .errors import PotentialError

PotentialKind = Literal["hard-sphere", "square-well"]
POTENTIAL_KINDS = ("hard-sphere", "square-well")


def ball_volume(radius: float, dim: int) -> float:
    """Volume of the dim-dimensional ball (length for dim=1, area for dim=2)."""
    return math.pi ** (dim / 2) / math.gamma(dim / 2 + 1) * radius**dim


def random_directions(rng: np.random.Generator, size: int, dim: int) -> np.ndarray:
    """Unit vectors, isotropic; for dim=1 a random sign."""
    if dim == 1:
        return rng.choice(np.array([-1.0, 1.0]), size=(size, 1))
    g = rng.standard_normal((size, dim))
    return g / np.linalg.norm(g, axis=1, keepdims=True)


@dataclass(frozen=True)
class PairPotential:
    """Spherically symmetric pair potential.

    ``sigma == 0`` is accepted as the ideal-gas limit (f identically zero).
    """

    kind: PotentialKind = "hard-sphere"
    sigma: float = 1.0
    dim: int = 3
    lam: float = 1.5
    beta_eps: float = 1.0

    def __post_init__(self):
        if self.kind not in POTENTIAL_KINDS:
            raise PotentialError(f"unknown potential kind {self.kind!r}; expected one of {POTENTIAL_KINDS}")
        if self.dim not in (1, 2, 3):
            raise PotentialError(f"dimension must be 1, 2 or 3, got {self.dim}")
        if self.sigma < 0 or not math.isfinite(self.sigma):
            raise PotentialError(f"sigma must be a finite non-negative length, got {self.sigma}")
        if self.kind == "square-well":
            if not self.lam > 1:
                raise PotentialError(f"square-well range multiple must exceed 1, got {self.lam}")
            if not math.isfinite(self.beta_eps):
                raise PotentialError(f"square-well depth must be finite, got {self.beta_eps}")

    # --- PAIR FUNCTIONS ---
    @property
    def well_f(self) -> float:
        """Value of f inside the attractive shell (0 for hard spheres)."""
        return math.expm1(self.beta_eps) if self.kind == "square-well" else 0.0

    @property
    def bound(self) -> float:
        """Sup of |f|."""
        return max(1.0, abs(self.well_f)) if self.sigma > 0 else 0.0

    def mayer_f_sq(self, r2: np.ndarray) -> np.ndarray:
        """f evaluated on squared distances."""
        r2 = np.asarray(r2, dtype=float)
        f = np.where(r2 < self.sigma**2, -1.0, 0.0)
        if self.kind == "square-well":
            shell = (r2 >= self.sigma**2) & (r2 < (self.lam * self.sigma) ** 2)
            f = np.where(shell, self.well_f, f)
        return f

    def mayer_f(self, r: np.ndarray) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        return self.mayer_f_sq(r * r)

    def boltzmann_f_sq(self, r2: np.ndarray) -> np.ndarray:
        return 1.0 + self.mayer_f_sq(r2)

    # --- INTEGRALS ---
    @property
    def core_volume(self) -> float:
        return ball_volume(self.sigma, self.dim)

    @property
    def shell_volume(self) -> float:
        if self.kind != "square-well":
            return 0.0
        return self.core_volume * (self.lam**self.dim - 1.0)

    def abs_integral(self) -> float:
        """Integral of |f| over R^dim."""
        return self.core_volume + abs(self.well_f) * self.shell_volume

    def mayer_integral(self) -> float:
        """Integral of f over R^dim."""
        return -self.core_volume + self.well_f * self.shell_volume

    # --- SAMPLING ---
    def sample_displacements(self, rng: np.random.Generator, size: int) -> Tuple[np.ndarray, np.ndarray]:
        """Draw displacements with density |f| / integral |f|.

        Returns:
            (delta, sign): delta has shape (size, dim); sign is the sign of f at delta.
        """
        u = rng.random(size)
        directions = random_directions(rng, size, self.dim)
        core_radius = self.sigma * u ** (1.0 / self.dim)
        if self.kind == "hard-sphere" or self.well_f == 0.0 or self.sigma == 0:
            return directions * core_radius[:, None], np.full(size, -1.0)

        total = self.abs_integral()
        p_core = self.core_volume / total
        in_core = rng.random(size) < p_core
        shell_radius = self.sigma * (1.0 + u * (self.lam**self.dim - 1.0)) ** (1.0 / self.dim)
        radius = np.where(in_core, core_radius, shell_radius)
        sign = np.where(in_core, -1.0, math.copysign(1.0, self.well_f))
        return directions * radius[:, None], sign

    def describe(self) -> Dict[str, object]:
        payload: Dict[str, object] = {"kind": self.kind, "sigma": self.sigma, "dim": self.dim}
        if self.kind == "square-well":
            payload.update({"lambda": self.lam, "beta_eps": self.beta_eps})
        return payload


def second_virial_analytic(potential: PairPotential) -> float:
    """B_2 = -(1/2) integral of f, in closed form."""
    return -0.5 * potential.mayer_integral()


def hard_sphere(sigma: float = 1.0, dim: int = 3) -> PairPotential:
    return PairPotential(kind="hard-sphere", sigma=sigma, dim=dim)


def square_well(sigma: float = 1.0, lam: float = 1.5, beta_eps: float = 1.0, dim: int = 3) -> PairPotential:
    return PairPotential(kind="square-well", sigma=sigma, dim=dim, lam=lam, beta_eps=beta_eps)
