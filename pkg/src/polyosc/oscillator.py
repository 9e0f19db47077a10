"""Harmonic-oscillator reference data: energies, Hermite polynomials, eigenfunctions.

Everything is in dimensionless form (unit mass, unit frequency, hbar = 1), so the
oscillator Hamiltonian is p^2/2 + x^2/2 with eigenvalues n + 1/2 and eigenfunctions
phi_n(x) = eta_n(x) exp(-x^2/2) / sqrt(2^n n! sqrt(pi)) for the physicists' Hermite
polynomials eta_n.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import numpy.typing as npt


def oscillator_energy(n: int) -> Fraction:
    """Exact oscillator eigenvalue n + 1/2 for level n.

    Args:
        n: Level index, n >= 0.

    Returns:
        The eigenvalue as an exact rational.
    """
    if n < 0:
        raise ValueError(f"level index must be non-negative, got {n}")
    return Fraction(2 * n + 1, 2)


@dataclass(frozen=True)
class HermitePoly:
    """Physicists' Hermite polynomial eta_n with exact integer coefficients.

    Attributes:
        n: Polynomial degree.
        coefficients: Coefficients from constant to leading term, length n + 1.
    """

    n: int
    coefficients: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError(f"degree must be non-negative, got {self.n}")
        if len(self.coefficients) != self.n + 1:
            raise ValueError(
                f"degree-{self.n} polynomial needs {self.n + 1} coefficients, "
                f"got {len(self.coefficients)}"
            )

    def evaluate(self, x: float) -> float:
        """Evaluate at x by Horner's scheme."""
        acc = 0.0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc


def hermite(n: int) -> HermitePoly:
    """Physicists' Hermite polynomial via eta_{k+1} = 2x eta_k - 2k eta_{k-1}.

    Coefficients are exact integers; the leading coefficient is 2^n.
    """
    if n < 0:
        raise ValueError(f"degree must be non-negative, got {n}")
    prev = [1]
    if n == 0:
        return HermitePoly(0, tuple(prev))
    cur = [0, 2]
    for k in range(1, n):
        nxt = [0] + [2 * c for c in cur]
        for i, c in enumerate(prev):
            nxt[i] -= 2 * k * c
        prev, cur = cur, nxt
    return HermitePoly(n, tuple(cur))


def eigenfunction_samples(n: int, x: npt.NDArray[np.float64]) -> npt.NDArray[np.float64]:
    """Normalized oscillator eigenfunction phi_n sampled on an array of positions.

    Uses the normalized three-term recurrence
        phi_0 = pi^(-1/4) exp(-x^2/2),
        phi_{k+1} = sqrt(2/(k+1)) x phi_k - sqrt(k/(k+1)) phi_{k-1},
    which keeps the Gaussian factor inside every iterate.  Below the classical
    turning point of level n the recurrence tracks the dominant solution, so it is
    stable for the ranges used here (n up to a few tens, |x| up to ~12).

    Args:
        n: Level index, n >= 0.
        x: Sample positions, all finite.

    Returns:
        Array of phi_n values with the same shape as x.
    """
    if n < 0:
        raise ValueError(f"level index must be non-negative, got {n}")
    xs = np.asarray(x, dtype=np.float64)
    if not np.all(np.isfinite(xs)):
        raise ValueError("sample positions must be finite")
    p_prev = np.pi ** -0.25 * np.exp(-0.5 * xs * xs)
    if n == 0:
        return p_prev
    p_cur = math.sqrt(2.0) * xs * p_prev
    for k in range(1, n):
        p_prev, p_cur = p_cur, (
            math.sqrt(2.0 / (k + 1)) * xs * p_cur - math.sqrt(k / (k + 1.0)) * p_prev
        )
    return p_cur


def eigenfunction_value(n: int, x: float) -> float:
    """Value of the normalized oscillator eigenfunction phi_n at a single point.

    Args:
        n: Level index, n >= 0.
        x: Position, finite.

    Returns:
        phi_n(x) as a float.

    Raises:
        ValueError: If n is negative or x is not finite.
        OverflowError: If an intermediate of the recurrence leaves float range.
    """
    if not math.isfinite(x):
        raise ValueError(f"position must be finite, got {x!r}")
    value = float(eigenfunction_samples(n, np.asarray([x]))[0])
    if not math.isfinite(value):
        raise OverflowError(f"phi_{n}({x}) left the floating-point range")
    return value


def analytic_node_count(n: int) -> int:
    """Number of real zeros of phi_n, which is exactly n."""
    if n < 0:
        raise ValueError(f"level index must be non-negative, got {n}")
    return n
