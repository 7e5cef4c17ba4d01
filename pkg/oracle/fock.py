"""Truncated Fock-space building blocks: ladder operators, thermal states,
displacements and the interference observable."""

import logging
from dataclasses import dataclass

import numpy as np
from scipy import linalg

from utils.errors import ParameterError, TruncationError

logger = logging.getLogger(__name__)

DISPLACEMENT_GUARD = 0.125
OBSERVABLE_MATCH_TOL = 1e-8


def annihilation(n_osc: int) -> np.ndarray:
    """Truncated annihilation operator b with b|k> = sqrt(k)|k-1>."""
    if n_osc < 1:
        raise ParameterError(f"Fock dimension must be positive, got {n_osc}")
    return np.diag(np.sqrt(np.arange(1, n_osc, dtype=float)), 1)


def build_thermal_state(n_osc: int, nbar: float, tol_trunc: float = 1e-10) -> np.ndarray:
    """Gibbs density matrix diag((1-q) q^k), q = nbar / (1 + nbar), on n_osc levels.

    Args:
        n_osc: Fock truncation dimension
        nbar: Mean occupation, nbar >= 0
        tol_trunc: Largest allowed trace deficit q^n_osc

    Returns:
        Complex (n_osc, n_osc) density matrix

    Raises:
        TruncationError: If the dropped Gibbs tail reaches tol_trunc
    """
    if nbar < 0:
        raise ParameterError(f"Mean occupation must be non-negative, got {nbar}")
    q = nbar / (1.0 + nbar)
    deficit = q ** n_osc
    if deficit >= tol_trunc:
        raise TruncationError(
            f"Thermal state with nbar={nbar:g} needs more than {n_osc} levels: "
            f"tail {deficit:.3e} >= {tol_trunc:.1e}"
        )
    populations = (1.0 - q) * q ** np.arange(n_osc)
    return np.diag(populations).astype(complex)


def displacement_matrix(amp: complex, n_osc: int, guard: float = DISPLACEMENT_GUARD) -> np.ndarray:
    """Matrix exponential of amp b^dagger - conj(amp) b on the truncated space.

    Args:
        amp: Complex displacement amplitude
        n_osc: Fock truncation dimension
        guard: Require |amp|^2 < guard * n_osc

    Returns:
        Unitary (n_osc, n_osc) matrix

    Raises:
        TruncationError: If the amplitude is too large for the truncation
    """
    if abs(amp) ** 2 >= guard * n_osc:
        raise TruncationError(
            f"Displacement |amp|^2={abs(amp) ** 2:.3g} too large for n_osc={n_osc} "
            f"(guard {guard:g} * n_osc)"
        )
    b = annihilation(n_osc)
    generator = amp * b.T - np.conj(amp) * b
    return linalg.expm(generator)


def _normal_ordered_exponential(z: complex, b: np.ndarray) -> np.ndarray:
    # exp(z b^dagger) exp(z b); exact on the truncated block since b only lowers
    return linalg.expm(z * b.T) @ linalg.expm(z * b)


@dataclass(frozen=True)
class ObservableMatrices:
    """Signal observable A / I_N = sin(g x) and its square, x = b + b^dagger.

    disagreement is the largest entry difference between the spectral and the
    normal-ordered constructions on the checked block.
    """

    signal: np.ndarray
    signal_squared: np.ndarray
    disagreement: float


def observable_matrices(g: float, n_osc: int, tol: float = OBSERVABLE_MATCH_TOL) -> ObservableMatrices:
    """Build sin(g x) and sin^2(g x) by diagonalizing the truncated quadrature.

    The normal-ordered forms e^{-g^2/2}(e^{igb+}e^{igb} - e^{-igb+}e^{-igb})/(2i) and
    1/2 - e^{-2g^2}/4 (e^{2igb+}e^{2igb} + e^{-2igb+}e^{-2igb}) are built as well and
    compared on the lower half of the basis, where truncation of x does not reach.

    Args:
        g: Interference coupling, g >= 0
        n_osc: Fock truncation dimension
        tol: Largest allowed entry disagreement

    Returns:
        ObservableMatrices

    Raises:
        TruncationError: If the two constructions disagree beyond tol
    """
    if g < 0:
        raise ParameterError(f"Coupling g must be non-negative, got {g}")
    b = annihilation(n_osc)
    quadrature = b + b.T
    eigenvalues, vectors = linalg.eigh(quadrature)

    sines = np.sin(g * eigenvalues)
    signal = (vectors * sines) @ vectors.T
    signal_squared = (vectors * sines * sines) @ vectors.T
    signal = 0.5 * (signal + signal.T)
    signal_squared = 0.5 * (signal_squared + signal_squared.T)

    plus = _normal_ordered_exponential(1j * g, b)
    minus = _normal_ordered_exponential(-1j * g, b)
    ordered = np.exp(-0.5 * g * g) * (plus - minus) / 2j
    plus2 = _normal_ordered_exponential(2j * g, b)
    minus2 = _normal_ordered_exponential(-2j * g, b)
    ordered_squared = 0.5 * np.eye(n_osc) - 0.25 * np.exp(-2.0 * g * g) * (plus2 + minus2)

    block = slice(0, n_osc // 2)
    disagreement = max(
        np.max(np.abs(signal[block, block] - ordered[block, block])),
        np.max(np.abs(signal_squared[block, block] - ordered_squared[block, block])),
    )
    if disagreement > tol:
        raise TruncationError(
            f"Spectral and normal-ordered observables differ by {disagreement:.3e} "
            f"at g={g:g}, n_osc={n_osc}; increase n_osc"
        )
    logger.debug(f"Observable built for g={g:g}, n_osc={n_osc}, disagreement {disagreement:.2e}")
    return ObservableMatrices(signal=signal, signal_squared=signal_squared, disagreement=float(disagreement))
