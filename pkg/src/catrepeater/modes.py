"""Single- and multimode Schrödinger-cat states produced by electro-optic phase modulation.

The modulator maps a carrier coherent amplitude ``alpha`` onto sidebands
``mu = -S..S`` with amplitudes ``exp(i mu phi) J_mu(m) alpha`` (large-S limit).
Bessel functions are evaluated by Miller's downward recurrence, normalized with
``J_0^2 + 2 sum_k J_k^2 = 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import IntEnum
from typing import Iterable

import numpy as np

from .errors import DegenerateInputError

__all__ = [
    "CatSymmetry",
    "ModulatorSettings",
    "ModeVector",
    "MultimodeCat",
    "ModePartition",
    "bessel_j",
    "bessel_j_orders",
    "sideband_deficit",
    "default_sideband_cutoff",
    "evolution_element",
    "modulate",
    "cat_norm",
    "multimode_cat",
    "split_modes",
]

DEFICIT_TOL = 1e-12
_RESCALE = 1e250


class CatSymmetry(IntEnum):
    """Parity label of a cat state: even (+1) or odd (-1)."""

    PLUS = 1
    MINUS = -1

    @classmethod
    def coerce(cls, value) -> "CatSymmetry":
        if isinstance(value, cls):
            return value
        if value in ("+", "plus", "even"):
            return cls.PLUS
        if value in ("-", "minus", "odd"):
            return cls.MINUS
        return cls(int(value))

    @property
    def symbol(self) -> str:
        return "+" if self is CatSymmetry.PLUS else "-"


def _start_order(n_max: int, x: float) -> int:
    top = max(n_max, int(math.ceil(x)))
    start = top + 30 + int(math.sqrt(60.0 * (top + 1)))
    return start + (start % 2)


_SERIES_X = 1e-2


def _bessel_small(n: int, x: float) -> float:
    # power series; (x/2)^2 < 3e-5 so eight terms are far past double precision
    log_h = math.log(x) - math.log(2.0)
    term = math.exp(n * log_h - math.lgamma(n + 1))
    q = -(x / 2.0) ** 2
    total = term
    for j in range(1, 8):
        term *= q / (j * (j + n))
        total += term
    return total


def bessel_j_orders(n_max: int, x: float) -> np.ndarray:
    """Return ``[J_0(x), ..., J_{n_max}(x)]`` by downward recurrence.

    The unnormalized sequence from the recurrence
    ``J_{k-1} = (2k/x) J_k - J_{k+1}`` is scaled so that
    ``J_0^2 + 2 sum_{k>=1} J_k^2 = 1``; the overall sign is fixed with
    ``J_0 + 2 sum_{k>=1} J_{2k} = 1``.
    """
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    x = float(x)
    if not math.isfinite(x):
        raise ValueError("argument must be finite")
    sign_x = -1.0 if x < 0 else 1.0
    x = abs(x)
    out = np.zeros(n_max + 1)
    if x == 0.0:
        out[0] = 1.0
        return out

    if x < _SERIES_X:
        out[:] = [_bessel_small(n, x) for n in range(n_max + 1)]
        if sign_x < 0:
            out[1::2] *= -1.0
        return out

    start = _start_order(n_max, x)
    vals = np.zeros(start + 2)
    vals[start] = 1.0
    for k in range(start, 0, -1):
        vals[k - 1] = (2.0 * k / x) * vals[k] - vals[k + 1]
        if abs(vals[k - 1]) > _RESCALE:
            vals[k - 1 :] /= _RESCALE
    vals = vals[: start + 1]
    vals /= np.max(np.abs(vals))

    sq = vals[0] ** 2 + 2.0 * math.fsum(v * v for v in vals[1:])
    even = vals[0] + 2.0 * math.fsum(vals[2::2])
    scale = math.copysign(1.0 / math.sqrt(sq), even)
    vals = vals * scale

    out[:] = vals[: n_max + 1]
    if sign_x < 0:
        out[1::2] *= -1.0
    return out


def bessel_j(n: int, x: float) -> float:
    """Bessel function of the first kind of integer order ``n``."""
    n = int(n)
    val = bessel_j_orders(abs(n), x)[abs(n)]
    if n < 0 and n % 2:
        val = -val
    return float(val)


def sideband_deficit(m: float, S: int) -> float:
    """Probability mass outside sidebands ``|mu| <= S``: ``1 - sum_{|mu|<=S} J_mu(m)^2``.

    Evaluated as the tail ``2 sum_{k>S} J_k(m)^2`` to avoid cancellation.
    """
    if S < 0:
        raise ValueError("S must be nonnegative")
    vals = bessel_j_orders(_start_order(S, abs(m)) - 1, m)
    return 2.0 * math.fsum(v * v for v in vals[S + 1 :])


def default_sideband_cutoff(m: float, tol: float = DEFICIT_TOL) -> int:
    """Smallest ``S`` whose sideband deficit is below ``tol``."""
    top = _start_order(int(abs(m)) + 40, abs(m)) - 1
    vals = bessel_j_orders(top, m)
    sq = vals * vals
    # tail[S] = 2 * sum_{k > S} J_k^2
    tail = 2.0 * np.concatenate([np.cumsum(sq[::-1])[::-1][1:], [0.0]])
    for S, deficit in enumerate(tail):
        if deficit < tol:
            return S
    return top


@dataclass(frozen=True)
class ModulatorSettings:
    """Modulation index ``m``, phase ``phi`` (rad) and sideband cutoff ``S``.

    ``S=None`` picks the smallest cutoff with Bessel-sum deficit below 1e-12.
    """

    m: float
    phi: float = 0.0
    S: int | None = None

    def __post_init__(self):
        if not math.isfinite(self.m) or not math.isfinite(self.phi):
            raise ValueError("modulation index and phase must be finite")
        if self.S is None:
            object.__setattr__(self, "S", default_sideband_cutoff(self.m))
        elif int(self.S) < 0:
            raise ValueError("sideband cutoff S must be >= 0")
        else:
            object.__setattr__(self, "S", int(self.S))

    def bessel_weights(self) -> np.ndarray:
        """``J_mu(m)`` for ``mu = -S..S``."""
        pos = bessel_j_orders(self.S, self.m)
        neg = pos[:0:-1].copy()
        neg[(self.S - np.arange(self.S)) % 2 == 1] *= -1.0
        return np.concatenate([neg, pos])


@dataclass(frozen=True)
class ModeVector:
    """Complex sideband amplitudes indexed by ``mu`` in ``[-S, S]``."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex)
        if amps.ndim != 1 or amps.size % 2 != 1:
            raise ValueError("amplitudes must be a 1-d array of odd length 2S+1")
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def S(self) -> int:
        return (self.amplitudes.size - 1) // 2

    @property
    def indices(self) -> range:
        return range(-self.S, self.S + 1)

    def __getitem__(self, mu: int) -> complex:
        if abs(mu) > self.S:
            raise IndexError(f"sideband {mu} outside [-{self.S}, {self.S}]")
        return complex(self.amplitudes[mu + self.S])

    @property
    def mean_photons(self) -> float:
        return math.fsum(float(abs(z) ** 2) for z in self.amplitudes)

    def scaled(self, c: complex) -> "ModeVector":
        return ModeVector(c * self.amplitudes)


def evolution_element(mu: int, settings: ModulatorSettings) -> complex:
    """Large-S modulator matrix element ``U_{mu,0} = exp(-i mu phi) J_mu(m)``."""
    if abs(mu) > settings.S:
        raise IndexError(f"sideband {mu} outside [-{settings.S}, {settings.S}]")
    return complex(np.exp(-1j * mu * settings.phi) * bessel_j(mu, settings.m))


def modulate(alpha: complex, settings: ModulatorSettings) -> ModeVector:
    """Sideband amplitudes ``conj(U_{mu,0}) * alpha`` of the modulated carrier."""
    mus = np.arange(-settings.S, settings.S + 1)
    weights = settings.bessel_weights()
    return ModeVector(np.exp(1j * mus * settings.phi) * weights * complex(alpha))


def cat_norm(mean_photons: float, symmetry: CatSymmetry | int, modified: bool = False) -> float:
    """Squared norm of ``|alpha> +/- |-alpha>``.

    ``M_pm = 2 (1 +/- exp(-2 n))``; with ``modified=True`` the vacuum-subtracted
    even cat ``M_+ - 4 exp(-n) = 2 (1 - exp(-n))^2`` is returned.
    """
    n = float(mean_photons)
    if n < 0:
        raise ValueError("mean photon number must be nonnegative")
    sym = CatSymmetry.coerce(symmetry)
    if modified:
        if sym is not CatSymmetry.PLUS:
            raise ValueError("the modified norm is only defined for the even cat")
        return 2.0 * math.expm1(-n) ** 2
    if sym is CatSymmetry.PLUS:
        return 2.0 * (1.0 + math.exp(-2.0 * n))
    return -2.0 * math.expm1(-2.0 * n)


@dataclass(frozen=True)
class MultimodeCat:
    """Normalized multimode cat ``(|a> + sign |-a>) / sqrt(norm)``.

    ``degenerate`` marks the odd cat at zero amplitude, whose norm vanishes.
    """

    symmetry: CatSymmetry
    modes: ModeVector
    norm: float
    degenerate: bool = False


def multimode_cat(alpha: complex, symmetry: CatSymmetry | int, settings: ModulatorSettings) -> MultimodeCat:
    modes = modulate(alpha, settings)
    sym = CatSymmetry.coerce(symmetry)
    norm = cat_norm(modes.mean_photons, sym)
    return MultimodeCat(sym, modes, norm, degenerate=norm == 0.0)


@dataclass(frozen=True)
class ModePartition:
    """Split of sidebands into stored (``qm``) and relay-bound (``bs``) groups."""

    qm_indices: tuple[int, ...]
    bs_indices: tuple[int, ...]
    n_qm: float
    n_bs: float
    r_bs: float
    degenerate: bool = False

    @property
    def n_total(self) -> float:
        return self.n_qm + self.n_bs


def split_modes(modes: ModeVector, bs_indices: Iterable[int]) -> ModePartition:
    """Partition ``modes`` and return the relay photon-number ratio ``r_bs``.

    An all-zero input has no defined ratio; ``r_bs`` is then 0 and the
    partition is flagged ``degenerate``.
    """
    bs = tuple(sorted(set(int(i) for i in bs_indices)))
    for i in bs:
        if abs(i) > modes.S:
            raise IndexError(f"sideband {i} outside [-{modes.S}, {modes.S}]")
    bs_set = set(bs)
    qm = tuple(i for i in modes.indices if i not in bs_set)
    n_bs = math.fsum(abs(modes[i]) ** 2 for i in bs)
    n_qm = math.fsum(abs(modes[i]) ** 2 for i in qm)
    total = n_bs + n_qm
    if total == 0.0:
        return ModePartition(qm, bs, 0.0, 0.0, 0.0, degenerate=True)
    return ModePartition(qm, bs, n_qm, n_bs, n_bs / total)


def _require_nondegenerate(norm: float, what: str) -> float:
    if norm <= 0.0:
        raise DegenerateInputError(f"{what} has zero norm")
    return norm
