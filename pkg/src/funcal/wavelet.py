"""Periodized orthogonal discrete wavelet transform.

The transform is the classic pyramid algorithm with circular (periodic)
boundary handling, which keeps the implied transformation matrix exactly
orthogonal for every dyadic length, including lengths shorter than the
filter.  Coefficients are stored scaling block first, then detail levels
coarse-to-fine; everything downstream (shrinkage indexing, the matrix
constructor, the calibration solver) relies on that order.

Supported families are the extremal-phase Daubechies filters ``haar``
(= ``daub1``) through ``daub10``.  Tap values are hard-coded to 17
significant digits; the test suite re-derives the defining identities
(sum, energy, double-shift orthogonality) to guard transcription slips.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._kernels import analysis_step, synthesis_step
from .errors import ValidationError

__all__ = [
    "SUPPORTED_FAMILIES",
    "WaveletFilter",
    "WaveletDecomposition",
    "make_filter",
    "dwt",
    "idwt",
    "dwt_matrix",
]

# Extremal-phase (minimum-phase) Daubechies lowpass taps, h_0 .. h_{2v-1},
# normalized so sum(h) = sqrt(2).  Generated by spectral factorization at
# 60-digit precision and rounded to float64.
_LOWPASS_TAPS = {
    "haar": (
        0.70710678118654752, 0.70710678118654752,
    ),
    "daub2": (
        0.48296291314453414, 0.83651630373780791, 0.22414386804201338, -0.12940952255126038,
    ),
    "daub3": (
        0.33267055295008262, 0.80689150931109258, 0.45987750211849157, -0.13501102001025459,
        -0.085441273882026662, 0.035226291885709537,
    ),
    "daub4": (
        0.2303778133088965, 0.71484657055291565, 0.63088076792985891, -0.027983769416859854,
        -0.18703481171909308, 0.030841381835560764, 0.0328830116668852, -0.010597401785069032,
    ),
    "daub5": (
        0.16010239797419291, 0.60382926979718967, 0.72430852843777293, 0.13842814590132073,
        -0.24229488706638203, -0.032244869584638375, 0.077571493840045714, -0.0062414902127982743,
        -0.012580751999081999, 0.0033357252854737713,
    ),
    "daub6": (
        0.11154074335010946, 0.49462389039845309, 0.75113390802109535, 0.31525035170919763,
        -0.22626469396543982, -0.12976686756726194, 0.097501605587323049, 0.027522865530305729,
        -0.03158203931748603, 0.00055384220116149614, 0.0047772575109455106, -0.0010773010853084796,
    ),
    "daub7": (
        0.077852054085009179, 0.39653931948191731, 0.72913209084623512, 0.46978228740519312,
        -0.14390600392856498, -0.22403618499387498, 0.071309219266830265, 0.080612609151083072,
        -0.038029936935014414, -0.016574541630666881, 0.012550998556099841, 0.00042957797292136652,
        -0.0018016407040474909, 0.00035371379997452025,
    ),
    "daub8": (
        0.05441584224310401, 0.31287159091429997, 0.67563073629728981, 0.58535468365420671,
        -0.015829105256349306, -0.28401554296154693, 0.00047248457391328277, 0.12874742662047846,
        -0.017369301001807546, -0.044088253930794752, 0.013981027917398282, 0.0087460940474057767,
        -0.0048703529934515743, -0.00039174037337694705, 0.00067544940645056937, -0.00011747678412476953,
    ),
    "daub9": (
        0.038077947363878347, 0.24383467461259035, 0.60482312369011111, 0.65728807805130054,
        0.13319738582500758, -0.29327378327917491, -0.096840783222976461, 0.14854074933810638,
        0.030725681479333379, -0.067632829061329974, 0.00025094711483145196, 0.022361662123679097,
        -0.0047232047577513973, -0.0042815036824634298, 0.0018476468830562265, 0.00023038576352319597,
        -0.00025196318894271014, 3.9347320316271599e-05,
    ),
    "daub10": (
        0.026670057900555554, 0.18817680007769149, 0.52720118893172559, 0.68845903945360357,
        0.28117234366057746, -0.24984642432731538, -0.19594627437737704, 0.12736934033579326,
        0.093057364603572351, -0.071394147166397087, -0.029457536821875813, 0.033212674059341002,
        0.0036065535669561697, -0.010733175483330575, 0.0013953517470529012, 0.0019924052951850561,
        -0.00068585669495971163, -0.00011646685512928545, 9.3588670320069591e-05, -1.3264202894521245e-05,
    ),
}

SUPPORTED_FAMILIES = tuple(_LOWPASS_TAPS)

_DWT_MATRIX_MAX = 1024


@dataclass(frozen=True, eq=False)
class WaveletFilter:
    """An orthogonal analysis filter pair.

    ``lowpass`` holds the scaling taps h_0..h_{2v-1}; ``highpass`` is the
    quadrature-mirror counterpart g_m = (-1)^m h_{2v-1-m}.
    """

    family: str
    lowpass: np.ndarray
    highpass: np.ndarray
    vanishing_moments: int

    def __post_init__(self):
        for arr in (self.lowpass, self.highpass):
            arr.setflags(write=False)


def make_filter(name: str) -> WaveletFilter:
    """Look up a supported wavelet family by name (``haar``, ``daub2``..``daub10``)."""
    key = name.strip().lower()
    if key == "daub1":
        key = "haar"
    if key not in _LOWPASS_TAPS:
        raise ValidationError(
            f"unknown wavelet family {name!r}; supported: {', '.join(SUPPORTED_FAMILIES)}"
        )
    lo = np.array(_LOWPASS_TAPS[key], dtype=np.float64)
    taps = lo.shape[0]
    hi = np.array([(-1.0) ** m * lo[taps - 1 - m] for m in range(taps)])
    return WaveletFilter(
        family=key, lowpass=lo, highpass=hi, vanishing_moments=taps // 2
    )


@dataclass(frozen=True, eq=False)
class WaveletDecomposition:
    """Multilevel coefficients of one signal of length M = 2^J.

    ``scaling`` holds the 2^j0 coarse coefficients; ``details[i]`` holds the
    2^(j0+i) detail coefficients of level j = j0 + i, ordered coarse-to-fine.
    """

    scaling: np.ndarray
    details: tuple[np.ndarray, ...]
    j0: int

    def __post_init__(self):
        if self.scaling.shape[0] != 2 ** self.j0:
            raise ValidationError(
                f"scaling block has {self.scaling.shape[0]} entries, expected 2^{self.j0}"
            )
        for i, det in enumerate(self.details):
            if det.shape[0] != 2 ** (self.j0 + i):
                raise ValidationError(
                    f"detail level {self.j0 + i} has {det.shape[0]} entries, "
                    f"expected {2 ** (self.j0 + i)}"
                )
        self.scaling.setflags(write=False)
        for det in self.details:
            det.setflags(write=False)

    @property
    def depth(self) -> int:
        """Total dyadic depth J (the signal length is 2^J)."""
        return self.j0 + len(self.details)

    @property
    def size(self) -> int:
        return 2 ** self.depth

    def level(self, j: int) -> np.ndarray:
        """Detail coefficients of level j (j0 <= j < J)."""
        return self.details[j - self.j0]

    def flatten(self) -> np.ndarray:
        """Canonical coefficient vector: scaling, then details coarse-to-fine."""
        return np.concatenate((self.scaling,) + self.details)

    @classmethod
    def unflatten(cls, values: np.ndarray, j0: int) -> "WaveletDecomposition":
        """Rebuild a decomposition from its canonical coefficient vector."""
        values = np.asarray(values, dtype=np.float64)
        j_total = _dyadic_depth(values.shape[0])
        pos = 2 ** j0
        scaling = values[:pos].copy()
        details = []
        for j in range(j0, j_total):
            details.append(values[pos:pos + 2 ** j].copy())
            pos += 2 ** j
        return cls(scaling=scaling, details=tuple(details), j0=j0)


def _dyadic_depth(m: int) -> int:
    j = int(m).bit_length() - 1
    if m < 2 or 2 ** j != m:
        raise ValidationError(
            f"signal length M={m} is not a power of two (the wavelet transform "
            f"requires M = 2^J with J >= 1)"
        )
    return j


def dwt(signal, filt: WaveletFilter, j0: int = 0) -> WaveletDecomposition:
    """Forward transform by the pyramid algorithm, from level J-1 down to j0."""
    x = np.ascontiguousarray(signal, dtype=np.float64)
    if x.ndim != 1:
        raise ValidationError("dwt expects a one-dimensional signal")
    j_total = _dyadic_depth(x.shape[0])
    if not 0 <= j0 < j_total:
        raise ValidationError(f"j0={j0} out of range [0, {j_total})")
    approx = x.copy()
    details = []
    while approx.shape[0] > 2 ** j0:
        approx, det = analysis_step(approx, filt.lowpass, filt.highpass)
        details.append(det)
    return WaveletDecomposition(
        scaling=approx, details=tuple(reversed(details)), j0=j0
    )


def idwt(decomp: WaveletDecomposition, filt: WaveletFilter) -> np.ndarray:
    """Inverse transform; exact inverse of :func:`dwt` up to rounding."""
    approx = decomp.scaling.copy()
    for det in decomp.details:
        if det.shape[0] != approx.shape[0]:
            raise ValidationError("malformed decomposition: level sizes do not chain")
        approx = synthesis_step(approx, det, filt.lowpass, filt.highpass)
    return approx


def dwt_matrix(m: int, filt: WaveletFilter, j0: int = 0) -> np.ndarray:
    """Explicit M x M transform matrix W with dwt(x).flatten() == W @ x.

    Assembled row-wise from the filter taps level by level, independently of
    the pyramid kernels, so it can serve as an oracle for them.  Limited to
    M <= 1024; the dense product is meant for verification, not production.
    """
    j_total = _dyadic_depth(m)
    if m > _DWT_MATRIX_MAX:
        raise ValidationError(f"dwt_matrix is limited to M <= {_DWT_MATRIX_MAX}")
    if not 0 <= j0 < j_total:
        raise ValidationError(f"j0={j0} out of range [0, {j_total})")
    lo, hi = filt.lowpass, filt.highpass
    w = np.eye(m)
    n = m
    while n > 2 ** j0:
        step = np.eye(m)
        step[:n, :n] = 0.0
        for k in range(n // 2):
            # += folds taps that wrap more than once around short blocks
            for tap in range(lo.shape[0]):
                col = (2 * k + tap) % n
                step[k, col] += lo[tap]
                step[n // 2 + k, col] += hi[tap]
        w = step @ w
        n //= 2
    return w
