"""
Gaussian-windowed Fourier spectra of observable time series.
"""
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Tuple

import numpy as np

from utils.errors import DomainError, UsageError

logger = logging.getLogger(__name__)

MIN_SLICES = 8
# window sigma as a fraction of the trajectory duration
DEFAULT_WINDOW_FRACTION = 1.0 / 6.0


@dataclass(eq=False)
class Spectrum:
    """Complex amplitudes on the shifted FFT grid, omega in units of g."""
    frequencies: np.ndarray
    amplitudes: np.ndarray
    window_sigma: float
    observable: str = "n1"

    @property
    def magnitude(self) -> np.ndarray:
        return np.abs(self.amplitudes)

    def same_grid(self, other: "Spectrum") -> bool:
        return self.frequencies.shape == other.frequencies.shape and np.allclose(
            self.frequencies, other.frequencies, rtol=1e-12, atol=1e-12)

    def dominant_peak(self, min_frequency: float = 0.0) -> Tuple[int, float]:
        """Index and frequency of the largest magnitude above ``min_frequency``."""
        candidates = np.flatnonzero(self.frequencies > min_frequency)
        if candidates.size == 0:
            raise UsageError("No frequencies above {}".format(min_frequency))
        index = candidates[np.argmax(self.magnitude[candidates])]
        return int(index), float(self.frequencies[index])

    def fwhm(self, peak_index: int = None) -> float:
        """
        Full width at half maximum of the peak, linearly interpolated between grid points.
        :param peak_index: defaults to the dominant positive-frequency peak
        """
        if peak_index is None:
            peak_index, _ = self.dominant_peak()
        magnitude = self.magnitude
        half = magnitude[peak_index] / 2
        edges = []
        for direction in (-1, 1):
            i = peak_index
            while 0 <= i + direction < len(magnitude) and magnitude[i + direction] >= half:
                i += direction
            j = i + direction
            if not 0 <= j < len(magnitude):
                raise DomainError("Peak at omega = {:.4g} does not fall to half maximum inside the grid".format(
                    self.frequencies[peak_index]))
            # crossing between i (above half) and j (below)
            fraction = (magnitude[i] - half) / (magnitude[i] - magnitude[j])
            edges.append(self.frequencies[i] + fraction * (self.frequencies[j] - self.frequencies[i]))
        return float(edges[1] - edges[0])

    def to_csv(self, path):
        table = np.column_stack([self.frequencies, self.amplitudes.real, self.amplitudes.imag, self.magnitude])
        np.savetxt(path, table, delimiter=",", header="omega,real,imag,abs", comments="", fmt="%.12e")
        return Path(path)


def window_fwhm(window_sigma: float) -> float:
    """Width of the spectral line a Gaussian window of this sigma gives a pure tone."""
    return 2 * np.sqrt(2 * np.log(2)) / window_sigma


def series_spectrum(times: np.ndarray, values: np.ndarray, window_sigma: float = None,
                    observable: str = "n1") -> Spectrum:
    """
    FFT of (values - mean) times a Gaussian centred mid-trajectory, scaled by dt.
    :param values: (n_slices,) or (batch, n_slices) real series
    """
    times = np.asarray(times, dtype=float)
    values = np.asarray(values)
    if len(times) < MIN_SLICES:
        raise UsageError("Need at least {} time slices for a spectrum, got {}".format(MIN_SLICES, len(times)))
    if values.shape[-1] != len(times):
        raise UsageError("Series of shape {} does not match {} time slices".format(values.shape, len(times)))
    dt = times[1] - times[0]
    if dt <= 0 or not np.allclose(np.diff(times), dt, rtol=1e-9, atol=0):
        raise UsageError("Spectrum needs a uniform increasing time grid")
    duration = times[-1] - times[0]
    if window_sigma is None:
        window_sigma = duration * DEFAULT_WINDOW_FRACTION
    if window_sigma <= 0:
        raise UsageError("Window sigma must be positive, got {}".format(window_sigma))
    window = np.exp(-0.5 * ((times - (times[0] + duration / 2)) / window_sigma) ** 2)
    centred = values - values.mean(axis=-1, keepdims=True)
    amplitudes = np.fft.fftshift(np.fft.fft(centred * window, axis=-1), axes=-1) * dt
    frequencies = np.fft.fftshift(2 * np.pi * np.fft.fftfreq(len(times), dt))
    return Spectrum(frequencies, amplitudes, float(window_sigma), observable)


def windowed_spectrum(trajectory, window_sigma: float = None, observable: str = "n1") -> Spectrum:
    if observable not in trajectory.observables:
        raise UsageError("Trajectory has no observable {!r}, recorded: {}".format(
            observable, sorted(trajectory.observables)))
    return series_spectrum(trajectory.times, trajectory[observable], window_sigma, observable)


def spectral_difference(a: Spectrum, b: Spectrum) -> Spectrum:
    """a - b on a shared grid."""
    if not a.same_grid(b):
        raise UsageError("Spectra live on different frequency grids")
    return Spectrum(a.frequencies, a.amplitudes - b.amplitudes, a.window_sigma, a.observable)
