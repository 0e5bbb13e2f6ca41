"""Vacuum fluctuations and motion: spectra, radiation reaction, conformal symmetry,
cavity radiation, quantum measurement limits and gravitational vacuum noise."""

__version__ = "0.1.0"
