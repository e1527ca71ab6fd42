"""Magnon-mediated photon-phonon squeezing package."""

__version__ = "1.0.0"
