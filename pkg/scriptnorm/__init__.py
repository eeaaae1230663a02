"""scriptnorm - script normalization toolkit for Perso-Arabic minority languages."""

__version__ = "0.1.0"
