"""Low-dose CT sinogram simulation, LLMMSE denoising and fan-beam reconstruction."""

__version__ = "0.1.0"
