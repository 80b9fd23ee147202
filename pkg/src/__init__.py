"""sharpfront: sharp extinction/propagation thresholds in reaction-diffusion."""

__version__ = "0.1.0"
