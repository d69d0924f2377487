"""Adaptive contrast enhancement (SUACE) with CLAHE and homomorphic-filter
baselines. All images are 2-D uint8 numpy arrays (height x width)."""

from suace._core import (
    clahe,
    entropy,
    hmfil,
    load_image,
    phantom,
    save_image,
    suace,
    suggested_sigma,
)

__all__ = [
    "suace",
    "clahe",
    "hmfil",
    "entropy",
    "phantom",
    "suggested_sigma",
    "load_image",
    "save_image",
]
