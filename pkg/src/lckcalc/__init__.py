"""Exact operator calculus for Hermitian, LCK and Vaisman model geometries."""

from .scalars import GaussianRational, gr
from .forms import Form, HermitianFrame

__all__ = ["GaussianRational", "gr", "Form", "HermitianFrame"]
