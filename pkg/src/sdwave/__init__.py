"""Numerical laboratory for L2 norms of the strongly damped wave equation.

Submodules: ``symbols`` (Fourier-side kernels), ``profiles`` (initial data),
``quadrature`` (Plancherel integrals), ``gridlab`` (FFT evolution and the RK4
mode oracle), ``asymptotics`` (norm curves, rate fits and claim checks) and
``cli``.
"""
__version__ = "0.1.0"
