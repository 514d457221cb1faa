"""Builds the optional compiled kernels; the package works without them."""

from setuptools import setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(["src/heisenzhu/_core.pyx"], language_level=3, quiet=True)
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
