"""Build script for the optional compiled kernel extension.

The package works without the extension (a pure-Python backend is selected
at import time), but the compiled kernels are what make city-scale feature
extraction and forest training fast.  Set MORPHMAP_SKIP_EXT=1 to install
without compiling.
"""
import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("MORPHMAP_SKIP_EXT"):
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("morphmap._kernels_cy", ["src/morphmap/_kernels_cy.pyx"])],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )

setup(ext_modules=ext_modules)
