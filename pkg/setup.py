"""Build script: compiles the Monte Carlo kernel when Cython is available.

Set SERVELAB_PURE=1 to skip the extension and rely on the pure-Python
fallback kernel (same results, slower).
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("SERVELAB_PURE") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "servelab._mc_kernel",
                    ["src/servelab/_mc_kernel.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
            },
        )

setup(ext_modules=ext_modules)
