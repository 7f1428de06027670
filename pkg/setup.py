"""Build script: compiles the hot-loop kernels to a C extension when Cython
and a C toolchain are available.  The package works without the extension
(ggibandit._pykernels is a pure-Python drop-in), just much slower for long
simulations."""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/ggibandit/_ckernels.pyx"],
        language_level="3",
        compiler_directives={
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
            "initializedcheck": False,
        },
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
