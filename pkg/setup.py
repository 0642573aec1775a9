"""Builds the optional compiled kernel; the package works without it."""
import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("SOSTREE_NO_EXT", "") in ("", "0"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "sostree._ckernels",
                    ["src/sostree/_ckernels.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
