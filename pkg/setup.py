"""Build script for the optional compiled split-search kernels.

The package works without the extension (a numpy fallback is selected at
import time), so a failed compile only costs speed, never functionality.
Set DIAPRED_SKIP_EXT=1 to force a pure-Python install.
"""

import os

from setuptools import Extension, setup


def extensions():
    if os.environ.get("DIAPRED_SKIP_EXT"):
        return []
    try:
        import numpy
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension(
        "diapred.models._split_kernels",
        ["src/diapred/models/_split_kernels.pyx"],
        include_dirs=[numpy.get_include()],
        language="c++",
        # -ffp-contract=off keeps float arithmetic bit-identical to the
        # numpy fallback (no fused multiply-add), which the backend
        # equivalence tests rely on.
        extra_compile_args=["-O3", "-ffp-contract=off"],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
    return cythonize([ext], language_level=3)


setup(ext_modules=extensions())
