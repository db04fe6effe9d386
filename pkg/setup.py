"""Build script: compiles the optional Cython selection kernels.

The package works without the extension (a NumPy fallback is selected at
import time), so the build degrades gracefully when Cython or a C
toolchain is missing.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "pseudosense._kernels._simcore",
                ["src/pseudosense/_kernels/_simcore.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level="3",
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
