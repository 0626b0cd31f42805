"""Build script for the compiled convolution kernels.

The extension is optional: if compilation is unavailable the package falls
back to the numpy reference kernels at import time.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "imssr._kernels._convext",
                ["src/imssr/_kernels/_convext.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level="3",
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
