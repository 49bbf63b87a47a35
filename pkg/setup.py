"""Build script for the optional compiled kernel.

The package works without the extension (a numpy fallback is selected at
import time), so a failed compile should not block installation.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "wallfade._kernels",
                ["src/wallfade/_kernels.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
