import numpy
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "ofdm_scss._kernels._fast",
                ["src/ofdm_scss/_kernels/_fast.pyx"],
                extra_compile_args=["-O3"],
                include_dirs=[numpy.get_include()],
            )
        ],
        language_level=3,
    )
except ImportError:
    # Pure-python kernel fallback is selected at import time.
    ext_modules = []

setup(ext_modules=ext_modules)
