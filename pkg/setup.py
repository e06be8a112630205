import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "klucb_transfer._kernel",
                ["src/klucb_transfer/_kernel.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )

# Compiled kernel is optional: the package falls back to the pure-Python
# backend in _kernel_py when the extension is unavailable.
setup(ext_modules=ext_modules)
