import os

import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python install; disco.kernels falls back
    cythonize = None

ext_modules = []
if cythonize is not None and not os.environ.get("DISCO_NO_EXT"):
    ext_modules = cythonize(
        [
            Extension(
                "disco._ckernels",
                ["src/disco/_ckernels.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
