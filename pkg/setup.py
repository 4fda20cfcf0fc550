import os

import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # build without the compiled core; the numpy fallback is used
    cythonize = None

ext_modules = []
if cythonize is not None and not os.environ.get("M3COVER_NO_EXT"):
    ext_modules = cythonize(
        [
            Extension(
                "m3cover._ckernels",
                ["src/m3cover/_ckernels.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
