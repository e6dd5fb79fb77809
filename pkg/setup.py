import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

if cythonize is not None:
    extensions = cythonize(
        [Extension(
            "utfm.kernels._speedups",
            ["src/utfm/kernels/_speedups.pyx"],
            include_dirs=[np.get_include()],
            extra_compile_args=["-O3"],
            define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        )],
        compiler_directives={"language_level": 3},
    )
else:
    # pure-Python install; the numpy kernel backend is selected at import
    extensions = []

setup(ext_modules=extensions)
