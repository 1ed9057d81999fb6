from setuptools import Extension, setup

# The compiled kernels are optional: the package falls back to the pure
# implementations in rankproj._kernels._pure when the extension is missing.
try:
    import numpy as np
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "rankproj._kernels._native",
                ["src/rankproj/_kernels/_native.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
