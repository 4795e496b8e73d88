from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "exsieve._subsetscan",
                sources=["src/exsieve/_subsetscan.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:
    # No Cython available: install pure Python only.  The package selects
    # the fallback kernel at import time when the extension is missing.
    ext_modules = []

setup(ext_modules=ext_modules)
