"""Builds the optional compiled kernel; the package works without it.

If Cython or a C compiler is missing the extension is skipped and the
pure-Python kernel backend is used at runtime.
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
                "yukawa_ab.kernels._core",
                ["src/yukawa_ab/kernels/_core.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
