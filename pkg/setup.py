# Builds the optional compiled search kernel. The package works without it
# (typirank.kernel falls back to the pure-Python twin), so a missing compiler
# or Cython only costs speed, not functionality.
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "typirank._kernel",
                ["src/typirank/_kernel.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )

setup(ext_modules=ext_modules)
