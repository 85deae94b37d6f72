"""Build script: compiles the optional Cython speedup core.

The package works without the extension (a pure-Python twin of every kernel
is selected at import time); building it makes the hot enumeration loops
roughly 20-100x faster.  Build failures are deliberately non-fatal.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("flagtwin._speedups", ["src/flagtwin/_speedups.pyx"])],
        compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
    )
except Exception as exc:  # Cython or a C compiler missing: install pure-Python
    print(f"flagtwin: skipping compiled core ({exc!r}); pure-Python kernels will be used")

setup(ext_modules=ext_modules)
