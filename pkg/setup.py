"""Build hook for the optional compiled elimination kernel.

The package is pure Python except for ``tensec._kernel``, a Cython version of
the integer row-reduction routines in ``tensec._kernel_py``.  The extension is
marked optional: if Cython or a C compiler is missing the install still
succeeds and the pure-Python kernel is used at runtime.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "tensec._kernel",
                ["src/tensec/_kernel.pyx"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
