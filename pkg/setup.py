"""Build the optional Cython DPLL kernel.

The package works without the extension; ``ata.solver`` falls back to the
pure-Python kernel when ``ata.solver._dpll_ext`` cannot be imported.
"""
import os

from setuptools import setup

ext_modules = []
if not os.environ.get("ATA_NO_EXTENSION"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "ata.solver._dpll_ext",
                    ["src/ata/solver/_dpll_ext.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
            },
        )

setup(ext_modules=ext_modules)
