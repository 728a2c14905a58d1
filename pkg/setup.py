"""Build script: compiles the optional truth-table kernel extension.

The package works without the extension (a pure-Python backend is selected
at import time); building it just makes the semantic oracle faster:

    python setup.py build_ext --inplace
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
                "dualforget.semantics._kernel_c",
                ["src/dualforget/semantics/_kernel_c.pyx"],
                optional=True,
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
