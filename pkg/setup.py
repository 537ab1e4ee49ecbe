"""Build script: compiles the optional Cython kernel.

The package works without the extension (a pure-Python kernel with the
same semantics is selected at import time), so any build failure here
degrades gracefully instead of aborting the install.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/linf/_kernel_c.pyx"],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - build-environment dependent
    print(f"linf: skipping Cython kernel build ({exc}); pure-Python kernel will be used")

setup(ext_modules=ext_modules)
