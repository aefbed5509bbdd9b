"""Build script: compiles the optional split-search extension.

The package is fully functional without the extension; a numpy fallback
is selected at import time (see nextday.learn.kernels). Any compiler or
Cython failure therefore downgrades to a warning instead of aborting
the install.
"""

import sys

from setuptools import setup
from setuptools.command.build_ext import build_ext


def _extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    from setuptools import Extension

    ext = Extension(
        "nextday.learn._gini_fast",
        sources=["src/nextday/learn/_gini_fast.pyx"],
        language="c++",
        extra_compile_args=["-O2"],
    )
    return cythonize([ext], language_level="3")


class optional_build_ext(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            print(f"warning: skipping compiled kernels ({exc})", file=sys.stderr)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: could not build {ext.name} ({exc})", file=sys.stderr)


setup(
    ext_modules=_extensions(),
    cmdclass={"build_ext": optional_build_ext},
)
