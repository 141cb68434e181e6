"""Build script: compiles the optional Cython speedups.

The package works without the extension (pure-Python fallback is selected at
import time), so build failures here are demoted to a warning.  Set
DYCKSTREAM_NO_EXT=1 to skip the extension build entirely.
"""

import os
import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # pragma: no cover - build env dependent
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # pragma: no cover - build env dependent
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        print(
            "WARNING: building the dyckstream._speedups extension failed; "
            "the pure-Python backend will be used.\n  %s" % (exc,),
            file=sys.stderr,
        )


def extensions():
    if os.environ.get("DYCKSTREAM_NO_EXT"):
        return []
    from Cython.Build import cythonize

    ext = Extension(
        "dyckstream._speedups",
        sources=["src/dyckstream/_speedups.pyx"],
        extra_compile_args=["-O3"],
    )
    return cythonize([ext], language_level=3)


setup(
    ext_modules=extensions(),
    cmdclass={"build_ext": optional_build_ext},
)
