"""Build script: compiles the optional float64 kernel extension.

The package is pure Python plus one optional Cython extension
(accelseries.kernels._speedups).  If Cython or a C compiler is missing,
or the compile fails for any reason, installation falls back to the pure
wheel and the package selects the Python kernels at import time.

-ffp-contract=off keeps the compiler from fusing multiply-adds so the
compiled kernels are bit-identical to the pure-Python ones.
"""

from __future__ import annotations

import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """build_ext that degrades to a pure build instead of failing."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        print(
            f"warning: building the accelseries speedup extension failed ({exc}); "
            "falling back to the pure-Python kernels",
            file=sys.stderr,
        )


def _extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        print(
            "warning: Cython not available; installing pure-Python kernels only",
            file=sys.stderr,
        )
        return []

    if sys.platform == "win32":
        flags = ["/O2"]
    else:
        flags = ["-O2", "-ffp-contract=off"]
    ext = Extension(
        "accelseries.kernels._speedups",
        sources=["src/accelseries/kernels/_speedups.pyx"],
        extra_compile_args=flags,
    )
    return cythonize([ext], compiler_directives={"language_level": 3})


setup(
    ext_modules=_extensions(),
    cmdclass={"build_ext": optional_build_ext},
)
