"""Build script: compiles the optional C kernel.

The package is pure Python plus one optional Cython extension
(``mup._kernel_c``) carrying the hot term/unification kernel.  If Cython
or a C compiler is unavailable the build falls back to a pure-Python
install; the package selects the pure kernel at import time.
"""

import os

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Build the extension if possible, otherwise warn and carry on."""

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
        import warnings

        warnings.warn(
            "mup: building the C kernel failed (%s); "
            "falling back to the pure-Python kernel" % (exc,)
        )


ext_modules = []
if not os.environ.get("MUP_SKIP_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/mup/_kernel_c.pyx"],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})
