# Builds the optional compiled kernels. If Cython or a C compiler is
# unavailable the package still installs and uses the pure-Python kernels.
import os

from setuptools import setup
from setuptools.extension import Extension

ext_modules = []
if os.environ.get("LOGCAVE_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [Extension("logcave._ckernels", [os.path.join("src", "logcave", "_ckernels.pyx")], optional=True)],
            compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
        )

setup(ext_modules=ext_modules)
