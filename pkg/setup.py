import os

from setuptools import Extension, setup

# The compiled kernels are optional: without Cython (or with ZETAFLAT_NO_EXT
# set) the package installs with the pure-Python kernels only.
ext_modules = []
if not os.environ.get("ZETAFLAT_NO_EXT") and os.path.exists("src/zetaflat/_ckernels.pyx"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [Extension("zetaflat._ckernels", ["src/zetaflat/_ckernels.pyx"])],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
