from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("binomcensus._kernel", ["src/binomcensus/_kernel.pyx"])],
        language_level="3",
    )
except ImportError:
    # The package still works without the extension: the pure-Python scan
    # in binomcensus._kernel_py is selected at import time.
    ext_modules = []

setup(ext_modules=ext_modules)
