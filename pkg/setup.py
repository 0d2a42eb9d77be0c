import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("PERIODIC_SCA_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [Extension("periodic_sca._kernels", ["src/periodic_sca/_kernels.pyx"])],
            language_level=3,
        )

setup(ext_modules=ext_modules)
