import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("TORSORLAB_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [Extension("torsorlab._snf_core", ["src/torsorlab/_snf_core.pyx"])],
            language_level=3,
        )

setup(ext_modules=ext_modules)
