import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("PFARC_PURE_PYTHON"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [Extension("pfarc._kernel", ["src/pfarc/_kernel.pyx"])],
            compiler_directives={"language_level": 3},
        )

setup(ext_modules=ext_modules)
