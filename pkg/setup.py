import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("ANDREADAKIS_NO_EXTENSION"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        extensions = [
            Extension(
                f"andreadakis._kernels.{name}",
                [f"src/andreadakis/_kernels/{name}.pyx"],
                extra_compile_args=["-O3"],
            )
            for name in ("magnus_ext", "words_ext")
        ]
        ext_modules = cythonize(extensions, compiler_directives={"language_level": "3"})

setup(ext_modules=ext_modules)
