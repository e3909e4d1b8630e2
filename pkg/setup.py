"""Build the optional compiled Garside kernel; the package works without it."""

from setuptools import setup

try:
    from Cython.Build import cythonize
    from setuptools import Extension
except ImportError:  # no Cython: ship the pure-Python kernel only
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "hildenkit.braid._garside",
                ["src/hildenkit/braid/_garside.pyx"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
