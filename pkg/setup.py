import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("INFODD_SKIP_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "infodd._fastkern",
                    ["src/infodd/_fastkern.pyx"],
                    # -ffp-contract=off keeps float results bit-identical to
                    # the pure-Python kernel (no FMA contraction).
                    extra_compile_args=["-O3", "-ffp-contract=off"],
                )
            ],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
            },
        )
    except ImportError:
        # No Cython available: install the pure-Python package only.
        ext_modules = []

setup(ext_modules=ext_modules)
