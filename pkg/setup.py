import os

from setuptools import Extension, setup

# The compiled kernels are optional: SWIIM_SKIP_EXT=1 installs the pure-Python
# backend only. No -ffast-math / -march: replay outputs must be bit-identical
# across builds, so the float kernels stay strict IEEE (contraction off).
ext_modules = []
if not os.environ.get("SWIIM_SKIP_EXT"):
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "swiim.kernels._hot",
                ["src/swiim/kernels/_hot.pyx"],
                extra_compile_args=["-O3", "-ffp-contract=off"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
