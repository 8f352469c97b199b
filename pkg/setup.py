from setuptools import Extension, setup
from Cython.Build import cythonize

exts = [
    Extension("negtype._kernels", ["src/negtype/_kernels.pyx"]),
]

setup(
    ext_modules=cythonize(exts, language_level=3),
)
