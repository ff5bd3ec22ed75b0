import glob

from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

ext = Pybind11Extension(
    "chainavoid._core",
    sorted(glob.glob("src/*.cpp")) + ["python/_core.cpp"],
    include_dirs=["include", "vendor"],
    cxx_std=20,
)

setup(
    packages=["chainavoid"],
    package_dir={"chainavoid": "python/src/chainavoid"},
    ext_modules=[ext],
    cmdclass={"build_ext": build_ext},
)
