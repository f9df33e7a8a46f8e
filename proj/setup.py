"""CMake-driven build of the _orbitope extension module."""

import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext):
        import pybind11

        source = Path(__file__).resolve().parent
        build_dir = Path(self.build_temp).resolve() / "cmake"
        build_dir.mkdir(parents=True, exist_ok=True)
        ext_path = Path(self.get_ext_fullpath(ext.name)).resolve()
        ext_path.parent.mkdir(parents=True, exist_ok=True)
        subprocess.run(
            [
                "cmake",
                "-S", str(source),
                "-B", str(build_dir),
                "-DCMAKE_BUILD_TYPE=Release",
                "-DORBITOPE_BUILD_TESTS=OFF",
                "-DORBITOPE_BUILD_PYTHON=ON",
                f"-DPython3_EXECUTABLE={sys.executable}",
                f"-Dpybind11_DIR={pybind11.get_cmake_dir()}",
                f"-DCMAKE_LIBRARY_OUTPUT_DIRECTORY={ext_path.parent}",
            ],
            check=True,
        )
        subprocess.run(
            ["cmake", "--build", str(build_dir), "--target", "_orbitope", "-j"],
            check=True,
        )


setup(
    ext_modules=[CMakeExtension("orbitope_lab._orbitope")],
    cmdclass={"build_ext": CMakeBuild},
)
