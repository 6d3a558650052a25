"""CMake-driven build of the crcep._crcep extension module.

The extension is configured and compiled by the project's CMakeLists (the
PYTHON_BINDINGS branch), so the compiler flags, include paths, and FFTW
linkage stay identical to the C++ library build.
"""

import os
import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name: str) -> None:
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext: CMakeExtension) -> None:
        source_dir = Path(__file__).resolve().parent
        ext_path = Path(self.get_ext_fullpath(ext.name)).resolve()
        out_dir = ext_path.parent
        out_dir.mkdir(parents=True, exist_ok=True)

        build_dir = Path(self.build_temp).resolve() / "cmake"
        build_dir.mkdir(parents=True, exist_ok=True)

        cfg = "Debug" if self.debug else "Release"
        configure = [
            "cmake",
            str(source_dir),
            "-DPYTHON_BINDINGS=ON",
            f"-DCMAKE_BUILD_TYPE={cfg}",
            f"-DPython_EXECUTABLE={sys.executable}",
            f"-DCMAKE_LIBRARY_OUTPUT_DIRECTORY={out_dir}",
        ]
        try:
            import pybind11

            configure.append(f"-Dpybind11_DIR={pybind11.get_cmake_dir()}")
        except ImportError:
            pass  # fall back to a system-wide pybind11 CMake config

        subprocess.run(configure, cwd=build_dir, check=True)
        subprocess.run(
            [
                "cmake",
                "--build",
                ".",
                "--target",
                "_crcep",
                "-j",
                str(os.cpu_count() or 2),
            ],
            cwd=build_dir,
            check=True,
        )


setup(
    ext_modules=[CMakeExtension("crcep._crcep")],
    cmdclass={"build_ext": CMakeBuild},
)
