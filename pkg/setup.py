"""Optional build of the compiled spectrum kernel.

`python setup.py build_ext --inplace` produces bergelab._spectrum_cy when
Cython and a C compiler are available; without it the package runs on the
pure-Python kernel selected at import.
"""

from setuptools import find_packages, setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("bergelab._spectrum_cy", ["src/bergelab/_spectrum_cy.pyx"])],
        language_level="3",
    )
except ImportError:
    pass

setup(
    name="bergelab",
    version="0.1.0",
    package_dir={"": "src"},
    packages=find_packages("src"),
    entry_points={"console_scripts": ["bergelab = bergelab.cli:main"]},
    python_requires=">=3.10",
    ext_modules=ext_modules,
)
