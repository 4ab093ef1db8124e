from setuptools import setup

# The compiled kernel is optional: the package falls back to the pure-Python
# twin (qsp._kernel_py) when the extension is unavailable.
ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/qsp/_kernel_cy.pyx"],
        compiler_directives={"language_level": "3"},
    )
except Exception:
    ext_modules = []

setup(ext_modules=ext_modules)
