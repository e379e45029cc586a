import setuptools

#pip install -e .[test]


with open("README.md", "r") as fh:
    long_description = fh.read()

setuptools.setup(
    name="monoquartic",
    version="0.1",
    author="monoquartic developers",
    description="Monogenicity certificates, Galois groups and square-free densities for quartic families",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=setuptools.find_packages(exclude=["tests", "examples", "examples.*"]),
    package_data={"monoquartic": ["config/*.yaml"]},
    python_requires=">=3.9",
    install_requires=["numpy>=1.21.2", "pyyaml", "tqdm", "gmpy2>=2.1"],
    extras_require={"test": ["pytest", "sympy"]},
    entry_points={"console_scripts": ["monoquartic = monoquartic.cli:main"]},
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: POSIX",
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Mathematics"],
)
