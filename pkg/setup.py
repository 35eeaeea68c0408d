from setuptools import setup, find_packages

setup(
    name="fgdist",
    version="1.0.0",
    author="Formal Group Algebra Team",
    description="Distribution algebras of formal groups over F_p, Poisson tables and PBW reconstruction",
    long_description=open("README.md").read(),
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["tests"]),
    install_requires=[
        "pydantic>=2.4.0",
        "sympy>=1.12",
    ],
    extras_require={
        "dev": [
            "pytest>=7.0.0",
            "black>=23.0.0",
            "mypy>=1.0.0",
        ],
    },
    entry_points={
        "console_scripts": [
            "fgdist=fgdist.cli:run",
        ],
    },
    python_requires=">=3.10",
    classifiers=[
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "Programming Language :: Python :: 3.13",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
)
