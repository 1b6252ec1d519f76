import pathlib

from setuptools import setup, find_packages

# The directory containing this file
HERE = pathlib.Path(__file__).parent

# The text of the README file
README = (HERE / "README.md").read_text()

# This call to setup() does all the work
setup(
    name="tfkit",
    version="0.1.0",
    description="This package computes time-frequency distributions, checks uncertainty relations on them and moves signals by SL(2, R) actions.",
    long_description=README,
    long_description_content_type="text/markdown",
    license="MIT",
    classifiers=[
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    packages=find_packages(exclude=("test",)),
    include_package_data=True,
    python_requires=">=3.8",
    install_requires=["numpy>=1.24", "scipy>=1.10", "pydantic>=2.6", "orjson>=3.9.15"],
    entry_points={"console_scripts": ["tfkit=tfkit.cli:main"]},
)
