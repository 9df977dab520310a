#!/usr/bin/env python

from setuptools import setup, find_packages
import re

# get version from __init__.py
INITFILE = "routetree/__init__.py"
CUR_VERSION = re.search(r"^__version__ = ['\"]([^'\"]*)['\"]",
                    open(INITFILE, "r").read(),
                    re.M).group(1)

# run setup
setup(
    name="routetree",
    version=CUR_VERSION,
    description="receiver route classification by route tree template matching",
    long_description=open('README.md').read(),
    long_description_content_type='text/markdown',
    packages=find_packages(exclude=["tests"]),
    install_requires=[
        "toyplot",
        "numpy",
        "pandas",
        "requests",
        "scikit-learn",
    ],
    extras_require={
        "tests": ["pytest"],
    },
    entry_points={
        "console_scripts": ["routetree = routetree.cli:main"],
    },
    python_requires=">=3.6",
    license='GPL',
    classifiers=[
        'Programming Language :: Python :: 3',
    ],
)
