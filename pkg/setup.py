#!/usr/bin/env python
# -*- coding: utf-8 -*-

from setuptools import setup

setup(
    name = "django-shuffles",
    version = "0.1",
    description = "Random orderings of the integers and the riffle shuffles they induce.",
    long_description = open("README.md").read(),
    long_description_content_type = "text/markdown",
    keywords = "django shuffle riffle permutation random walk symmetric group",
    license = "Apache License 2.0",
    python_requires = ">=3.10",
    install_requires = [
        "django>=4.2",
        "numpy>=1.22",
        "scipy>=1.9",
    ],
    packages = [
        "shuffles",
        "shuffles.management",
        "shuffles.management.commands",
        "shuffles.migrations",
        "shuffles.tests",
    ],
    classifiers = [
        "Operating System :: OS Independent",
        "Development Status :: 3 - Alpha",
        "Framework :: Django",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: Apache Software License",
        "Programming Language :: Python :: 3",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
)
