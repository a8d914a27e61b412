#!/usr/bin/python3
#
# Copyright (C) 2026 semiprime-asymptotics contributors. See COPYING for license
#

from setuptools import setup
import io

with io.open('README.rst', 'rt', encoding='utf-8') as f:
    readme_contents = f.read()

setup_args = dict(
    name = "semiprime-asymptotics",
    version = "1.0.0",
    description = "Exact semiprime counts and the asymptotic series of pi_2(x)",
    long_description = readme_contents,
    license = "GPL",
    packages = ["semiprime_asymptotics"],
    classifiers=[
        'Development Status :: 4 - Beta',
        'License :: OSI Approved :: GNU General Public License v3 or later (GPLv3+)',
        'Operating System :: POSIX',
        'Intended Audience :: Science/Research',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
    python_requires='>=3.8',
    install_requires=[
        'numpy>=1.20',
        'mpmath>=1.2',
        'click>=7.1',
        'PyYAML',
    ],
    extras_require={
        'test': ['pytest>=7.0'],
    },
    entry_points = {
        'console_scripts': [
            'semiprime = semiprime_asymptotics.cli:main',
        ],
    },
)

if __name__ == '__main__':
    setup(**setup_args)
