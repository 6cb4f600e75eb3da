#!/usr/bin/env python

from setuptools import setup

packages = ['sqadyn',
            'sqadyn.benchmark',
            'sqadyn.interfaces',
            'sqadyn.models',
            'sqadyn.response',
            'sqadyn.solvers',
            'sqadyn.space',
            'sqadyn.utilities',
            ]

install_requires = ['decorator>=5.1.1',
                    'networkx>=3.2.1',
                    'numpy>=1.26.4',
                    'pandas>=2.0.0',
                    'scipy>=1.12.0']

extras_require = {'test': ['hypothesis>=6.98.0']}

with open("README.md", "r", encoding='utf-8') as fh:
    long_description = fh.read()

setup(name='sqadyn',
      version='0.1.0',
      description='Coherent quantum dynamics of disordered superconducting qubit arrays',
      long_description=long_description,
      long_description_content_type='text/markdown',
      packages=packages,
      platforms='any',
      install_requires=install_requires,
      extras_require=extras_require,
      entry_points={'console_scripts': ['sqadyn=sqadyn.cli:main']},
      python_requires='>=3.8',
      license='MIT'
     )
