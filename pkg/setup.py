# pygkbo, particle-based global optimization with followers and leaders
#
# Copyright (C) 2024 Pygkbo developers
#
# This program is free software: you can redistribute it and/or modify it under
# the terms of the GNU Lesser General Public License as published by the Free
# Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful, but WITHOUT
# ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS
# FOR A PARTICULAR PURPOSE.  See the GNU Lesser General Public License for more
# details.
#
# You should have received a copy of the GNU Lesser General Public License along
# with this program.  If not, see <http://www.gnu.org/licenses/>.
"""The setup module."""
import sys

from setuptools import find_packages, setup

requirements = ['setuptools>=3.2', 'configobj', 'pyyaml', 'numpy>=1.17.0', 'dask>=0.16.1']

if sys.version_info < (3, 10):
    requirements.append('importlib_metadata')

test_requires = ['pytest', 'matplotlib']
extras_require = {'plot': ['matplotlib'],
                  'tests': test_requires}

entry_points = {
    "console_scripts": [
        "pygkbo = pygkbo.__main__:main",
    ],
}

if __name__ == "__main__":
    README = open('README.md', 'r').read()
    setup(name='pygkbo',
          version='0.1.0',
          description='Particle-based global optimization with followers and leaders',
          long_description=README,
          long_description_content_type='text/markdown',
          author='Pygkbo developers',
          package_dir={'pygkbo': 'pygkbo'},
          packages=find_packages(),
          package_data={'pygkbo': ['etc/*.yaml'], 'pygkbo.test': ['test_files/*']},
          python_requires='>=3.9',
          install_requires=requirements,
          extras_require=extras_require,
          entry_points=entry_points,
          zip_safe=False,
          classifiers=[
              'Development Status :: 3 - Alpha',
              'License :: OSI Approved :: GNU Lesser General Public License v3 or later (LGPLv3+)',
              'Programming Language :: Python',
              'Operating System :: OS Independent',
              'Intended Audience :: Science/Research',
              'Topic :: Scientific/Engineering :: Mathematics'
          ]
          )
