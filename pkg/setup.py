"""

Build tripow

"""

from setuptools import setup, find_packages
import sys


if sys.version_info[:2] < (3,7): # python 3.7 is required
    """
    Check Python version
    It must be >= 3.7
    """

    sys.stderr.write("Python >= 3.7 is required to run tripow\n")
    sys.exit(1)

# read README file
encoding_arg={'encoding': 'utf-8'} if sys.version_info[0] >= 3 else dict()
readmefile = 'README.md'
with open(readmefile, **encoding_arg) as infile:
    long_description = infile.read()

name = "tripow"
version = '0.3.0'

# definition of setup()
setup(
      name='tripow',
      version=version,
      description='Zero-frequency standing waves of the triple-power NLS: '
                  'existence, profiles, instability criteria and dynamics',
      long_description=long_description,
      long_description_content_type="text/markdown",
      license='MIT',
      packages=find_packages('src'),
      package_dir={'':'src'},
      entry_points={'console_scripts':['tripow = tripow.__main__:main']},
      install_requires=[
              'numpy>=1.16.4',
              'scipy>=1.5',
              'pandas>=0.24.2',
              'statsmodels>=0.11.0',
              'numba>=0.47',
              ],
      extras_require={
          'test': ['pytest']
      },
      python_requires='>=3.7',
      classifiers=[
        "Development Status :: 4 - Beta",
        "Environment :: Console",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Operating System :: MacOS :: MacOS X",
        "Operating System :: POSIX :: Linux",
        "Natural Language :: English",
        "Programming Language :: Python :: 3",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Topic :: Scientific/Engineering :: Physics"
        ],
    )
