#  This file is part of EmbeddingDistillation
#
#  EmbeddingDistillation is free software; you can redistribute it and/or
#  modify it under the terms of the GNU General Public License
#  as published by the Free Software Foundation; either
#  version 3.0 of the License, or (at your option) any later version.
#
#  EmbeddingDistillation is distributed in the hope that it will be useful,
#  but WITHOUT ANY WARRANTY; without even the implied warranty of
#  MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the GNU
#  General Public License for more details.
#
#  You should have received a copy of the GNU General Public
#  License along with EmbeddingDistillation. If not, see <https://www.gnu.org/licenses/>.
from setuptools import find_packages
from setuptools import setup
from embedding_distillation import PROJECT_NAME, AUTHOR, VERSION

PACKAGES = find_packages(exclude=["tests", "tests.*", "examples", "examples.*"])

# long description from README file
with open('README.md', encoding='utf-8') as f:
    DESCRIPTION = f.read()


REQUIRED = [requirement for requirement in open('requirements.txt').readlines() if requirement.strip()]
REQUIRES_PYTHON = '>=3.10'

setup(
    name=PROJECT_NAME,
    version=VERSION,
    license='GPL-3.0',
    author=AUTHOR,
    description='Metric learning embedding networks distilled from larger teacher networks',
    py_modules=['start'],
    packages=PACKAGES,
    package_data={
        "": ["config/*"],
    },
    long_description=DESCRIPTION,
    long_description_content_type='text/markdown',
    tests_require=["pytest"],
    test_suite="tests",
    zip_safe=False,
    install_requires=REQUIRED,
    python_requires=REQUIRES_PYTHON,
    entry_points={
        'console_scripts': [
            'embedding_distillation = embedding_distillation.cli:main'
        ]
    },
    classifiers=[
        'Development Status :: 4 - Beta',
        'Operating System :: OS Independent',
        'Programming Language :: Python :: 3.10',
    ],
)
