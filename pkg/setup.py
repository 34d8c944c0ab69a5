from setuptools import find_packages, setup


with open('logspace/VERSION') as version_fp:
    VERSION = version_fp.read().strip()


install_requires = [
    'django-local-settings>=1.0b6',
    'numpy>=1.17',
    'scipy>=1.4',
]

setup(
    name='logspace',
    version=VERSION,
    description='F-norms, isometry criteria and measure-preserving maps for L_log spaces',
    packages=find_packages(),
    include_package_data=True,
    package_data={
        'logspace': ['VERSION', '*.cfg', 'scenarios/*.json'],
    },
    zip_safe=False,
    python_requires='>=3.8',
    install_requires=install_requires,
    extras_require={
        'dev': [
            'flake8',
            'hypothesis>=5.0',
            'tox>=2.7.0',
        ],
        'tox': [
            'hypothesis>=5.0',
        ],
    },
    entry_points="""
    [console_scripts]
    logspace = logspace.__main__:main

    """,
    classifiers=[
        'Development Status :: 4 - Beta',
        'Intended Audience :: Science/Research',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
)
