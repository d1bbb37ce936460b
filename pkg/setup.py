from setuptools import setup, find_packages

setup(
    name="tgp-moo",
    version="1.0.0",
    description="Traceless Genetic Programming for multiobjective optimization on the ZDT suite",
    packages=find_packages(where="src"),
    package_dir={"": "src"},
    python_requires=">=3.8",
    install_requires=[
        "numpy>=1.21.0",
        "pandas>=1.3.0",
        "pyyaml>=5.4.0",
        "scipy>=1.10.0",
    ],
    extras_require={
        'test': [
            'pytest>=6.0.0',
            'pytest-cov>=4.0.0',
        ],
    },
    entry_points={
        'console_scripts': [
            'tgp-moo=tgp_moo.cli:main',
        ],
    },
)
