from setuptools import find_packages, setup

setup(
    name="snn-hw-explorer",
    version="0.1.0",
    description="Train MLP classifiers, transcode them to spiking networks and explore neuromorphic hardware architectures",
    packages=find_packages(include=["src", "src.*"]),
    python_requires=">=3.10",
    install_requires=[
        "numpy",
        "pandas",
        "scipy",
        "matplotlib",
        "PyYAML",
        "python-dotenv",
        "tqdm",
    ],
    extras_require={"test": ["pytest", "hypothesis"]},
    entry_points={"console_scripts": ["snn-dse=src.cli.main:main"]},
)
