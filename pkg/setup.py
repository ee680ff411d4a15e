from setuptools import setup, find_packages

setup(
    name="gdof-mimo",
    version="1.0.0",
    description="GDoF regions of the 2-user MIMO interference channel — exact bounds and Monte Carlo checks",
    packages=find_packages(exclude=["tests*", "*.egg-info"]),
    py_modules=["main", "config"],
    python_requires=">=3.10",
    install_requires=[
        "rich>=13.7.0",
        "numpy>=1.26.0",
        "python-dotenv>=1.0.0",
        "pydantic>=2.5.0",
        "pydantic-settings>=2.1.0",
        "loguru>=0.7.2",
        "click>=8.1.7",
    ],
    entry_points={
        "console_scripts": [
            "gdof=main:cli",
        ],
    },
)
