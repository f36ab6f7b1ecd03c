"""
Holds the version of the package.

Read by ``setup.py`` without importing the package, and re-exported by
the top-level ``__init__.py``.
"""

__version__ = '0.1.0a1'
