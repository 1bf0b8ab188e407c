"""Identifying, self-identifying and self-locating-dominating codes in Hamming graphs."""

from constants import VERSION

__version__ = VERSION
