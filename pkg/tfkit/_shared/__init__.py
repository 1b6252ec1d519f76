"""Exposes shared numerics and base classes for tfkit

This includes the continuous-Fourier conventions every domain conversion
goes through, and the grid models that house distributions.
This is a private package.
"""
