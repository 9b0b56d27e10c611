"""Unit-memory convolutional codes obtained by splitting parity-check matrices of one-point AG codes.

Field arithmetic and linear algebra run on galois / numpy.
"""
