# -*- coding: utf-8 -*-
"""有限域 GF(p^t) 的精确运算、子域嵌入与基下坐标展开。

元素直接使用 galois 的 FieldArray 标量/数组，域类本身就是元素携带的域标识。
"""
import functools
import logging

import galois
import numpy as np

from . import consts as c
from .exceptions import (BasisException, FieldException, FieldMismatchException,
                         FieldZeroDivisionException)

logger = logging.getLogger(__name__)

OPERATIONS = ('add', 'sub', 'mul', 'div', 'inv', 'pow')


class FiniteField(object):

    def __init__(self, p, t=1, modulus=None):
        p, t = int(p), int(t)
        if not galois.is_prime(p):
            raise FieldException('characteristic {} is not prime'.format(p))
        if t < 1:
            raise FieldException('extension degree must be >= 1, got {}'.format(t))
        if p ** t > c.MAX_FIELD_ORDER:
            raise FieldException('field order {}^{} exceeds {}'.format(p, t, c.MAX_FIELD_ORDER))

        self.p = p
        self.t = t
        self.order = p ** t
        prime_field = galois.GF(p)

        if modulus is None:
            # 字典序最小的首一不可约多项式，保证每次构造结果可复现
            poly = galois.irreducible_poly(p, t, method="min")
        else:
            coeffs = [int(x) % p for x in modulus]
            if len(coeffs) != t + 1 or coeffs[-1] != 1:
                raise FieldException('modulus {} is not monic of degree {}'.format(list(modulus), t))
            poly = galois.Poly(coeffs, field=prime_field, order="asc")
            if not poly.is_irreducible():
                raise FieldException('modulus {} is reducible over GF({})'.format(coeffs, p))
        self.modulus_poly = poly

        if t == 1:
            self.GF = galois.GF(p)
        else:
            # poly 已确认不可约，跳过 galois 的重复校验
            self.GF = galois.GF(p ** t, irreducible_poly=poly, verify=False)
        self.prime_field = prime_field

    @property
    def modulus(self):
        # 升幂系数 [c_0, ..., c_t]
        return [int(x) for x in self.modulus_poly.coeffs[::-1]]

    @functools.cached_property
    def generator(self):
        g = self.GF.primitive_element
        if not self.verify_generator(g):
            raise FieldException('primitive element {} failed the order check'.format(int(g)))
        return g

    def verify_generator(self, g):
        n = self.order - 1
        if g ** n != 1:
            return False
        primes, _ = galois.factors(n) if n > 1 else ([], [])
        return all(g ** (n // r) != 1 for r in primes)

    def element(self, value):
        return self.GF(int(value))

    def elements(self):
        # 规范顺序：整数表示 0..q-1
        return self.GF.elements

    def array(self, values):
        if isinstance(values, galois.FieldArray):
            self.check_member(values)
            return values
        return self.GF(np.asarray(values, dtype=np.int64))

    def contains(self, x):
        return isinstance(x, galois.FieldArray) and type(x) is self.GF

    def check_member(self, x):
        if not self.contains(x):
            other = type(x).name if isinstance(x, galois.FieldArray) else type(x).__name__
            raise FieldMismatchException(self.name, other)

    @property
    def name(self):
        return 'GF({})'.format(self.order) if self.t == 1 else 'GF({}^{})'.format(self.p, self.t)

    def describe(self):
        return {'p': self.p, 't': self.t, 'modulus': self.modulus}

    def __eq__(self, other):
        return isinstance(other, FiniteField) and self.GF is other.GF

    def __hash__(self):
        return hash((self.p, self.t, tuple(self.modulus)))

    def __repr__(self):
        return 'FiniteField({}, modulus={})'.format(self.name, self.modulus)


def field_create(p, t=1, modulus=None):
    return _cached_field(int(p), int(t), None if modulus is None else tuple(int(x) for x in modulus))


@functools.lru_cache(maxsize=None)
def _cached_field(p, t, modulus):
    return FiniteField(p, t, modulus)


def order_parts(q):
    """q = p^t -> (p, t)，不构造域。"""
    q = int(q)
    if not galois.is_prime_power(q):
        raise FieldException('{} is not a prime power'.format(q))
    primes, exponents = galois.factors(q)
    return int(primes[0]), int(exponents[0])


def field_for_order(q):
    return field_create(*order_parts(q))


def arithmetic(a, b, op):
    if op not in OPERATIONS:
        raise FieldException('unknown operation {}'.format(op))
    if not isinstance(a, galois.FieldArray):
        raise FieldException('left operand is not a field element')
    if op == 'pow':
        return a ** int(b)
    if op == 'inv':
        if a == 0:
            raise FieldZeroDivisionException('0 has no inverse in {}'.format(type(a).name))
        return a ** -1
    if not isinstance(b, galois.FieldArray) or type(a) is not type(b):
        right = type(b).name if isinstance(b, galois.FieldArray) else type(b).__name__
        raise FieldMismatchException(type(a).name, right)
    if op == 'add':
        return a + b
    if op == 'sub':
        return a - b
    if op == 'mul':
        return a * b
    if b == 0:
        raise FieldZeroDivisionException('division by zero in {}'.format(type(a).name))
    return a / b


class SubfieldBasis(object):
    """GF(q^m) 在子域 GF(q) 上的一组基 b_1..b_m。"""

    def __init__(self, large, small, elements=None):
        if large.p != small.p or large.t % small.t != 0:
            raise BasisException('{} is not a subfield of {}'.format(small.name, large.name))
        self.large = large
        self.small = small
        self.m = large.t // small.t

        # 子域生成元 alpha 在大域中的像：小域模多项式在大域中的最小根
        self.omega = self._embedding_root()
        small_ints = np.arange(small.order, dtype=np.int64)
        self._embed_table = self._embed_ints(small_ints)

        if elements is None:
            theta = large.generator
            elements = [theta ** i for i in range(self.m)]
        elements = large.array([int(x) for x in elements])
        if elements.size != self.m:
            raise BasisException('basis must have {} elements, got {}'.format(self.m, elements.size))
        self.elements = elements

        # GF(p) 上的坐标矩阵，行 (i, j) = vec(omega^j * b_i)
        powers = large.array([int(self.omega ** j) for j in range(small.t)])
        rows = (self.elements[:, None] * powers[None, :]).reshape(-1)
        self._matrix = rows.vector()
        if np.linalg.matrix_rank(self._matrix) != large.t:
            raise BasisException('elements {} are linearly dependent over {}'.format(
                [int(x) for x in self.elements], small.name))
        self._inverse = np.linalg.inv(self._matrix)

    def _embedding_root(self):
        if self.small.t == 1:
            return self.large.GF(1)
        lifted = galois.Poly([int(x) for x in self.small.modulus_poly.coeffs], field=self.large.GF)
        roots = sorted(int(r) for r in lifted.roots())
        if not roots:
            raise BasisException('modulus of {} has no root in {}'.format(self.small.name, self.large.name))
        return self.large.element(roots[0])

    def _embed_ints(self, values):
        vec = self.small.GF(values).vector()
        out = self.large.GF.Zeros(values.shape)
        for j in range(self.small.t):
            # vector() 降幂排列，第 j 次幂系数在 -1-j 列
            coef = self.large.GF(vec[..., -1 - j].view(np.ndarray))
            out = out + coef * (self.omega ** j)
        return out

    def embed(self, x):
        self.small.check_member(x)
        return self._embed_table[np.asarray(x.view(np.ndarray), dtype=np.int64)]

    def coordinates(self, x):
        """x 的坐标 (..., m)，满足 x = sum c_i b_i。"""
        self.large.check_member(x)
        vec = x.reshape(-1).vector()
        coords = vec @ self._inverse
        coords = coords.reshape(x.shape + (self.m, self.small.t))[..., ::-1]
        return self.small.GF.Vector(np.ascontiguousarray(coords.view(np.ndarray)))

    def recombine(self, coords):
        self.small.check_member(coords)
        embedded = self.embed(coords)
        return np.sum(embedded * self.elements, axis=-1)

    def describe(self):
        return {'large': self.large.describe(), 'small': self.small.describe(),
                'basis': [int(x) for x in self.elements]}


def subfield_coordinates(x, basis):
    return basis.coordinates(x)
