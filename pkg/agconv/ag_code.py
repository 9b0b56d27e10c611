# -*- coding: utf-8 -*-
"""单点 AG 码 C_L(D, m P_inf)，三种函数域：

- rational: 有理函数域 GF(q)(z)，亏格 0；
- curveA:   y^2 + y = x^(q+1)，定义在 GF(q^2) 上，q = 2^t，亏格 q/2；
- curveB:   y^q + y = x^3，定义在 GF(q^2) 上，q = 2^t 且 t 为奇数，亏格 q-1。

两条曲线在 GF(q^2) 上都是极大曲线。C_Omega 只通过对偶 C_L^perp 得到。
"""
import functools
import logging
import math
from collections import namedtuple

import galois
import numpy as np

from . import consts as c
from .exceptions import CurveException
from .finite_field import field_for_order
from .linear_code import LinearCode, dual, matrix_rank

logger = logging.getLogger(__name__)

RationalPlace = namedtuple('RationalPlace', ['x', 'y'])
Monomial = namedtuple('Monomial', ['i', 'j', 'pole_order'])

# 无穷远点 P_inf，只出现在 G 的支撑中
INFINITY = RationalPlace(None, None)


def _power_of_two(q):
    t = int(q).bit_length() - 1
    return t if q >= 2 and 2 ** t == q else None


class OnePointCurve(object):

    def __init__(self, kind, q):
        q = int(q)
        if kind not in c.CURVE_KINDS:
            raise CurveException('unknown curve kind {}'.format(kind))
        if not galois.is_prime_power(q):
            raise CurveException('q = {} is not a prime power'.format(q))
        self.kind = kind
        self.q = q

        if kind == c.RATIONAL:
            self.field = field_for_order(q)
            self.genus = 0
            self.pole_orders = (1,)
            self.n_affine_expected = q
        else:
            t = _power_of_two(q)
            if t is None:
                raise CurveException('{} requires q = 2^t, got {}'.format(kind, q))
            if kind == c.CURVE_B and t % 2 == 0:
                raise CurveException('curveB requires q = 2^t with t odd, got t = {}'.format(t))
            self.field = field_for_order(q * q)
            if kind == c.CURVE_A:
                self.genus = q // 2
                self.pole_orders = (2, q + 1)
                self.n_affine_expected = 2 * q * q
            else:
                self.genus = q - 1
                self.pole_orders = (q, 3)
                self.n_affine_expected = 3 * q * q - 2 * q

        gaps = self.gaps()
        if len(gaps) != self.genus:
            raise CurveException('pole orders {} give {} gaps, genus is {}'.format(
                self.pole_orders, len(gaps), self.genus))

    @property
    def field_order(self):
        return self.field.order

    def in_semigroup(self, value):
        if len(self.pole_orders) == 1:
            return value >= 0
        a, b = self.pole_orders
        return any((value - j * b) % a == 0 for j in range(0, value // b + 1))

    def gaps(self):
        # Weierstrass 缺口全部落在 [1, 2g-1]
        return [v for v in range(1, 2 * self.genus) if not self.in_semigroup(v)]

    def lhs(self, y):
        if self.kind == c.CURVE_A:
            return y * y + y
        return y ** self.q + y

    def rhs(self, x):
        if self.kind == c.CURVE_A:
            return x ** (self.q + 1)
        return x ** 3

    def on_curve(self, place):
        if self.kind == c.RATIONAL:
            return place.y is None and 0 <= place.x < self.q
        x, y = self.field.element(place.x), self.field.element(place.y)
        return bool(self.lhs(y) == self.rhs(x))

    def scan_places(self, x_values=None):
        """穷举 x 取值区间内的仿射有理点，按 (x, y) 规范序排列。"""
        if self.kind == c.RATIONAL:
            return [RationalPlace(int(b), None) for b in self.field.elements()]
        elements = self.field.elements()
        xs = elements if x_values is None else self.field.array(x_values)
        # 对每个 y 预先算出 lhs(y)，按取值分组
        by_value = {}
        for b, value in zip(elements.view(np.ndarray), self.lhs(elements).view(np.ndarray)):
            by_value.setdefault(int(value), []).append(int(b))
        places = []
        for a, value in zip(xs.view(np.ndarray), self.rhs(xs).view(np.ndarray)):
            for b in by_value.get(int(value), ()):
                places.append(RationalPlace(int(a), b))
        return places

    @functools.cached_property
    def places(self):
        places = self.scan_places()
        if len(places) != self.n_affine_expected:
            raise CurveException('{} q={}: found {} affine places, expected {}'.format(
                self.kind, self.q, len(places), self.n_affine_expected))
        logger.info(f"{self.kind} q={self.q}: 在 {self.field.name} 上找到 {len(places)} 个仿射有理点")
        return tuple(places)

    @property
    def n_affine(self):
        return len(self.places)

    def place_index(self, place):
        return self._index[place]

    @functools.cached_property
    def _index(self):
        return {p: i for i, p in enumerate(self.places)}

    def hasse_weil_bound(self):
        size = self.field_order
        root = math.isqrt(size)
        if root * root == size:
            return size + 1 + 2 * self.genus * root
        return size + 1 + math.floor(2 * self.genus * math.sqrt(size))

    def is_maximal(self):
        return self.n_affine + 1 == self.hasse_weil_bound()

    def describe(self):
        return {
            'kind': self.kind,
            'q': self.q,
            'field_order': self.field_order,
            'genus': self.genus,
            'n_affine': self.n_affine_expected,
            'pole_orders': list(self.pole_orders),
        }

    def __repr__(self):
        return 'OnePointCurve({}, q={}, g={})'.format(self.kind, self.q, self.genus)


def curve_create(kind, q):
    return _cached_curve(kind, int(q))


@functools.lru_cache(maxsize=None)
def _cached_curve(kind, q):
    return OnePointCurve(kind, q)


def rational_places(curve):
    return list(curve.places)


def rr_basis(curve, m):
    """L(m P_inf) 的单项式基，按极点阶升序。"""
    if m < 0:
        return []
    if curve.kind == c.RATIONAL:
        return [Monomial(i, 0, i) for i in range(m + 1)]
    ord_x, ord_y = curve.pole_orders
    # y 的次数受曲线方程限制：curveA 只到 1，curveB 到 q-1
    j_max = 1 if curve.kind == c.CURVE_A else curve.q - 1
    basis = []
    for j in range(j_max + 1):
        rest = m - j * ord_y
        if rest < 0:
            break
        for i in range(rest // ord_x + 1):
            basis.append(Monomial(i, j, i * ord_x + j * ord_y))
    basis.sort(key=lambda mono: mono.pole_order)
    orders = [mono.pole_order for mono in basis]
    if len(set(orders)) != len(orders):
        raise CurveException('repeated pole orders in basis of L({} P_inf)'.format(m))
    return basis


def _check_places(curve, places):
    if places is None:
        return list(curve.places)
    places = [RationalPlace(*p) for p in places]
    if INFINITY in places:
        raise CurveException('P_inf lies in supp(G) and cannot be an evaluation place')
    if len(set(places)) != len(places):
        raise CurveException('evaluation places must be pairwise distinct')
    index = curve._index
    for p in places:
        if p not in index:
            raise CurveException('{} is not a rational place of {!r}'.format(tuple(p), curve))
    return places


def _powers(field, values, basis, attr):
    top = max((getattr(mono, attr) for mono in basis), default=0)
    pows = [field.GF.Ones(values.size)]
    for _ in range(top):
        pows.append(pows[-1] * values)
    return pows


def evaluate(curve, basis, places):
    field = curve.field
    xs = field.array([p.x for p in places])
    ys = field.array([p.y if p.y is not None else 0 for p in places])
    # x^i、y^j 由逐次相乘得到
    x_pows, y_pows = _powers(field, xs, basis, 'i'), _powers(field, ys, basis, 'j')
    rows = []
    for mono in basis:
        rows.append((x_pows[mono.i] * y_pows[mono.j]).view(np.ndarray))
    return field.GF(np.array(rows, dtype=np.int64).reshape(len(basis), len(places)))


def cl_code(curve, m, places=None):
    places = _check_places(curve, places)
    n, g = len(places), curve.genus
    if not 2 * g - 2 < m < n:
        raise CurveException('need 2g-2 < m < n, got g={}, m={}, n={}'.format(g, m, n))
    basis = rr_basis(curve, m)
    k = m + 1 - g
    if len(basis) != k:
        raise CurveException('L({} P_inf) has {} monomials, Riemann-Roch gives {}'.format(m, len(basis), k))
    generator = evaluate(curve, basis, places)
    if matrix_rank(generator) != k:
        raise CurveException('evaluation matrix of L({} P_inf) is not of full rank {}'.format(m, k))
    return LinearCode(curve.field, generator, d_designed=n - m,
                      provenance='C_L({}, q={}, m={}, n={})'.format(curve.kind, curve.q, m, n))


def comega_code(curve, m, places=None):
    code = cl_code(curve, m, places)
    result = dual(code)
    g = curve.genus
    expected = code.n + g - 1 - m
    if result.k != expected:
        raise CurveException('dual has dimension {}, expected n+g-1-m = {}'.format(result.k, expected))
    return LinearCode(result.field, result.generator, d_designed=m - (2 * g - 2),
                      provenance='C_Omega({}, q={}, m={}, n={})'.format(curve.kind, curve.q, m, code.n))
