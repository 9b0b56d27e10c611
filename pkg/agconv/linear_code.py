# -*- coding: utf-8 -*-
"""有限域上的线性分组码：秩、对偶、穷举最小距离，以及 puncture / extend / expand / product 四个组合子。"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import consts as c
from .exceptions import CodeParamsException, FieldMismatchException, MatrixFormatException
from .finite_field import field_for_order

logger = logging.getLogger(__name__)


def matrix_rank(matrix):
    if matrix.shape[0] == 0 or matrix.shape[1] == 0:
        return 0
    return int(np.linalg.matrix_rank(matrix))


def stack_rows(field, blocks, width):
    # 在整数表示下拼接再转回域数组，避免依赖 galois 对 vstack 的重载
    parts = [np.asarray(b.view(np.ndarray), dtype=np.int64).reshape(-1, width) for b in blocks]
    if not parts:
        return field.GF.Zeros((0, width))
    return field.GF(np.vstack(parts))


@dataclass
class MinWeightReport:
    status: str
    distance: int = None
    count: int = 0
    support: tuple = ()
    bound: int = None
    enumerated: int = 0

    @property
    def exact(self):
        return self.status == c.EXACT


class LinearCode(object):

    def __init__(self, field, generator, d_designed=None, d_exact=None, provenance=''):
        generator = field.array(generator)
        if generator.ndim != 2:
            raise CodeParamsException('generator must be a 2-d matrix, got shape {}'.format(generator.shape))
        if generator.shape[1] == 0:
            raise CodeParamsException('empty generator matrix')
        rank = matrix_rank(generator)
        if rank != generator.shape[0]:
            raise CodeParamsException('generator has {} rows but rank {}'.format(generator.shape[0], rank))
        if d_designed is not None and d_exact is not None and d_exact < d_designed:
            raise CodeParamsException('exact distance {} below designed {}'.format(d_exact, d_designed))
        self.field = field
        self.generator = generator
        self.d_designed = d_designed
        self.d_exact = d_exact
        self.provenance = provenance

    @property
    def n(self):
        return self.generator.shape[1]

    @property
    def k(self):
        return self.generator.shape[0]

    @property
    def q(self):
        return self.field.order

    @property
    def distance_bound(self):
        return self.d_exact if self.d_exact is not None else self.d_designed

    def params(self):
        return self.n, self.k, self.distance_bound

    def encode(self, message):
        message = self.field.array(message)
        if message.shape[-1] != self.k:
            raise CodeParamsException('message length {} != k = {}'.format(message.shape[-1], self.k))
        return message @ self.generator

    def with_exact_distance(self, report):
        """记录穷举结果；设计距离若被穷举值否定则丢弃。"""
        if not report.exact:
            return self
        designed = self.d_designed
        if designed is not None and report.distance < designed:
            logger.warning(f"{self.provenance}: 穷举距离 {report.distance} 小于设计距离 {designed}，设计界不适用")
            designed = None
        return LinearCode(self.field, self.generator, designed, report.distance, self.provenance)

    def __repr__(self):
        return 'LinearCode[{}, {}, {}]_{}'.format(self.n, self.k, self.distance_bound, self.q)


def code_from_generator(field, matrix, d_designed=None, provenance=''):
    matrix = field.array(matrix)
    if matrix.size == 0 or matrix.ndim != 2:
        raise CodeParamsException('empty matrix')
    reduced = matrix.row_reduce()
    keep = np.any(reduced.view(np.ndarray) != 0, axis=1)
    return LinearCode(field, reduced[keep], d_designed=d_designed, provenance=provenance)


def same_row_space(left, right):
    if left.field != right.field or left.n != right.n or left.k != right.k:
        return False
    both = stack_rows(left.field, [left.generator, right.generator], left.n)
    return matrix_rank(both) == left.k


def dual(code):
    n, k = code.n, code.k
    if k == 0:
        return LinearCode(code.field, code.field.GF.Identity(n), provenance='dual({})'.format(code.provenance))
    if k == n:
        return LinearCode(code.field, code.field.GF.Zeros((0, n)), provenance='dual({})'.format(code.provenance))
    generator = code.generator.null_space()
    return LinearCode(code.field, generator, provenance='dual({})'.format(code.provenance))


def _message_block(field, k, start, stop):
    q = field.order
    idx = np.arange(start, stop, dtype=np.int64)
    powers = q ** np.arange(k - 1, -1, -1, dtype=np.int64)
    # 字典序：第一个信息符号为最高位
    digits = (idx[:, None] // powers[None, :]) % q
    return field.GF(digits)


def _enumerate_range(code, start, stop):
    best, count = None, 0
    support = np.zeros(code.n, dtype=bool)
    for lo in range(start, stop, c.ENUM_CHUNK):
        hi = min(stop, lo + c.ENUM_CHUNK)
        words = (_message_block(code.field, code.k, lo, hi) @ code.generator).view(np.ndarray) != 0
        weights = words.sum(axis=1)
        if lo == 0:
            # 跳过零信息向量
            words, weights = words[1:], weights[1:]
        if weights.size == 0:
            continue
        low = int(weights.min())
        if best is None or low < best:
            best, count = low, 0
            support[:] = False
        if low == best:
            hit = weights == best
            count += int(hit.sum())
            support |= words[hit].any(axis=0)
    return best, count, support


def _merge(parts, n):
    best, count = None, 0
    support = np.zeros(n, dtype=bool)
    for d, cnt, sup in parts:
        if d is None:
            continue
        if best is None or d < best:
            best, count, support = d, cnt, sup.copy()
        elif d == best:
            count += cnt
            support |= sup
    return best, count, support


def min_distance_exact(code, budget=c.DEFAULT_SETTINGS['budgets']['classical_enum'], workers=1):
    if code.k == 0:
        raise CodeParamsException('the zero code has no nonzero codeword')
    if budget > c.MAX_ENUM_BUDGET:
        raise CodeParamsException('enumeration budget {} exceeds {}'.format(budget, c.MAX_ENUM_BUDGET))
    total = code.q ** code.k
    if total > budget:
        logger.warning(f"{code!r}: 需要枚举 {total} 个码字，超出预算 {budget}")
        status = c.BOUND_ONLY if code.d_designed is not None else c.INFEASIBLE
        return MinWeightReport(status=status, bound=code.d_designed)

    # 按信息向量区间切分，合并规则：最小值取最小，计数相加，支撑取或
    workers = max(1, min(int(workers), total))
    edges = [total * i // workers for i in range(workers + 1)]
    ranges = [(edges[i], edges[i + 1]) for i in range(workers) if edges[i] < edges[i + 1]]
    if len(ranges) == 1:
        parts = [_enumerate_range(code, *ranges[0])]
    else:
        with ThreadPoolExecutor(max_workers=len(ranges)) as pool:
            parts = list(pool.map(lambda r: _enumerate_range(code, *r), ranges))
    best, count, support = _merge(parts, code.n)
    return MinWeightReport(status=c.EXACT, distance=best, count=count,
                           support=tuple(bool(x) for x in support), bound=best, enumerated=total - 1)


def distance_record(code, budget, workers=1):
    report = min_distance_exact(code, budget, workers)
    return code.with_exact_distance(report), report


def puncture_hypothesis(code, j, budget=c.DEFAULT_SETTINGS['budgets']['classical_enum'], report=None):
    """True: 没有最小重量码字在第 j 位非零；False: 存在；None: 无法穷举。"""
    report = report or min_distance_exact(code, budget)
    if not report.exact:
        return None
    return not report.support[j]


def puncture(code, j):
    if not 0 <= j < code.n:
        raise CodeParamsException('coordinate {} outside 0..{}'.format(j, code.n - 1))
    if code.n == 1:
        raise CodeParamsException('cannot puncture a length-1 code')
    kept = np.delete(code.generator.view(np.ndarray), j, axis=1)
    matrix = code.field.GF(kept)
    provenance = 'puncture({}, {})'.format(code.provenance, j)
    designed = None if code.d_designed is None else max(code.d_designed - 1, 1)
    if matrix_rank(matrix) < code.k:
        return code_from_generator(code.field, matrix, designed, provenance)
    return LinearCode(code.field, matrix, designed, provenance=provenance)


def extend(code):
    # 整体奇偶校验位：追加一列，等于已有坐标之和的相反数
    parity = -np.sum(code.generator, axis=1)
    matrix = np.hstack([code.generator.view(np.ndarray), parity.view(np.ndarray).reshape(-1, 1)])
    return LinearCode(code.field, code.field.GF(matrix), code.d_designed,
                      provenance='extend({})'.format(code.provenance))


def expand_word(word, basis):
    coords = basis.coordinates(word)
    return coords.reshape(coords.shape[:-2] + (-1,))


def expand(code, basis):
    if code.field != basis.large:
        raise FieldMismatchException(code.field.name, basis.large.name)
    # 每一行 g 与每个基元 b_i 生成 b_i * g 的展开
    scaled = basis.elements[None, :, None] * code.generator[:, None, :]
    rows = expand_word(scaled.reshape(-1, code.n), basis)
    return LinearCode(basis.small, rows, code.d_designed,
                      provenance='expand({}, {}->{})'.format(code.provenance, basis.large.name, basis.small.name))


def product(left, right):
    if left.field != right.field:
        raise FieldMismatchException(left.field.name, right.field.name)
    # Kronecker 积：行 (r1, r2)，列 (c1, c2)，按域乘法计算
    blocks = left.generator[:, None, :, None] * right.generator[None, :, None, :]
    matrix = blocks.reshape(left.k * right.k, left.n * right.n)
    designed = None
    if left.d_designed is not None and right.d_designed is not None:
        designed = left.d_designed * right.d_designed
    return LinearCode(left.field, matrix, designed,
                      provenance='product({}, {})'.format(left.provenance, right.provenance))


def dump_matrix(code):
    lines = ['{} {} {}'.format(code.q, code.n, code.k)]
    for row in code.generator.view(np.ndarray):
        lines.append(' '.join(str(int(x)) for x in row))
    return '\n'.join(lines) + '\n'


def load_matrix(text, d_designed=None):
    lines = [line.split() for line in text.strip().splitlines() if line.strip()]
    if not lines or len(lines[0]) != 3:
        raise MatrixFormatException('missing "q n k" header')
    q, n, k = (int(x) for x in lines[0])
    rows = lines[1:]
    if len(rows) != k or any(len(r) != n for r in rows):
        raise MatrixFormatException('expected {} rows of {} entries'.format(k, n))
    field = field_for_order(q)
    matrix = np.array([[int(x) for x in r] for r in rows], dtype=np.int64).reshape(k, n)
    if matrix.size and (matrix.min() < 0 or matrix.max() >= q):
        raise MatrixFormatException('entries must lie in 0..{}'.format(q - 1))
    return LinearCode(field, field.GF(matrix), d_designed, provenance='load')
