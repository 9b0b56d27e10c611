# -*- coding: utf-8 -*-
"""GF(q)[D] 上的多项式矩阵、校验矩阵分裂构造、约化基本性校验、编码与自由距离。"""
import heapq
import logging
from dataclasses import dataclass, field as dc_field, replace

import galois
import numpy as np

from . import consts as c
from .exceptions import ConvolutionalParamsException, SplitRankException
from .linear_code import matrix_rank, stack_rows

logger = logging.getLogger(__name__)


@dataclass
class Check:
    name: str
    status: str
    detail: str = ''

    def to_dict(self):
        return {'name': self.name, 'status': self.status, 'detail': self.detail}


class PolyMatrix(object):
    """系数按 D 的幂堆叠：coefficients[i] 是 D^i 的 k x n 系数矩阵。"""

    def __init__(self, field, coefficients):
        coefficients = field.array(coefficients)
        if coefficients.ndim != 3:
            raise ConvolutionalParamsException('coefficients must have shape (m+1, k, n)')
        # 去掉末尾的全零系数矩阵
        nonzero = [i for i in range(coefficients.shape[0]) if np.any(coefficients[i].view(np.ndarray))]
        top = nonzero[-1] + 1 if nonzero else 1
        self.field = field
        self.coefficients = coefficients[:top]

    @classmethod
    def from_entries(cls, field, entries):
        # entries[i][j] 为升幂系数表 [c_0, c_1, ...]
        rows, cols = len(entries), len(entries[0])
        depth = max(len(e) for row in entries for e in row) or 1
        data = np.zeros((depth, rows, cols), dtype=np.int64)
        for i, row in enumerate(entries):
            for j, e in enumerate(row):
                data[:len(e), i, j] = e
        return cls(field, field.GF(data))

    @property
    def rows(self):
        return self.coefficients.shape[1]

    @property
    def cols(self):
        return self.coefficients.shape[2]

    @property
    def degree(self):
        return self.coefficients.shape[0] - 1

    def row_degrees(self):
        nz = self.coefficients.view(np.ndarray) != 0
        degrees = []
        for i in range(self.rows):
            powers = np.nonzero(nz[:, i, :].any(axis=1))[0]
            degrees.append(int(powers[-1]) if powers.size else -1)
        return degrees

    def entry(self, i, j):
        return galois.Poly(self.coefficients[:, i, j], order="asc")

    def leading_coefficient_matrix(self):
        rows = [self.coefficients[max(d, 0), i] for i, d in enumerate(self.row_degrees())]
        return stack_rows(self.field, rows, self.cols)

    def describe(self):
        return [[[int(x) for x in self.coefficients[:, i, j].view(np.ndarray)] for j in range(self.cols)]
                for i in range(self.rows)]


@dataclass
class DistanceRecord:
    df_lower: int = 1
    df_upper: int = None
    df_exact: int = None
    provenance: dict = dc_field(default_factory=dict)

    def violations(self):
        problems = []
        if self.df_upper is not None and self.df_lower > self.df_upper:
            problems.append('df_lower {} > df_upper {}'.format(self.df_lower, self.df_upper))
        if self.df_exact is not None:
            if self.df_exact < self.df_lower:
                problems.append('df_exact {} < df_lower {}'.format(self.df_exact, self.df_lower))
            if self.df_upper is not None and self.df_exact > self.df_upper:
                problems.append('df_exact {} > df_upper {}'.format(self.df_exact, self.df_upper))
        return problems


class ConvolutionalCode(object):

    def __init__(self, generator, degree=None, memory=None, provenance=''):
        degrees = generator.row_degrees()
        if any(d < 0 for d in degrees):
            raise ConvolutionalParamsException('generator has a zero row')
        gamma, mem = sum(degrees), max(degrees) if degrees else 0
        if degree is not None and degree != gamma:
            raise ConvolutionalParamsException('stored degree {} != sum of row degrees {}'.format(degree, gamma))
        if memory is not None and memory != mem:
            raise ConvolutionalParamsException('stored memory {} != max row degree {}'.format(memory, mem))
        self.generator = generator
        self.field = generator.field
        self.degree = gamma
        self.memory = mem
        self.provenance = provenance
        self.distance = DistanceRecord(df_upper=generalized_singleton(self.n, self.k, gamma),
                                       provenance={'df_lower': 'weight positivity',
                                                   'df_upper': 'generalized Singleton bound'})

    @property
    def n(self):
        return self.generator.cols

    @property
    def k(self):
        return self.generator.rows

    @property
    def q(self):
        return self.field.order

    def params(self):
        return self.n, self.k, self.degree, self.memory

    def update_distance(self, record):
        problems = record.violations()
        if problems:
            logger.error(f"{self!r}: 距离记录不一致: {'; '.join(problems)}")
        self.distance = record
        return problems

    def __repr__(self):
        return '({}, {}, {}; {}, df>={})_{}'.format(self.n, self.k, self.degree, self.memory,
                                                   self.distance.df_lower, self.q)


@dataclass(frozen=True)
class SplitSpec:
    field: object
    H: object
    counts: tuple

    def __post_init__(self):
        counts = tuple(int(x) for x in self.counts)
        object.__setattr__(self, 'counts', counts)
        if not counts or any(x < 0 for x in counts):
            raise ConvolutionalParamsException('invalid partition {}'.format(counts))
        if sum(counts) != self.H.shape[0]:
            raise ConvolutionalParamsException('partition {} does not cover {} rows'.format(counts, self.H.shape[0]))
        if counts[0] < 1 or counts[0] != max(counts):
            raise ConvolutionalParamsException('kappa = rows(H_0) must be the largest count, got {}'.format(counts))

    @property
    def kappa(self):
        return self.counts[0]

    def blocks(self):
        edges = np.cumsum((0,) + self.counts)
        return [self.H[edges[i]:edges[i + 1]] for i in range(len(self.counts))]


def tail_split(field, H, l):
    """单位记忆分裂：前 k-l 行为 H_0，后 l 行补零成 H~_1。"""
    k = H.shape[0]
    if not 1 <= l <= k / 2:
        raise ConvolutionalParamsException('need 1 <= l <= k/2, got l={}, k={}'.format(l, k))
    return SplitSpec(field, H, (k - l, l))


def verify_rank_conditions(spec):
    checks = []
    blocks = spec.blocks()
    r0 = matrix_rank(blocks[0])
    checks.append(Check('rank(H_0) = kappa', c.PASS if r0 == spec.kappa else c.FAIL,
                        'rank {} vs kappa {}'.format(r0, spec.kappa)))
    for i, block in enumerate(blocks[1:], start=1):
        ri = matrix_rank(block)
        checks.append(Check('rank(H_{}) <= kappa'.format(i), c.PASS if ri <= spec.kappa else c.FAIL,
                            'rank {} vs kappa {}'.format(ri, spec.kappa)))
    return checks


def split_construction(spec, provenance=''):
    for check in verify_rank_conditions(spec):
        if check.status == c.FAIL:
            condition = 'rank(H_0)' if check.name.startswith('rank(H_0)') else 'rank(H_i)'
            logger.warning(f"分裂构造被拒绝: {check.name} 不成立 ({check.detail})")
            raise SplitRankException(condition, '{} violated: {}'.format(check.name, check.detail))
    n, kappa = spec.H.shape[1], spec.kappa
    padded = []
    for block in spec.blocks():
        # H_i 底部补零行到 kappa 行
        pad = spec.field.GF.Zeros((kappa - block.shape[0], n))
        padded.append(stack_rows(spec.field, [block, pad], n).view(np.ndarray))
    coefficients = spec.field.GF(np.stack(padded))
    code = ConvolutionalCode(PolyMatrix(spec.field, coefficients), provenance=provenance)
    logger.info(f"分裂构造完成: partition={spec.counts}, 得到 {code!r}")
    return code


def _minor_gcd(matrix):
    """列初等变换（Euclid 消元）化为 [L | 0]，k 阶子式的 gcd 即 L 的行列式。"""
    field = matrix.field
    k, n = matrix.rows, matrix.cols
    M = [[matrix.entry(i, j) for j in range(n)] for i in range(k)]
    zero = galois.Poly.Zero(field.GF)

    def is_zero(p):
        return not np.any(p.coeffs.view(np.ndarray))

    det = galois.Poly.One(field.GF)
    for i in range(k):
        while True:
            live = [j for j in range(i, n) if not is_zero(M[i][j])]
            if not live:
                return zero
            pivot = min(live, key=lambda j: M[i][j].degree)
            for row in M:
                row[i], row[pivot] = row[pivot], row[i]
            finished = True
            for j in range(i + 1, n):
                if is_zero(M[i][j]):
                    continue
                quotient = M[i][j] // M[i][i]
                for row in M:
                    row[j] = row[j] - quotient * row[i]
                if not is_zero(M[i][j]):
                    finished = False
            if finished:
                break
        det = det * M[i][i]
    return det


def verify_reduced_basic(code, minor_limit=c.DEFAULT_SETTINGS['budgets']['minor_gcd_entries']):
    G = code.generator
    k, n = code.k, code.n
    checks = []

    lead = G.leading_coefficient_matrix()
    lead_rank = matrix_rank(lead)
    checks.append(Check('reduced', c.PASS if lead_rank == k else c.FAIL,
                        'leading-coefficient matrix rank {} of {}'.format(lead_rank, k)))

    # 先找常数右逆：G_0 R = I，G_i R = 0 (i >= 1)
    blocks = [G.coefficients[i] for i in range(G.degree + 1)]
    S = stack_rows(code.field, blocks, n)
    E = stack_rows(code.field, [code.field.GF.Identity(k)] + [code.field.GF.Zeros((k, k))] * G.degree, k)
    augmented = code.field.GF(np.hstack([S.view(np.ndarray), E.view(np.ndarray)]))
    if matrix_rank(S) == matrix_rank(augmented):
        checks.append(Check('basic', c.PASS, 'constant polynomial right inverse exists'))
        return checks

    if k * n > minor_limit:
        checks.append(Check('basic', c.INFEASIBLE,
                            'no constant right inverse; minor gcd on {}x{} exceeds {} entries'.format(k, n, minor_limit)))
        return checks
    gcd = _minor_gcd(G)
    unit = gcd.degree == 0 and np.any(gcd.coeffs.view(np.ndarray))
    checks.append(Check('basic', c.PASS if unit else c.FAIL, 'gcd of {}x{} minors = {}'.format(k, k, gcd)))
    return checks


def poly_vector(field, polys):
    """多项式列表 -> 系数堆叠 (deg+1, len)。"""
    polys = [p if isinstance(p, galois.Poly) else galois.Poly(p, field=field.GF, order="asc") for p in polys]
    depth = max(p.degree for p in polys) + 1
    data = np.zeros((depth, len(polys)), dtype=np.int64)
    for j, p in enumerate(polys):
        coeffs = p.coeffs[::-1].view(np.ndarray)
        data[:coeffs.size, j] = coeffs
    return field.GF(data)


def encode(code, message):
    message = code.field.array(message)
    if message.ndim == 1:
        message = message.reshape(1, -1)
    if message.shape[1] != code.k:
        raise ConvolutionalParamsException('message has {} components, code dimension is {}'.format(
            message.shape[1], code.k))
    length = message.shape[0]
    out = code.field.GF.Zeros((length + code.memory, code.n))
    for i in range(code.memory + 1):
        out[i:i + length] += message @ code.generator.coefficients[i]
    return out


def weight(vector):
    return int(np.count_nonzero(vector.view(np.ndarray)))


def generalized_singleton(n, k, gamma):
    if k < 1:
        raise ConvolutionalParamsException('generalized Singleton bound needs k >= 1')
    return (n - k) * (gamma // k + 1) + gamma + 1


def defect_label(defect):
    return c.DEFECT_CLASSES.get(defect, 'defect-{}'.format(defect))


def classify_defect(bound, df_lower, df_upper=None):
    """给定 d_f 的值或区间，返回缺陷区间与分类。"""
    df_upper = df_lower if df_upper is None else df_upper
    low, high = bound - df_upper, bound - df_lower
    labels = [defect_label(d) for d in range(max(low, 0), high + 1)] if high - low <= 3 else \
        [defect_label(max(low, 0)), '...', defect_label(high)]
    return {'bound': bound, 'interval': [low, high], 'class': labels[0] if low == high else labels}


def free_distance_bounds(code, classical_distance=None, provenance='designed distance of the classical code'):
    record = replace(code.distance, provenance=dict(code.distance.provenance))
    record.df_upper = generalized_singleton(code.n, code.k, code.degree)
    record.provenance['df_upper'] = 'generalized Singleton bound'
    if classical_distance:
        record.df_lower = int(classical_distance)
        record.provenance['df_lower'] = provenance
    else:
        record.df_lower = 1
        record.provenance['df_lower'] = 'weight positivity'
    return record


@dataclass
class FreeDistanceResult:
    status: str
    distance: int = None
    detail: str = ''


def _check_budget(*budgets):
    for budget in budgets:
        if budget > c.MAX_ENUM_BUDGET:
            raise ConvolutionalParamsException('enumeration budget {} exceeds {}'.format(budget, c.MAX_ENUM_BUDGET))


def _vectors(field, length):
    q = field.order
    idx = np.arange(q ** length, dtype=np.int64)
    powers = q ** np.arange(length - 1, -1, -1, dtype=np.int64)
    return field.GF((idx[:, None] // powers[None, :]) % q)


def _coset_min(base, words):
    # 对每个 base 行，求 min_f wt(base + f B)
    per_row = max(1, c.COSET_CHUNK_ELEMENTS // max(1, words.shape[0] * words.shape[1]))
    out = np.empty(base.shape[0], dtype=np.int64)
    for lo in range(0, base.shape[0], per_row):
        block = base[lo:lo + per_row, None, :] + words[None, :, :]
        out[lo:lo + per_row] = np.count_nonzero(block.view(np.ndarray), axis=2).min(axis=1)
    return out


def _unit_memory_parts(code):
    if code.memory > 1:
        raise ConvolutionalParamsException('state-graph search needs memory <= 1, got {}'.format(code.memory))
    coefs = code.generator.coefficients
    G0 = coefs[0]
    G1 = coefs[1] if code.memory == 1 else code.field.GF.Zeros(G0.shape)
    nz = np.any(G1.view(np.ndarray) != 0, axis=1)
    state_rows = np.nonzero(nz)[0]
    free_rows = np.nonzero(~nz)[0]
    return G0[state_rows], G0[free_rows], G1[state_rows]


def free_distance_exact(code, max_states=c.DEFAULT_SETTINGS['budgets']['max_states'],
                        max_coset_enum=c.DEFAULT_SETTINGS['budgets']['max_coset_enum']):
    """状态图最短非零回路：状态为上一时刻进入 D 项的前 l 个输入符号。"""
    _check_budget(max_states, max_coset_enum)
    A, B, C = _unit_memory_parts(code)
    q, l, free = code.q, A.shape[0], B.shape[0]
    if q ** l > max_states or q ** free > max_coset_enum:
        detail = 'states q^l = {}^{}, coset enumeration q^{} per edge; limits {} / {}'.format(
            q, l, free, max_states, max_coset_enum)
        logger.warning(f"{code!r}: 精确自由距离不可行 ({detail})")
        return FreeDistanceResult(c.INFEASIBLE, detail=detail)

    n = code.n
    if free:
        words = _vectors(code.field, free) @ B
    else:
        words = code.field.GF.Zeros((1, n))
    # 只走一步：状态保持为零、自由符号非零
    best = int(np.count_nonzero(words[1:].view(np.ndarray), axis=1).min()) if free else np.iinfo(np.int64).max
    if l == 0:
        return FreeDistanceResult(c.EXACT, best, 'block code, no state memory')

    states = _vectors(code.field, l)
    SA, SC = states @ A, states @ C
    total = q ** l

    def edge_weights(s):
        return _coset_min(SA + SC[s], words)

    inf = np.iinfo(np.int64).max
    dist = np.full(total, inf, dtype=np.int64)
    dist[1:] = edge_weights(0)[1:]
    done = np.zeros(total, dtype=bool)
    heap = [(int(dist[s]), s) for s in range(1, total)]
    heapq.heapify(heap)
    expanded = 0
    while heap:
        d, s = heapq.heappop(heap)
        if done[s] or d > dist[s]:
            continue
        if d >= best:
            break
        done[s] = True
        expanded += 1
        w = edge_weights(s)
        # 回到零状态（含零输入冲洗）
        best = min(best, d + int(w[0]))
        cand = d + w
        better = np.nonzero((cand < dist) & ~done)[0]
        for s2 in better:
            if s2 == 0:
                continue
            dist[s2] = cand[s2]
            heapq.heappush(heap, (int(cand[s2]), int(s2)))
    return FreeDistanceResult(c.EXACT, int(best), 'label-setting search over {} states, {} expanded'.format(
        total, expanded))


def record_exact(record, result):
    record = replace(record, provenance=dict(record.provenance))
    if result.status == c.EXACT:
        record.df_exact = result.distance
        record.provenance['df_exact'] = 'state-graph search'
    return record


def free_distance_truncated(code, max_degree=3, budget=c.DEFAULT_SETTINGS['budgets']['truncated_enum']):
    """枚举 deg u <= D 的全部输入，取最小码字重量：d_f 的上界。返回 (上界, 使用的 D)。"""
    _check_budget(budget)
    q, k = code.q, code.k
    degree = -1
    for D in range(max_degree + 1):
        if q ** (k * (D + 1)) <= budget:
            degree = D
    if degree < 0:
        return None, -1
    width = k * (degree + 1)
    total = q ** width
    best = None
    powers = q ** np.arange(width - 1, -1, -1, dtype=np.int64)
    for lo in range(1, total, c.ENUM_CHUNK):
        idx = np.arange(lo, min(total, lo + c.ENUM_CHUNK), dtype=np.int64)
        U = code.field.GF((idx[:, None] // powers[None, :]) % q)
        U = U.reshape(-1, degree + 1, k)
        rows = U.shape[0]
        out = np.zeros((rows, degree + 1 + code.memory, code.n), dtype=np.int64)
        words = code.field.GF(out)
        flat = U.reshape(-1, k)
        for i in range(code.memory + 1):
            part = (flat @ code.generator.coefficients[i]).reshape(rows, degree + 1, code.n)
            words[:, i:i + degree + 1, :] += part
        low = int(np.count_nonzero(words.view(np.ndarray), axis=(1, 2)).min())
        best = low if best is None else min(best, low)
    return best, degree


def dump_poly_matrix(matrix):
    lines = ['{} {} {} {}'.format(matrix.field.order, matrix.cols, matrix.rows, matrix.degree)]
    for row in matrix.describe():
        lines.append(' '.join('[' + ','.join(str(x) for x in entry) + ']' for entry in row))
    return '\n'.join(lines) + '\n'
