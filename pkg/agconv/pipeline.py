# -*- coding: utf-8 -*-
"""代码族实例化、单位记忆拆分、组合子派生构造，以及表 1 / 表 2 的复现报告。"""
import csv
import datetime
import io
import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field

import galois

from . import consts as c
from .ag_code import cl_code, curve_create
from .convolutional import (Check, classify_defect, free_distance_bounds, free_distance_exact,
                            free_distance_truncated, generalized_singleton, record_exact,
                            split_construction, tail_split, verify_rank_conditions,
                            verify_reduced_basic)
from .exceptions import FamilyParamsException, SplitRankException
from .finite_field import SubfieldBasis, field_for_order, order_parts
from .linear_code import (LinearCode, expand, extend, min_distance_exact, product, puncture,
                          puncture_hypothesis)
from .utils import DEFAULT

logger = logging.getLogger(__name__)


@dataclass
class ConstructionReport:
    family: str
    q: int
    field_order: int
    inputs: dict
    curve: dict = dc_field(default_factory=dict)
    classical: dict = dc_field(default_factory=dict)
    conv: dict = dc_field(default_factory=dict)
    singleton_bound: int = None
    defect: dict = dc_field(default_factory=dict)
    checks: list = dc_field(default_factory=list)
    discrepancies: list = dc_field(default_factory=list)
    notes: list = dc_field(default_factory=list)
    timestamp: str = dc_field(default_factory=lambda: datetime.datetime.now().isoformat(timespec='seconds'))

    @property
    def failed(self):
        return [ch for ch in self.checks if ch.status == c.FAIL]

    def conv_tuple(self):
        return self.conv['n'], self.conv['k'], self.conv['gamma'], self.conv['memory']

    def to_dict(self, include_timestamp=False):
        data = {
            'family': self.family,
            'q': self.q,
            'field_order': self.field_order,
            'inputs': dict(self.inputs),
            'curve': dict(self.curve),
            'classical': dict(self.classical),
            'conv': dict(self.conv),
            'singleton_bound': self.singleton_bound,
            'defect': dict(self.defect),
            'checks': [ch.to_dict() for ch in self.checks],
            'discrepancies': list(self.discrepancies),
            'notes': list(self.notes),
        }
        if include_timestamp:
            data['timestamp'] = self.timestamp
        return data

    def csv_row(self):
        return {
            'family': self.family,
            'q': self.q,
            'field_order': self.field_order,
            'inputs': json.dumps(self.inputs, sort_keys=True),
            'classical_n': self.classical.get('n'),
            'classical_k': self.classical.get('k'),
            'classical_d_designed': self.classical.get('d_designed'),
            'classical_d_exact': self.classical.get('d_exact'),
            'conv_n': self.conv.get('n'),
            'conv_k': self.conv.get('k'),
            'conv_gamma': self.conv.get('gamma'),
            'conv_memory': self.conv.get('memory'),
            'conv_df_lower': self.conv.get('df_lower'),
            'conv_df_upper': self.conv.get('df_upper'),
            'conv_df_exact': self.conv.get('df_exact'),
            'singleton_bound': self.singleton_bound,
            'defect': json.dumps(self.defect, sort_keys=True),
            'checks': ';'.join('{}={}'.format(ch.name, ch.status) for ch in self.checks),
            'discrepancies': ' | '.join(self.discrepancies),
            'notes': ' | '.join(self.notes),
        }


def reports_to_json(reports, include_timestamp=False):
    data = [r.to_dict(include_timestamp) for r in reports]
    return json.dumps(data[0] if len(data) == 1 else data, ensure_ascii=False, indent=2) + '\n'


def reports_to_csv(reports):
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=c.CSV_FIELDS, lineterminator='\n')
    writer.writeheader()
    for r in reports:
        writer.writerow(r.csv_row())
    return buf.getvalue()


class FamilyBuilder(object):
    """公共流程：公式参数 -> （可选）构造 C_L 并穷举 -> 单位记忆拆分 -> 各项校验。"""

    family = None

    def __init__(self, q, m, l, settings=DEFAULT, verify=c.VERIFY_AUTO, budget=None):
        if verify not in c.VERIFY_MODES:
            raise FamilyParamsException('unknown verify mode {}'.format(verify))
        self.q = int(q)
        self.m = int(m)
        self.l = None if l is None else int(l)
        self.settings = settings
        self.verify = verify
        self.budget = settings.classical_enum if budget is None else int(budget)
        if not 0 < self.budget <= c.MAX_ENUM_BUDGET:
            raise FamilyParamsException('budget must lie in 1..2^62, got {}'.format(self.budget))
        self.logger = logging.getLogger(__name__)
        self.code = None
        self.conv = None
        self.check_params()

    def check_params(self):
        raise NotImplementedError

    def check_split(self, k):
        if self.l is not None and not 1 <= self.l <= k / 2:
            raise FamilyParamsException('{}: need 1 <= l <= k/2 = {}/2, got l = {}'.format(self.family, k, self.l))

    def inputs(self):
        return {'q': self.q, 'm': self.m, 'l': self.l}

    def classical_params(self):
        """公式给出的 (n, k, d_designed)。"""
        raise NotImplementedError

    @property
    def field_order(self):
        return self.q * self.q

    def curve(self):
        raise NotImplementedError

    def describe_curve(self):
        """曲线参数的静态描述，不构造有限域。"""
        raise NotImplementedError

    def build_classical(self):
        return cl_code(self.curve(), self.m)

    def matrix_feasible(self):
        return self.q <= self.settings.matrix_max_q

    def notes(self):
        return []

    def run(self, claimed=None):
        n, k, d = self.classical_params()
        l = self.l
        report = ConstructionReport(family=self.family, q=self.q, field_order=self.field_order,
                                    inputs=self.inputs(), curve=self.describe_curve(), notes=self.notes())
        report.classical = {'n': n, 'k': k, 'd_designed': d, 'd_exact': None}
        report.conv = {'n': n, 'k': k - l, 'gamma': l, 'memory': 1, 'df_lower': d,
                       'df_upper': generalized_singleton(n, k - l, l), 'df_exact': None}
        report.singleton_bound = report.conv['df_upper']

        if self.verify == c.VERIFY_FORMULA:
            report.checks.append(Check('matrices', c.SKIPPED, 'formula-level verification requested'))
        elif not self.matrix_feasible():
            report.checks.append(Check('matrices', c.SKIPPED, 'q = {} exceeds matrix_max_q = {}'.format(
                self.q, self.settings.matrix_max_q)))
        else:
            self._verify(report)

        self._classify(report)
        if claimed is not None:
            self._compare_claimed(report, claimed)
        self.logger.info(f"{self.family} {self.inputs()}: ({report.conv['n']}, {report.conv['k']}, "
                         f"{report.conv['gamma']}; {report.conv['memory']}, d_f >= {report.conv['df_lower']})"
                         f" over GF({report.field_order})")
        return report

    def _verify(self, report):
        code = self.build_classical()
        self.code = code
        n, k, _ = self.classical_params()
        report.checks.append(Check('classical parameters', c.PASS if (code.n, code.k) == (n, k) else c.FAIL,
                                   '[{}, {}] vs formula [{}, {}]'.format(code.n, code.k, n, k)))

        enum = min_distance_exact(code, self.budget, self.settings.workers)
        if enum.exact:
            report.classical['d_exact'] = enum.distance
            ok = code.d_designed is None or enum.distance >= code.d_designed
            report.checks.append(Check('d_exact >= d_designed', c.PASS if ok else c.FAIL,
                                       'd = {} by enumerating {} codewords, designed {}'.format(
                                           enum.distance, enum.enumerated, code.d_designed)))
            code = code.with_exact_distance(enum)
            self.code = code
        else:
            report.checks.append(Check('d_exact >= d_designed', c.INFEASIBLE,
                                       'q^k = {}^{} exceeds budget {}'.format(code.q, code.k, self.budget)))

        try:
            spec = tail_split(code.field, code.generator, self.l)
            report.checks.extend(verify_rank_conditions(spec))
            conv = split_construction(spec, provenance='{} {}'.format(self.family, self.inputs()))
        except SplitRankException as e:
            report.checks.append(Check('split construction', c.FAIL, e.message))
            return
        self.conv = conv

        conv.update_distance(free_distance_bounds(conv, code.distance_bound,
                                                  'd_exact of the classical code' if code.d_exact
                                                  else 'designed distance of the classical code'))
        formula = report.conv_tuple()
        report.checks.append(Check('conv parameters', c.PASS if conv.params() == formula else c.FAIL,
                                   '{} vs formula {}'.format(conv.params(), formula)))
        report.checks.extend(verify_reduced_basic(conv, self.settings.minor_gcd_entries))

        result = free_distance_exact(conv, self.settings.max_states, self.settings.max_coset_enum)
        if result.status == c.EXACT:
            problems = conv.update_distance(record_exact(conv.distance, result))
            report.checks.append(Check('df_lower <= df_exact <= df_upper', c.FAIL if problems else c.PASS,
                                       '; '.join(problems) or '{} <= {} <= {}'.format(
                                           conv.distance.df_lower, result.distance, conv.distance.df_upper)))
        else:
            report.checks.append(Check('df_lower <= df_exact <= df_upper', c.INFEASIBLE, result.detail))

        if self.verify == c.VERIFY_EXACT and result.status == c.EXACT:
            report.checks.append(self._truncated_check(conv, result.distance))

        report.classical.update({'n': code.n, 'k': code.k, 'd_designed': code.d_designed})
        report.conv.update({'n': conv.n, 'k': conv.k, 'gamma': conv.degree, 'memory': conv.memory,
                            'df_lower': conv.distance.df_lower, 'df_upper': conv.distance.df_upper,
                            'df_exact': conv.distance.df_exact})

    def _truncated_check(self, conv, exact):
        upper, degree = free_distance_truncated(conv, budget=self.settings.truncated_enum)
        if upper is None:
            return Check('truncated-input oracle', c.INFEASIBLE,
                         'q^k = {}^{} exceeds truncated_enum'.format(conv.q, conv.k))
        detail = 'min weight over deg u <= {} is {}, state graph gives {}'.format(degree, upper, exact)
        return Check('truncated-input oracle', c.PASS if upper >= exact else c.FAIL, detail)

    def _classify(self, report):
        conv = report.conv
        bound = report.singleton_bound
        if conv['df_exact'] is not None:
            report.defect = classify_defect(bound, conv['df_exact'])
        else:
            report.defect = classify_defect(bound, conv['df_lower'], conv['df_upper'])
        if self.family == c.RATIONAL and conv['df_exact'] is not None:
            defect = report.defect['interval'][1]
            report.checks.append(Check('singleton defect <= 2', c.PASS if defect <= 2 else c.FAIL,
                                       'defect {}'.format(defect)))

    def _compare_claimed(self, report, claimed):
        n, k, gamma, df = claimed
        if (n, k, gamma) != tuple(report.conv_tuple()[:3]):
            report.discrepancies.append('claimed parameters ({}, {}, {}) vs computed ({}, {}, {})'.format(
                n, k, gamma, *report.conv_tuple()[:3]))
        formula = self.classical_params()[2]
        if df != formula:
            message = 'claimed d_f >= {}, formula gives d_f >= {}'.format(df, formula)
            report.discrepancies.append(message)
            self.logger.warning(f"{self.family} {self.inputs()}: {message}")


class RationalFamily(FamilyBuilder):
    family = c.RATIONAL

    def __init__(self, q, r, l, settings=DEFAULT, verify=c.VERIFY_AUTO, budget=None):
        FamilyBuilder.__init__(self, q, r, l, settings, verify, budget)

    def check_params(self):
        if not galois.is_prime_power(self.q):
            raise FamilyParamsException('q = {} is not a prime power'.format(self.q))
        # 仅作为组合子基码（不拆分）时允许 r = 1
        low = 0 if self.l is None else 1
        if not low < self.m <= self.q - 1:
            raise FamilyParamsException('need {} < r <= q-1, got r = {}, q = {}'.format(low, self.m, self.q))
        self.check_split(self.m + 1)

    def inputs(self):
        return {'q': self.q, 'r': self.m, 'l': self.l}

    @property
    def field_order(self):
        return self.q

    def classical_params(self):
        return self.q, self.m + 1, self.q - self.m

    def curve(self):
        return curve_create(c.RATIONAL, self.q)

    def describe_curve(self):
        return {'kind': c.RATIONAL, 'q': self.q, 'field_order': self.q, 'genus': 0,
                'n_affine': self.q, 'pole_orders': [1]}


class CurveAFamily(FamilyBuilder):
    family = c.CURVE_A

    def __init__(self, q, m, l, settings=DEFAULT, verify=c.VERIFY_AUTO, budget=None):
        FamilyBuilder.__init__(self, q, m, l, settings, verify, budget)

    def check_params(self):
        q = self.q
        if q < 2 or q & (q - 1):
            raise FamilyParamsException('curveA needs q = 2^t, got {}'.format(q))
        if not q - 2 < self.m < 2 * q * q:
            raise FamilyParamsException('need q-2 < m < 2q^2, got m = {}, q = {}'.format(self.m, q))
        self.check_split(self.m - q // 2 + 1)

    def classical_params(self):
        n = 2 * self.q * self.q
        return n, self.m - self.q // 2 + 1, n - self.m

    def curve(self):
        return curve_create(c.CURVE_A, self.q)

    def describe_curve(self):
        return {'kind': c.CURVE_A, 'q': self.q, 'field_order': self.q * self.q, 'genus': self.q // 2,
                'n_affine': 2 * self.q * self.q, 'pole_orders': [2, self.q + 1]}

    def notes(self):
        return ['symbols lie in GF({}); the subscript q = {} names the curve parameter'.format(
            self.q * self.q, self.q)]


class CurveBFamily(FamilyBuilder):
    family = c.CURVE_B

    def __init__(self, q, m, l, settings=DEFAULT, verify=c.VERIFY_AUTO, budget=None):
        FamilyBuilder.__init__(self, q, m, l, settings, verify, budget)

    def check_params(self):
        q = self.q
        if q < 2 or q & (q - 1) or (q.bit_length() - 1) % 2 == 0:
            raise FamilyParamsException('curveB needs q = 2^t with t odd, got {}'.format(q))
        n = 3 * q * q - 2 * q
        if not 2 * q - 4 < self.m < n:
            raise FamilyParamsException('need 2q-4 < m < 3q^2-2q, got m = {}, q = {}'.format(self.m, q))
        self.check_split(self.m - q + 2)

    def classical_params(self):
        n = 3 * self.q * self.q - 2 * self.q
        return n, self.m - self.q + 2, n - self.m

    def curve(self):
        return curve_create(c.CURVE_B, self.q)

    def describe_curve(self):
        return {'kind': c.CURVE_B, 'q': self.q, 'field_order': self.q * self.q, 'genus': self.q - 1,
                'n_affine': 3 * self.q * self.q - 2 * self.q, 'pole_orders': [self.q, 3]}

    def notes(self):
        return ['symbols lie in GF({}); the subscript q = {} names the curve parameter'.format(
            self.q * self.q, self.q)]


FAMILIES = {c.RATIONAL: RationalFamily, c.CURVE_A: CurveAFamily, c.CURVE_B: CurveBFamily}


class DerivedFamily(FamilyBuilder):
    """对基码 C_L 施加 puncture / extend / expand / product 后再按单位记忆拆分。"""

    family = 'derived'

    def __init__(self, base, combinator, l, coordinate=None, subfield_order=None,
                 settings=DEFAULT, verify=c.VERIFY_AUTO, budget=None):
        if combinator not in c.COMBINATORS:
            raise FamilyParamsException('unknown combinator {}'.format(combinator))
        self.base = base
        self.combinator = combinator
        self.coordinate = coordinate
        self.subfield_order = subfield_order
        self.hypothesis = None
        FamilyBuilder.__init__(self, base.q, base.m, l, settings, verify, budget)

    def check_params(self):
        n, k, _ = self.base.classical_params()
        if self.combinator == c.PUNCTURE:
            if self.coordinate is None or not 0 <= self.coordinate < n:
                raise FamilyParamsException('puncture needs a coordinate in 0..{}'.format(n - 1))
        if self.combinator == c.EXPAND:
            if self.subfield_order is None:
                raise FamilyParamsException('expand needs a subfield order')
            (p, t), (ps, ts) = order_parts(self.base.field_order), order_parts(self.subfield_order)
            if p != ps or t % ts or t == ts:
                raise FamilyParamsException('GF({}) is not a proper subfield of GF({})'.format(
                    self.subfield_order, self.base.field_order))
        self.check_split(self.classical_params()[1])

    @property
    def degree(self):
        return order_parts(self.base.field_order)[1] // order_parts(self.subfield_order)[1]

    def inputs(self):
        data = dict(self.base.inputs())
        data.update({'base_family': self.base.family, 'combinator': self.combinator, 'l': self.l})
        if self.combinator == c.PUNCTURE:
            data['coordinate'] = self.coordinate
        if self.combinator == c.EXPAND:
            data['subfield_order'] = self.subfield_order
        return data

    @property
    def field_order(self):
        return self.subfield_order if self.combinator == c.EXPAND else self.base.field_order

    def classical_params(self):
        n, k, d = self.base.classical_params()
        if self.combinator == c.PUNCTURE:
            return n - 1, k, d if self.hypothesis else d - 1
        if self.combinator == c.EXTEND:
            return n + 1, k, d
        if self.combinator == c.EXPAND:
            return self.degree * n, self.degree * k, d
        return n * n, k * k, d * d

    def curve(self):
        return self.base.curve()

    def describe_curve(self):
        return self.base.describe_curve()

    def notes(self):
        notes = list(self.base.notes()) if self.combinator != c.EXPAND else []
        if self.combinator == c.EXTEND:
            notes.append('extended distance d^e is d or d+1')
        return notes

    def matrix_feasible(self):
        return self.base.matrix_feasible()

    def build_classical(self):
        code = self.base.build_classical()
        _, _, d = self.base.classical_params()
        if self.combinator == c.PUNCTURE:
            self.hypothesis = puncture_hypothesis(code, self.coordinate, self.budget)
            punctured = puncture(code, self.coordinate)
            designed = d if self.hypothesis else d - 1
            return LinearCode(punctured.field, punctured.generator, designed, provenance=punctured.provenance)
        if self.combinator == c.EXTEND:
            return extend(code)
        if self.combinator == c.EXPAND:
            basis = SubfieldBasis(code.field, field_for_order(self.subfield_order))
            return expand(code, basis)
        return product(code, code)

    def run(self, claimed=None):
        report = FamilyBuilder.run(self, claimed)
        if self.combinator == c.PUNCTURE:
            status = {True: 'holds', False: 'fails', None: 'unknown'}[self.hypothesis]
            if self.code is None:
                status = 'not checked'
            report.inputs['hypothesis'] = status
            if self.hypothesis is None:
                self.logger.warning(f"puncture 假设无法验证（{status}），使用 d-1 作为下界")
        return report


def family_rational(q, r, l, settings=DEFAULT, verify=c.VERIFY_AUTO, budget=None):
    return RationalFamily(q, r, l, settings, verify, budget).run()


def family_curveA(q, m, l, settings=DEFAULT, verify=c.VERIFY_AUTO, budget=None):
    return CurveAFamily(q, m, l, settings, verify, budget).run()


def family_curveB(q, m, l, settings=DEFAULT, verify=c.VERIFY_AUTO, budget=None):
    return CurveBFamily(q, m, l, settings, verify, budget).run()


def derived_construction(family, q, m, combinator, l, coordinate=None, subfield_order=None,
                         settings=DEFAULT, verify=c.VERIFY_AUTO, budget=None):
    if family not in FAMILIES:
        raise FamilyParamsException('unknown family {}'.format(family))
    base = FAMILIES[family](q, m, None, settings, verify, budget)
    builder = DerivedFamily(base, combinator, l, coordinate, subfield_order, settings, verify, budget)
    return builder.run()


def table_rows(which):
    """表格行 -> (builder 类, q, m, l, 声称值, 对比文本)。"""
    rows = []
    if which in (1, '1', 'table1'):
        for q, k, gamma, claimed in c.TABLE1_ROWS:
            rows.append((RationalFamily, q, k + gamma - 1, gamma, (q, k, gamma, claimed), None))
        return rows
    if which in (2, '2', 'table2'):
        for n, k, gamma, q, claimed, cmp1, cmp2 in c.TABLE2_ROWS:
            if n == 2 * q * q:
                cls, m = CurveAFamily, k + gamma + q // 2 - 1
            elif n == 3 * q * q - 2 * q:
                cls, m = CurveBFamily, k + gamma + q - 2
            else:
                raise FamilyParamsException('row ({}, {})_{} matches no curve family'.format(n, k, q))
            rows.append((cls, q, m, gamma, (n, k, gamma, claimed), (cmp1, cmp2)))
        return rows
    raise FamilyParamsException('unknown table {}'.format(which))


def table_report(which, settings=DEFAULT, budget=None, verify=c.VERIFY_AUTO):
    budget = settings.table_classical_enum if budget is None else int(budget)
    rows = table_rows(which)

    def run_row(row):
        cls, q, m, l, claimed, comparison = row
        report = cls(q, m, l, settings, verify, budget).run(claimed)
        if comparison:
            report.notes.extend('{}: {}'.format(h, text) for h, text in zip(c.TABLE2_COMPARISON_HEADERS, comparison))
        return report

    if settings.workers > 1:
        with ThreadPoolExecutor(max_workers=settings.workers) as pool:
            reports = list(pool.map(run_row, rows))
    else:
        reports = [run_row(row) for row in rows]

    comparison = []
    for (cls, q, m, l, claimed, cmp), report in zip(rows, reports):
        line = '({}, {}, {}; 1, d_f >= {})_{}'.format(*claimed, q)
        if cmp:
            line += '  |  ' + '  |  '.join(cmp)
        comparison.append(line)
    logger.info(f"表 {which}: {len(reports)} 行，{sum(1 for r in reports if r.discrepancies)} 行存在差异")
    return reports, comparison
