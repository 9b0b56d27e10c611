# 有限域
MAX_FIELD_ORDER = 2 ** 20

# 曲线种类
RATIONAL = 'rational'
CURVE_A = 'curveA'
CURVE_B = 'curveB'
CURVE_KINDS = (RATIONAL, CURVE_A, CURVE_B)

# 组合子
PUNCTURE = 'puncture'
EXTEND = 'extend'
EXPAND = 'expand'
PRODUCT = 'product'
COMBINATORS = (PUNCTURE, EXTEND, EXPAND, PRODUCT)

# 距离计算结果的三种状态
EXACT = 'exact'
BOUND_ONLY = 'bound-only'
INFEASIBLE = 'infeasible'

# 校验结果
PASS = 'pass'
FAIL = 'fail'
SKIPPED = 'skipped'

# 校验模式
VERIFY_FORMULA = 'formula'
VERIFY_AUTO = 'auto'
VERIFY_EXACT = 'exact'
VERIFY_MODES = (VERIFY_FORMULA, VERIFY_AUTO, VERIFY_EXACT)

# Singleton 缺陷分类
DEFECT_CLASSES = {0: 'MDS', 1: 'near-MDS', 2: 'almost-near-MDS'}

# 默认配置
DEFAULT_LOG_FILE = 'log/agconv.log'
DEFAULT_SETTINGS = {
    'budgets': {
        'classical_enum': 2 ** 24,
        'table_classical_enum': 2 ** 16,
        'max_states': 2 ** 12,
        'max_coset_enum': 2 ** 22,
        'truncated_enum': 2 ** 18,
        'minor_gcd_entries': 400,
        'matrix_max_q': 8,
    },
    'workers': 1,
    'log_file': DEFAULT_LOG_FILE,
    'notify_webhook': None,
}

# 每批枚举的信息向量个数
ENUM_CHUNK = 2 ** 14
# 陪集枚举时单批广播数组的元素上限
COSET_CHUNK_ELEMENTS = 2 ** 22
# 枚举下标按 int64 展开成 q 进制数字，预算不能超过这个值
MAX_ENUM_BUDGET = 2 ** 62

# 表 1：有理函数域族 (q, k, gamma, 声称的 d_f 下界)
TABLE1_ROWS = [
    (8, 2, 1, 6),
    (8, 5, 1, 3),
    (37, 17, 1, 20),
    (37, 33, 1, 4),
    (71, 35, 1, 36),
    (71, 68, 1, 3),
    (128, 64, 1, 64),
    (128, 125, 1, 3),
    (256, 128, 1, 128),
    (256, 253, 1, 3),
]

# 表 2：曲线族 (n, k, gamma, q, 声称的 d_f 下界, 文献对比 1, 文献对比 2)
TABLE2_ROWS = [
    (32, 15, 1, 4, 15, '(32, 15, 10; mu, df >= 9)_3', '(32, 16, gamma; 1, df >= 5)_3'),
    (32, 1, 1, 4, 30, '--', '--'),
    (128, 64, 1, 8, 60, '(128, 64, 35; mu, df >= 17)_7', '(128, 64, gamma; 1, df >= 8)_7'),
    (176, 64, 1, 8, 105, '--', '--'),
    (128, 3, 1, 8, 122, '--', '--'),
    (176, 6, 1, 8, 163, '--', '--'),
    (512, 128, 1, 16, 376, '--', '--'),
    (512, 256, 1, 16, 248, '--', '--'),
    (2048, 1024, 1, 32, 1008, '--', '--'),
    (3008, 1024, 1, 32, 1953, '--', '--'),
    (2048, 15, 1, 32, 2017, '--', '--'),
    (3008, 30, 1, 32, 2947, '--', '--'),
]
TABLE2_COMPARISON_HEADERS = ('earlier construction (memory mu)', 'earlier unit-memory construction')

# 报告 CSV 列
CSV_FIELDS = [
    'family', 'q', 'field_order', 'inputs',
    'classical_n', 'classical_k', 'classical_d_designed', 'classical_d_exact',
    'conv_n', 'conv_k', 'conv_gamma', 'conv_memory', 'conv_df_lower', 'conv_df_upper', 'conv_df_exact',
    'singleton_bound', 'defect', 'checks', 'discrepancies', 'notes',
]
