# -*- coding: utf-8 -*-
import argparse
import sys

from agconv import consts as c
from agconv.convolutional import dump_poly_matrix
from agconv.exceptions import AgconvException
from agconv.linear_code import dump_matrix
from agconv.pipeline import (FAMILIES, DerivedFamily, reports_to_csv, reports_to_json,
                             table_report)
from agconv.utils import load_config, send_webhook_notification, setup_logger


def add_common(parser, suppress=False):
    # 子命令上的同名选项用 SUPPRESS，未给出时不覆盖主命令上已解析的值
    def default(value):
        return argparse.SUPPRESS if suppress else value

    parser.add_argument('--config', default=default('config.json'), help='配置文件路径')
    parser.add_argument('--format', choices=('json', 'csv'), default=default('json'))
    parser.add_argument('--out', default=default(None), help='输出文件，默认写到标准输出')
    parser.add_argument('--timestamp', action='store_true', default=default(False), help='报告中附带生成时间')
    return parser


def build_parser():
    parser = argparse.ArgumentParser(prog='run_agconv', description='AG 码拆分得到的单位记忆卷积码：构造、校验与表格复现')
    add_common(parser)
    common = add_common(argparse.ArgumentParser(add_help=False), suppress=True)
    sub = parser.add_subparsers(dest='command', required=True)

    def add_family(p):
        p.add_argument('--family', choices=c.CURVE_KINDS, required=True)
        p.add_argument('--q', type=int, required=True)
        group = p.add_mutually_exclusive_group(required=True)
        group.add_argument('--r', type=int, help='rational 族的 r')
        group.add_argument('--m', type=int, help='曲线族的 m')
        p.add_argument('--l', type=int, required=True)
        p.add_argument('--verify', choices=c.VERIFY_MODES, default=c.VERIFY_AUTO)

    add_family(sub.add_parser('construct', parents=[common], help='实例化一个代码族并校验'))

    derive = sub.add_parser('derive', parents=[common], help='对基码施加组合子后再拆分')
    add_family(derive)
    derive.add_argument('--combinator', choices=c.COMBINATORS, required=True)
    derive.add_argument('--coordinate', type=int, help='puncture 删除的坐标')
    derive.add_argument('--subfield', type=int, help='expand 的子域阶数')

    table = sub.add_parser('table', parents=[common], help='复现表 1 / 表 2')
    table.add_argument('which', choices=('1', '2'))
    table.add_argument('--budget', type=int, help='经典码穷举预算')
    table.add_argument('--verify', choices=c.VERIFY_MODES, default=c.VERIFY_AUTO)

    dump = sub.add_parser('dump-matrix', parents=[common], help='导出 G(D)（或经典生成矩阵）')
    add_family(dump)
    dump.add_argument('--classical', action='store_true', help='导出经典码生成矩阵 H')
    return parser


def make_builder(args, settings):
    m = args.r if args.family == c.RATIONAL else args.m
    if m is None:
        raise AgconvException('{} needs {}'.format(args.family, '--r' if args.family == c.RATIONAL else '--m'))
    if args.command == 'derive':
        base = FAMILIES[args.family](args.q, m, None, settings, args.verify)
        return DerivedFamily(base, args.combinator, args.l, args.coordinate, args.subfield, settings, args.verify)
    return FAMILIES[args.family](args.q, m, args.l, settings, args.verify)


def write_output(text, path):
    if path:
        with open(path, 'w', encoding='utf-8') as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None):
    args = build_parser().parse_args(argv)
    settings = load_config(args.config)
    logger = setup_logger('agconv', settings.log_file)

    try:
        if args.command == 'dump-matrix':
            builder = make_builder(args, settings)
            report = builder.run()
            if builder.code is None:
                raise AgconvException('matrices were not built: {}'.format(report.checks[0].detail))
            text = dump_matrix(builder.code) if args.classical else dump_poly_matrix(builder.conv.generator)
            write_output(text, args.out)
            return 0

        if args.command == 'table':
            reports, comparison = table_report(args.which, settings, args.budget, args.verify)
            for line in comparison:
                logger.info(line)
        else:
            reports = [make_builder(args, settings).run()]
    except AgconvException as e:
        logger.error(f"运行失败: {e}")
        print(str(e), file=sys.stderr)
        return 2

    if args.format == 'csv':
        write_output(reports_to_csv(reports), args.out)
    else:
        write_output(reports_to_json(reports, args.timestamp), args.out)

    failed = [(r, ch) for r in reports for ch in r.failed]
    for r, ch in failed:
        logger.error(f"{r.family} {r.inputs}: 校验失败 {ch.name} ({ch.detail})")
    if args.command == 'table':
        summary = '表 {}: {} 行, {} 行有差异, {} 项校验失败'.format(
            args.which, len(reports), sum(1 for r in reports if r.discrepancies), len(failed))
        send_webhook_notification(settings.notify_webhook, summary, logger)
    return 1 if failed else 0


if __name__ == '__main__':
    sys.exit(main())
