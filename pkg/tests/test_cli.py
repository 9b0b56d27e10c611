import json
import os
import tempfile
import unittest
from unittest import mock

import run_agconv
from agconv import consts as c
from agconv.utils import DEFAULT, Settings, load_config, send_webhook_notification


class TestSettings(unittest.TestCase):

    def test_defaults(self):
        self.assertEqual(DEFAULT.classical_enum, 2 ** 24)
        self.assertEqual(DEFAULT.table_classical_enum, 2 ** 16)
        self.assertEqual(DEFAULT.max_states, 2 ** 12)
        self.assertEqual(DEFAULT.max_coset_enum, 2 ** 22)
        self.assertEqual(DEFAULT.matrix_max_q, 8)
        self.assertEqual(DEFAULT.workers, 1)
        self.assertEqual(DEFAULT.log_file, c.DEFAULT_LOG_FILE)

    def test_partial_override(self):
        settings = Settings.from_dict({'budgets': {'max_states': 16}, 'workers': 0})
        self.assertEqual(settings.max_states, 16)
        self.assertEqual(settings.classical_enum, 2 ** 24)
        self.assertEqual(settings.workers, 1)
        self.assertEqual(c.DEFAULT_SETTINGS['budgets']['max_states'], 2 ** 12)

    def test_missing_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            self.assertEqual(load_config(os.path.join(tmp, 'missing.json')), DEFAULT)

    def test_template_matches_defaults(self):
        here = os.path.dirname(os.path.abspath(__file__))
        path = os.path.join(here, os.pardir, 'config.template.json')
        settings = load_config(path)
        self.assertEqual(settings.classical_enum, DEFAULT.classical_enum)
        self.assertEqual(settings.truncated_enum, DEFAULT.truncated_enum)


class TestWebhook(unittest.TestCase):

    def test_no_webhook(self):
        self.assertFalse(send_webhook_notification(None, 'done'))

    @mock.patch('agconv.utils.requests.post')
    def test_post(self, post):
        post.return_value.status_code = 200
        self.assertTrue(send_webhook_notification('http://hook', 'done'))
        payload = post.call_args.kwargs['json']
        self.assertEqual(payload['content']['text'], 'done')
        post.return_value.status_code = 500
        self.assertFalse(send_webhook_notification('http://hook', 'done'))
        post.side_effect = OSError('offline')
        self.assertFalse(send_webhook_notification('http://hook', 'done'))


class TestCli(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.tmp = tempfile.TemporaryDirectory()
        cls.config = os.path.join(cls.tmp.name, 'config.json')
        with open(cls.config, 'w', encoding='utf-8') as f:
            json.dump({'log_file': os.path.join(cls.tmp.name, 'log', 'agconv.log')}, f)

    @classmethod
    def tearDownClass(cls):
        cls.tmp.cleanup()

    def run_cli(self, *args):
        out = os.path.join(self.tmp.name, 'out.txt')
        code = run_agconv.main(['--config', self.config, '--out', out] + list(args))
        text = ''
        if os.path.exists(out):
            with open(out, encoding='utf-8') as f:
                text = f.read()
            os.remove(out)
        return code, text

    def test_construct(self):
        code, text = self.run_cli('construct', '--family', 'rational', '--q', '8', '--r', '2', '--l', '1',
                                  '--verify', 'exact')
        self.assertEqual(code, 0)
        report = json.loads(text)
        self.assertEqual(report['conv']['df_exact'], 7)
        self.assertEqual(report['classical']['d_exact'], 6)
        self.assertEqual(report['family'], 'rational')

    def test_construct_curve(self):
        code, text = self.run_cli('construct', '--family', 'curveA', '--q', '4', '--m', '17', '--l', '1')
        self.assertEqual(code, 0)
        report = json.loads(text)
        self.assertEqual([report['conv'][k] for k in ('n', 'k', 'gamma', 'memory')], [32, 15, 1, 1])
        self.assertEqual((report['conv']['df_lower'], report['conv']['df_upper']), (15, 19))

    def test_bad_parameters_exit_2(self):
        code, text = self.run_cli('construct', '--family', 'rational', '--q', '8', '--r', '9', '--l', '1')
        self.assertEqual(code, 2)
        self.assertEqual(text, '')
        code, _ = self.run_cli('construct', '--family', 'curveA', '--q', '4', '--r', '17', '--l', '1')
        self.assertEqual(code, 2)

    def test_derive(self):
        code, text = self.run_cli('derive', '--family', 'rational', '--q', '8', '--r', '2', '--l', '1',
                                  '--combinator', 'extend')
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(text)['conv']['n'], 9)

    def test_table_csv(self):
        code, text = self.run_cli('--format', 'csv', 'table', '2', '--verify', 'formula')
        self.assertEqual(code, 0)
        lines = text.strip().split('\n')
        self.assertEqual(len(lines), 13)
        self.assertTrue(lines[0].startswith('family,q,field_order'))

    def test_options_after_subcommand(self):
        out = os.path.join(self.tmp.name, 'g.txt')
        code = run_agconv.main(['dump-matrix', '--family', 'rational', '--q', '8', '--r', '2', '--l', '1',
                                '--config', self.config, '--out', out])
        self.assertEqual(code, 0)
        with open(out, encoding='utf-8') as f:
            self.assertEqual(f.readline().strip(), '8 8 2 1')

        code = run_agconv.main(['construct', '--family', 'rational', '--q', '4', '--r', '2', '--l', '1',
                                '--format', 'csv', '--config', self.config, '--out', out])
        self.assertEqual(code, 0)
        with open(out, encoding='utf-8') as f:
            self.assertTrue(f.readline().startswith('family,q,field_order'))
        os.remove(out)

    def test_option_placement_keeps_global_values(self):
        parser = run_agconv.build_parser()
        args = parser.parse_args(['--format', 'csv', '--out', 'a.txt', 'table', '1'])
        self.assertEqual((args.format, args.out, args.config), ('csv', 'a.txt', 'config.json'))
        args = parser.parse_args(['table', '2', '--timestamp', '--out', 'b.txt'])
        self.assertEqual((args.format, args.out, args.timestamp), ('json', 'b.txt', True))

    def test_budget_limit_exit_2(self):
        code, text = self.run_cli('table', '1', '--budget', str(2 ** 63))
        self.assertEqual(code, 2)
        self.assertEqual(text, '')

    def test_dump_matrix(self):
        code, text = self.run_cli('dump-matrix', '--family', 'rational', '--q', '4', '--r', '2', '--l', '1')
        self.assertEqual(code, 0)
        lines = text.strip().split('\n')
        self.assertEqual(lines[0], '4 4 2 1')
        self.assertEqual(len(lines), 3)
        code, text = self.run_cli('dump-matrix', '--classical', '--family', 'rational', '--q', '4', '--r', '2',
                                  '--l', '1')
        self.assertEqual(text.split('\n')[0], '4 4 3')
        code, _ = self.run_cli('dump-matrix', '--family', 'rational', '--q', '37', '--r', '2', '--l', '1')
        self.assertEqual(code, 2)


if __name__ == '__main__':
    unittest.main()
