import copy
import json
import logging
import os
from dataclasses import dataclass
from logging.handlers import TimedRotatingFileHandler

import requests

from . import consts as c


@dataclass(frozen=True)
class Settings:
    classical_enum: int
    table_classical_enum: int
    max_states: int
    max_coset_enum: int
    truncated_enum: int
    minor_gcd_entries: int
    matrix_max_q: int
    workers: int = 1
    log_file: str = c.DEFAULT_LOG_FILE
    notify_webhook: str = None

    @classmethod
    def from_dict(cls, config):
        merged = copy.deepcopy(c.DEFAULT_SETTINGS)
        for key, value in (config or {}).items():
            if key == 'budgets':
                merged['budgets'].update(value or {})
            else:
                merged[key] = value
        budgets = merged['budgets']
        return cls(
            classical_enum=int(budgets['classical_enum']),
            table_classical_enum=int(budgets['table_classical_enum']),
            max_states=int(budgets['max_states']),
            max_coset_enum=int(budgets['max_coset_enum']),
            truncated_enum=int(budgets['truncated_enum']),
            minor_gcd_entries=int(budgets['minor_gcd_entries']),
            matrix_max_q=int(budgets['matrix_max_q']),
            workers=max(1, int(merged.get('workers', 1))),
            log_file=merged.get('log_file') or c.DEFAULT_LOG_FILE,
            notify_webhook=merged.get('notify_webhook'),
        )


DEFAULT = Settings.from_dict({})


def load_config(path='config.json'):
    try:
        with open(path, 'r', encoding='utf-8') as f:
            config_data = json.load(f)
    except FileNotFoundError:
        logging.getLogger(__name__).warning(f"找不到配置文件 {path}，使用默认参数")
        config_data = {}
    return Settings.from_dict(config_data)


def setup_logger(name, log_file=c.DEFAULT_LOG_FILE):
    logger = logging.getLogger(name)
    logger.setLevel(logging.INFO)
    if logger.handlers:
        return logger

    log_dir = os.path.dirname(log_file)
    if log_dir and not os.path.exists(log_dir):
        os.makedirs(log_dir)

    # 以天为单位切割日志
    file_handler = TimedRotatingFileHandler(log_file, when='midnight', interval=1, backupCount=7, encoding='utf-8')
    file_handler.suffix = "%Y-%m-%d"
    formatter = logging.Formatter('%(asctime)s - %(name)s - %(levelname)s - %(message)s')
    file_handler.setFormatter(formatter)
    logger.addHandler(file_handler)

    console_handler = logging.StreamHandler()
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)
    return logger


def send_webhook_notification(webhook, message, logger=None):
    logger = logger or logging.getLogger(__name__)
    if not webhook:
        return False
    try:
        headers = {'Content-Type': 'application/json'}
        payload = {"msg_type": "text", "content": {"text": message}}
        response = requests.post(webhook, json=payload, headers=headers, timeout=5)
        if response.status_code == 200:
            logger.info("webhook 通知发送成功")
            return True
        logger.error("webhook 通知发送失败，状态码: %s", response.status_code)
    except Exception as e:
        logger.error("发送 webhook 通知时出现异常: %s", str(e))
    return False
