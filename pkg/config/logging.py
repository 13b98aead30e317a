# -*- coding: utf-8 -*-
"""
日志配置模块
为 acc-kit 工具链提供统一的日志配置：
stderr 控制台 + acc-kit.log + error.log，事件轨迹单独写 trace.log
"""

import logging
import os
import sys
from logging.handlers import RotatingFileHandler

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(filename)s:%(lineno)d - %(message)s'

MB = 1024 * 1024


def _rotating(path, level, formatter, max_mb=10, backups=3):
    handler = RotatingFileHandler(path, maxBytes=max_mb * MB, backupCount=backups, encoding='utf-8')
    handler.setLevel(level)
    handler.setFormatter(formatter)
    return handler


def _reset(logger):
    for handler in logger.handlers[:]:
        logger.removeHandler(handler)
        handler.close()


def setup_logging(log_level=None, log_dir=None):
    """
    设置日志配置

    Args:
        log_level: 日志级别（默认读 LOG_LEVEL，再退回 INFO）
        log_dir: 日志目录（默认读 ACC_KIT_LOG_DIR，再退回 logs）
    """
    level_name = (log_level or os.getenv('LOG_LEVEL', 'INFO')).upper()
    level = getattr(logging, level_name, logging.INFO)

    log_dir = log_dir or os.getenv('ACC_KIT_LOG_DIR', 'logs')
    os.makedirs(log_dir, exist_ok=True)

    formatter = logging.Formatter(LOG_FORMAT)

    root_logger = logging.getLogger()
    root_logger.setLevel(level)
    _reset(root_logger)

    # stdout 只留给确定性的结果输出
    console = logging.StreamHandler(sys.stderr)
    console.setLevel(level)
    console.setFormatter(formatter)
    root_logger.addHandler(console)

    main_log_file = os.path.join(log_dir, 'acc-kit.log')
    root_logger.addHandler(_rotating(main_log_file, logging.INFO, formatter, backups=5))
    root_logger.addHandler(_rotating(os.path.join(log_dir, 'error.log'), logging.ERROR, formatter))

    # 事件轨迹只写文件；DEBUG 级别才会真正产生记录
    trace_logger = logging.getLogger('acc.trace')
    _reset(trace_logger)
    trace_log_file = os.path.join(log_dir, 'trace.log')
    trace_logger.addHandler(_rotating(trace_log_file, logging.DEBUG, formatter, max_mb=5))
    trace_logger.propagate = False
    trace_logger.setLevel(logging.DEBUG if level <= logging.DEBUG else logging.INFO)

    logging.debug(f"日志系统初始化完成 - 级别: {level_name}")
    logging.debug(f"主日志文件: {main_log_file}, 轨迹日志文件: {trace_log_file}")


def get_logger(name):
    """获取指定名称的日志器"""
    return logging.getLogger(name)


# 预定义的日志器
program_logger = get_logger('acc.program')
engine_logger = get_logger('acc.engine')
certify_logger = get_logger('acc.certify')
check_logger = get_logger('acc.check')
package_logger = get_logger('acc.package')
bench_logger = get_logger('acc.bench')
cli_logger = get_logger('acc.cli')
trace_logger = get_logger('acc.trace')
