# -*- coding: utf-8 -*-
"""
错误类型定义
工具链各阶段（解析、分析、认证、检查、编解码）共用的异常层次
"""


class AccError(Exception):
    """工具链所有异常的基类"""


class ParseError(AccError):
    """源程序语法错误，携带行列位置"""

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        if line is not None:
            super().__init__(f"{line}:{column}: {message}")
        else:
            super().__init__(message)


class AnalysisError(AccError):
    """分析阶段错误

    Args:
        kind: UnknownPredicate 或 UnknownBuiltin
        detail: 出错的谓词或内建名称
    """

    UNKNOWN_PREDICATE = "UnknownPredicate"
    UNKNOWN_BUILTIN = "UnknownBuiltin"

    def __init__(self, kind, detail):
        self.kind = kind
        self.detail = detail
        super().__init__(f"{kind}: {detail}")


class UnknownStrategy(AccError):
    """未注册（或保留未启用）的队列策略"""

    def __init__(self, strategy_id, reserved=False):
        self.strategy_id = strategy_id
        self.reserved = reserved
        note = " (reserved, not enabled)" if reserved else ""
        super().__init__(f"UnknownStrategy: {strategy_id}{note}")


class UnknownDomain(AccError):
    """未注册的抽象域"""

    def __init__(self, domain_id):
        self.domain_id = domain_id
        super().__init__(f"UnknownDomain: {domain_id}")


class DomainMismatch(AccError):
    """策略文件与当前抽象域不一致"""

    def __init__(self, expected, actual):
        self.expected = expected
        self.actual = actual
        super().__init__(f"DomainMismatch: expected {expected}, got {actual}")


class PolicyViolation(AccError):
    """分析结果不满足安全策略，携带结构化的策略检查结果"""

    def __init__(self, result):
        self.result = result
        keys = ", ".join(v.key.display() for v in result.violations)
        super().__init__(f"PolicyViolation: {keys}")


class CheckError(AccError):
    """检查器拒绝证书的原因"""


class AnswerMismatch(CheckError):
    """检查器算出的答案与证书中的答案不一致"""

    def __init__(self, key, checker_ap, certificate_ap):
        self.key = key
        self.checker_ap = checker_ap
        self.certificate_ap = certificate_ap
        super().__init__(f"AnswerMismatch: {key.display()}")


class RecomputationRequired(CheckError):
    """单遍检查中某条依赖弧需要第二次遍历"""

    def __init__(self, slot, u):
        assert u >= 2
        self.slot = slot
        self.u = u
        head_key, rule_index, position = slot
        super().__init__(
            f"RecomputationRequired: {head_key.display()} rule {rule_index} position {position} (u={u})"
        )


class PackageMismatch(CheckError):
    """证书包与待检查的输入不一致

    reason 取值: digest, domain-id, strategy-id, entries, kind
    """

    def __init__(self, reason, detail=""):
        self.reason = reason
        self.detail = detail
        super().__init__(f"PackageMismatch({reason}) {detail}".rstrip())


class FormatError(AccError):
    """证书、策略或包文件格式错误

    reason 取值: version, truncation, malformed
    """

    def __init__(self, reason, detail=""):
        self.reason = reason
        self.detail = detail
        super().__init__(f"FormatError({reason}) {detail}".rstrip())
