# -*- coding: utf-8 -*-
"""
类 Prolog 源语法解析器（基于 ply）

支持子句 `h(X,Y) :- b1, ..., bn.`、事实、`=`、整数/浮点字面量、列表、
以及 `is` 算术表达式（+ - * 与一元负号）。
"""

import re
import threading
from decimal import Decimal

import ply.lex as lex
import ply.yacc as yacc

from config.logging import program_logger
from program.serialize import compute_digest
from program.terms import Builtin, Call, Float, Int, Program, Rule, Struct, Unify, Var, make_list
from utils.errors import ParseError

logger = program_logger

# 规范化引入的新变量使用这一保留形式
RESERVED_VARIABLE = re.compile(r"X\d+")

reserved = {"is": "IS"}

tokens = (
    "NAME",
    "VAR",
    "INT",
    "FLOAT",
    "IF",
    "DOT",
    "COMMA",
    "LPAREN",
    "RPAREN",
    "LBRACKET",
    "RBRACKET",
    "PIPE",
    "EQ",
    "PLUS",
    "MINUS",
    "TIMES",
    "IS",
)

precedence = (
    ("left", "PLUS", "MINUS"),
    ("left", "TIMES"),
    ("right", "UMINUS"),
)

t_IF = r":-"
t_COMMA = r","
t_PIPE = r"\|"
t_EQ = r"="
t_PLUS = r"\+"
t_MINUS = r"-"
t_TIMES = r"\*"

t_ignore = " \t\r"
t_ignore_COMMENT = r"%[^\n]*"


def t_FLOAT(t):
    r"\d+\.\d+"
    t.value = Decimal(t.value)
    return t


def t_INT(t):
    r"\d+"
    t.value = int(t.value)
    return t


def t_NAME(t):
    r"[a-z][A-Za-z0-9_]*"
    t.type = reserved.get(t.value, "NAME")
    return t


def t_VAR(t):
    r"[A-Z_][A-Za-z0-9_]*"
    if RESERVED_VARIABLE.fullmatch(t.value):
        line, column = _position(t.lexer.lexdata, t.lexpos)
        raise ParseError(f"变量名 {t.value} 与规范化保留的变量名冲突", line, column)
    return t


def t_DOT(t):
    r"\."
    return t


def t_LPAREN(t):
    r"\("
    t.lexer.open_brackets.append(t.lexpos)
    return t


def t_RPAREN(t):
    r"\)"
    if t.lexer.open_brackets:
        t.lexer.open_brackets.pop()
    return t


def t_LBRACKET(t):
    r"\["
    t.lexer.open_brackets.append(t.lexpos)
    return t


def t_RBRACKET(t):
    r"\]"
    if t.lexer.open_brackets:
        t.lexer.open_brackets.pop()
    return t


def t_newline(t):
    r"\n+"
    t.lexer.lineno += len(t.value)


def t_error(t):
    line, column = _position(t.lexer.lexdata, t.lexpos)
    raise ParseError(f"非法字符 {t.value[0]!r}", line, column)


def _position(data, lexpos):
    line = data.count("\n", 0, lexpos) + 1
    column = lexpos - data.rfind("\n", 0, lexpos)
    return line, column


# ---- 语法 ----

def p_program(p):
    """program : clauses"""
    p[0] = p[1]


def p_clauses(p):
    """clauses : clauses clause
               | empty"""
    if len(p) == 3:
        p[0] = p[1] + [p[2]]
    else:
        p[0] = []


def p_empty(p):
    """empty :"""


def p_clause_fact(p):
    """clause : term DOT"""
    p[0] = _clause(p[1], (), p.lexpos(2))


def p_clause_rule(p):
    """clause : term IF body DOT"""
    p[0] = _clause(p[1], tuple(p[3]), p.lexpos(2))


def p_body(p):
    """body : goal
            | body COMMA goal"""
    if len(p) == 2:
        p[0] = [p[1]]
    else:
        p[0] = p[1] + [p[3]]


def p_goal_call(p):
    """goal : term"""
    term = p[1]
    if not isinstance(term, Struct):
        line, column = _position(p.lexer.lexdata, p.lexpos(1))
        raise ParseError(f"目标必须是原子或复合项: {term}", line, column)
    p[0] = Call(term.functor, term.args)


def p_goal_unify(p):
    """goal : term EQ term"""
    p[0] = Unify(p[1], p[3])


def p_goal_is(p):
    """goal : term IS expr"""
    p[0] = Builtin("is", (p[1], p[3]))


def p_term_var(p):
    """term : VAR"""
    p[0] = Var(p[1])


def p_term_int(p):
    """term : INT"""
    p[0] = Int(p[1])


def p_term_float(p):
    """term : FLOAT"""
    p[0] = Float(p[1])


def p_term_negative(p):
    """term : MINUS INT
            | MINUS FLOAT"""
    p[0] = Int(-p[2]) if isinstance(p[2], int) else Float(-p[2])


def p_term_atom(p):
    """term : NAME"""
    p[0] = Struct(p[1])


def p_term_compound(p):
    """term : NAME LPAREN args RPAREN"""
    p[0] = Struct(p[1], tuple(p[3]))


def p_term_list(p):
    """term : LBRACKET RBRACKET
            | LBRACKET args RBRACKET
            | LBRACKET args PIPE term RBRACKET"""
    if len(p) == 3:
        p[0] = make_list(())
    elif len(p) == 4:
        p[0] = make_list(p[2])
    else:
        p[0] = make_list(p[2], p[4])


def p_args(p):
    """args : term
            | args COMMA term"""
    if len(p) == 2:
        p[0] = [p[1]]
    else:
        p[0] = p[1] + [p[3]]


def p_expr_binary(p):
    """expr : expr PLUS expr
            | expr MINUS expr
            | expr TIMES expr"""
    p[0] = Struct(p[2], (p[1], p[3]))


def p_expr_negate(p):
    """expr : MINUS expr %prec UMINUS"""
    operand = p[2]
    if isinstance(operand, Int):
        p[0] = Int(-operand.value)
    elif isinstance(operand, Float):
        p[0] = Float(-operand.value)
    else:
        p[0] = Struct("-", (operand,))


def p_expr_group(p):
    """expr : LPAREN expr RPAREN"""
    p[0] = p[2]


def p_expr_primary(p):
    """expr : primary"""
    p[0] = p[1]


def p_primary_var(p):
    """primary : VAR"""
    p[0] = Var(p[1])


def p_primary_number(p):
    """primary : INT
               | FLOAT"""
    p[0] = Int(p[1]) if isinstance(p[1], int) else Float(p[1])


def p_primary_atom(p):
    """primary : NAME"""
    p[0] = Struct(p[1])


def p_primary_compound(p):
    """primary : NAME LPAREN args RPAREN"""
    p[0] = Struct(p[1], tuple(p[3]))


def p_error(p):
    if p is None:
        data = _state.lexer.lexdata
        if _state.lexer.open_brackets:
            lexpos = _state.lexer.open_brackets[-1]
            line, column = _position(data, lexpos)
            raise ParseError(f"括号 {data[lexpos]!r} 未闭合", line, column)
        line, column = _position(data, len(data))
        raise ParseError("输入意外结束", line, column)
    line, column = _position(p.lexer.lexdata, p.lexpos)
    raise ParseError(f"意外的符号 {p.value!r}", line, column)


def _clause(head, body, lexpos):
    if not isinstance(head, Struct) or head.functor in ("[]", "[|]"):
        line, column = _position(_state.lexer.lexdata, lexpos)
        raise ParseError(f"子句头必须是原子或复合项: {head}", line, column)
    return _name_anonymous(Call(head.functor, head.args), body)


def _name_anonymous(head, body):
    """把每个匿名变量 _ 换成子句内未使用的 _<n>"""
    used = set()
    for term in (Struct(head.predicate, head.args),) + tuple(_literal_terms(body)):
        _collect_names(term, used)
    counter = [0]

    def fresh():
        while True:
            counter[0] += 1
            name = f"_{counter[0]}"
            if name not in used:
                used.add(name)
                return name

    def rename(term):
        if isinstance(term, Var) and term.name == "_":
            return Var(fresh())
        if isinstance(term, Struct) and term.args:
            return Struct(term.functor, tuple(rename(a) for a in term.args))
        return term

    new_head = Call(head.predicate, tuple(rename(a) for a in head.args))
    new_body = []
    for literal in body:
        if isinstance(literal, Call):
            new_body.append(Call(literal.predicate, tuple(rename(a) for a in literal.args)))
        elif isinstance(literal, Unify):
            new_body.append(Unify(rename(literal.left), rename(literal.right)))
        else:
            new_body.append(Builtin(literal.name, tuple(rename(a) for a in literal.args)))
    return new_head, tuple(new_body)


def _literal_terms(body):
    for literal in body:
        if isinstance(literal, Unify):
            yield literal.left
            yield literal.right
        else:
            yield from literal.args


def _collect_names(term, names):
    if isinstance(term, Var):
        names.add(term.name)
    elif isinstance(term, Struct):
        for arg in term.args:
            _collect_names(arg, names)


class _ParserState(threading.local):
    lexer = None


_state = _ParserState()
_lock = threading.Lock()
_lexer = lex.lex(errorlog=lex.NullLogger())
_parser = yacc.yacc(debug=False, write_tables=False, errorlog=yacc.NullLogger())


def parse(source: str) -> Program:
    """
    解析源程序

    Args:
        source: 程序文本

    Returns:
        Program: 规则保持文本顺序，规则序号在每个谓词内从 1 开始

    Raises:
        ParseError: 语法错误，带行列号
    """
    with _lock:
        lexer = _lexer.clone()
        lexer.lineno = 1
        lexer.open_brackets = []
        _state.lexer = lexer
        try:
            clauses = _parser.parse(source, lexer=lexer, tracking=True) or []
        finally:
            _state.lexer = None

    predicates = {}
    for head, body in clauses:
        rules = predicates.setdefault(head.predicate_id, [])
        rules.append(Rule(len(rules) + 1, head, body))
    program = Program({pid: tuple(rules) for pid, rules in predicates.items()})
    program = Program(program.predicates, compute_digest(program))
    logger.debug(f"解析完成: {len(program.predicates)} 个谓词, {len(clauses)} 条子句")
    return program


def parse_term(text: str):
    """解析单个项（用于测试与入口模式），不允许 is 表达式"""
    program = parse(f"wrapper__({text}).")
    (rule,) = program.rules_for(("wrapper__", 1))
    return rule.head.args[0]


__all__ = ["parse", "parse_term", "RESERVED_VARIABLE"]
