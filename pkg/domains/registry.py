# -*- coding: utf-8 -*-
"""
抽象域注册表
"""

from domains.ground_domain import GroundnessDomain
from domains.type_domain import TypeDomain
from utils.errors import UnknownDomain

_DOMAINS = {domain.domain_id: domain for domain in (TypeDomain(), GroundnessDomain())}


def get_domain(domain_id):
    """
    按 domain-id 查找抽象域；传入域对象时原样返回

    Raises:
        UnknownDomain: 未注册的 domain-id
    """
    if not isinstance(domain_id, str):
        return domain_id
    try:
        return _DOMAINS[domain_id]
    except KeyError:
        raise UnknownDomain(domain_id) from None


def registered_domains():
    return list(_DOMAINS)
