# -*- coding: utf-8 -*-
from dataclasses import replace

import pytest

from conftest import DOMAINS, STRATEGIES, answer, key, load
from domains.registry import get_domain
from domains.substitution import AbstractSubstitution
from engine.analyzer import Analyzer, analyze_f, dump_result, reachable_table
from engine.events import ArcEvent, EventQueue, NewCall, Updated
from engine.oracle import kleene, one_round
from engine.strategies import StrategyLibrary, get_strategy, registered_strategies
from engine.tables import AnswerTable, DependencyArc
from program.parser import parse
from program.terms import Call, Var
from utils.errors import AnalysisError, UnknownStrategy


class TestStrategies:
    def test_registered(self):
        assert registered_strategies() == [
            "textual-fifo", "reverse-rules", "updated-last", "redundant-updates-first",
        ]

    def test_unknown(self):
        with pytest.raises(UnknownStrategy) as info:
            get_strategy("nope")
        assert not info.value.reserved

    def test_reserved_slot_is_not_enabled(self):
        with pytest.raises(UnknownStrategy) as info:
            get_strategy("depth-first-newcall")
        assert info.value.reserved
        assert "reserved" in str(info.value)

    def test_rule_order(self, qp):
        rules = qp.rules_for(("p", 1))
        assert get_strategy("reverse-rules").order_rules(rules) == tuple(reversed(rules))
        assert get_strategy("textual-fifo").order_rules(rules) == rules

    def test_missing_rank_class_is_rejected(self, tmp_path):
        config = tmp_path / "strategies.json"
        config.write_text('{"strategies": [{"id": "broken", "ranks": {"arc": 0}}]}', encoding="utf-8")
        with pytest.raises(ValueError):
            StrategyLibrary(config)


def _arc(head, position=1):
    cp = AbstractSubstitution(("X",), head.values)
    return DependencyArc(head, 1, position, cp, Call("p", (Var("X"),)), cp)


class TestEventQueue:
    def test_duplicate_newcall_is_absorbed(self):
        queue = EventQueue(get_strategy("textual-fifo"))
        k = key("q(X):(term)")
        assert queue.push(NewCall(k))
        assert not queue.push(NewCall(k))
        assert len(queue) == 1

    def test_ranks_then_fifo(self):
        queue = EventQueue(get_strategy("textual-fifo"))
        q, p = key("q(X):(term)"), key("p(X):(term)")
        queue.push(NewCall(q))
        queue.push(NewCall(p))
        queue.push(Updated(q))
        assert queue.pop() == Updated(q)
        assert queue.pop() == NewCall(q)
        assert queue.pop() == NewCall(p)
        assert not queue
        with pytest.raises(IndexError):
            queue.pop()

    def test_fresh_arc_replaces_queued_arc(self):
        queue = EventQueue(get_strategy("textual-fifo"))
        q = key("q(X):(term)")
        first = ArcEvent(_arc(q))
        second = ArcEvent(replace(_arc(q), u=1))
        queue.push(first)
        queue.push(NewCall(key("p(X):(term)")))
        assert queue.push(second)
        assert len(queue) == 2
        assert isinstance(queue.pop(), NewCall)
        assert queue.pop() == second

    def test_relaunch_is_absorbed_by_queued_arc(self):
        queue = EventQueue(get_strategy("textual-fifo"))
        q = key("q(X):(term)")
        queued = ArcEvent(_arc(q))
        queue.push(queued)
        assert not queue.push(ArcEvent(_arc(q), relaunch=True))
        assert queue.pop() == queued

    def test_redundant_updates_first(self):
        queue = EventQueue(get_strategy("redundant-updates-first"))
        q, p = key("q(X):(term)"), key("p(X):(term)")
        queue.push(NewCall(q))
        queue.push(Updated(q))
        queue.push(Updated(p, redundant=True))
        assert [queue.pop() for _ in range(3)] == [Updated(p, redundant=True), NewCall(q), Updated(q)]


class TestAnalyzer:
    @pytest.mark.parametrize("strategy", STRATEGIES)
    def test_rectoy_fixpoint(self, rectoy, strategy):
        result = analyze_f(rectoy, [key("rectoy(N,M):(int,term)")], strategy, "types-v1")
        assert result.table.as_dict() == {
            key("rectoy(N,M):(int,term)"): answer("types-v1", "(int,int)", 2),
        }

    @pytest.mark.parametrize("strategy", STRATEGIES)
    def test_qp_fixpoint(self, qp, strategy):
        result = analyze_f(qp, [key("q(X):(term)")], strategy, "types-v1")
        assert result.table.as_dict() == {
            key("q(X):(term)"): answer("types-v1", "(real)", 1),
            key("p(X):(term)"): answer("types-v1", "(real)", 1),
        }

    def test_rectoy_groundness(self, rectoy):
        result = analyze_f(rectoy, [key("rectoy(N,M):(ground,any)", "ground-v1")], "textual-fifo", "ground-v1")
        assert result.table.dump() == ["rectoy/2 (ground,any) -> (ground,ground)"]

    def test_traversal_count_depends_on_rule_order(self, qp):
        entries = [key("q(X):(term)")]
        assert analyze_f(qp, entries, "textual-fifo", "types-v1").counters.max_u == 1
        assert analyze_f(qp, entries, "reverse-rules", "types-v1").counters.max_u == 2

    def test_failing_rule_contributes_nothing(self):
        program = load("p(X) :- q(X).\nq(X) :- r(X).\nr(X) :- X = 1.\nr(X) :- s(X), X = a.\ns(X) :- s(X).\n")
        result = analyze_f(program, [key("p(X):(term)")], "textual-fifo", "types-v1")
        assert result.table.get(key("p(X):(term)")) == answer("types-v1", "(int)", 1)
        assert result.table.get(key("s(X):(term)")).failed

    def test_unknown_entry_predicate(self, qp):
        with pytest.raises(AnalysisError) as info:
            analyze_f(qp, [key("r(X):(term)")], "textual-fifo", "types-v1")
        assert info.value.kind == AnalysisError.UNKNOWN_PREDICATE

    def test_unknown_body_predicate(self):
        program = load("p(X) :- r(X).")
        with pytest.raises(AnalysisError) as info:
            analyze_f(program, [key("p(X):(term)")], "textual-fifo", "types-v1")
        assert info.value.detail == "r/1"

    def test_unnormalized_program_is_refused(self):
        with pytest.raises(AssertionError):
            analyze_f(parse("p(f(X))."), [], "textual-fifo", "types-v1")

    def test_no_entries_gives_empty_table(self, qp):
        result = analyze_f(qp, [], "textual-fifo", "types-v1")
        assert len(result.table) == 0
        assert result.counters.events == 0

    def test_dump(self, rectoy):
        result = analyze_f(rectoy, [key("rectoy(N,M):(int,term)")], "textual-fifo", "types-v1")
        lines = dump_result(result, with_dat=True)
        assert lines[0] == "% answer table (types-v1, textual-fifo)"
        assert lines[1] == "rectoy/2 (int,term) -> (int,int)"
        assert lines[2] == "% dependency arcs"
        assert lines[-1].startswith("% counters: events=")
        assert dump_result(result) == dump_result(
            analyze_f(rectoy, [key("rectoy(N,M):(int,term)")], "textual-fifo", "types-v1")
        )

    def test_trace_records_every_call_store(self, rectoy):
        result = analyze_f(rectoy, [key("rectoy(N,M):(int,term)")], "textual-fifo", "types-v1",
                           record_trace=True)
        assert result.trace
        assert all(record.u <= result.counters.max_u for record in result.trace)

    def test_answer_version_counts_writes(self):
        table = AnswerTable()
        q = key("q(X):(term)")
        assert table.version(q) == 0
        table.put(q, AbstractSubstitution.bottom(("v1",)))
        table.put(q, answer("types-v1", "(int)", 1))
        assert table.version(q) == 2
        assert table == AnswerTable({q: answer("types-v1", "(int)", 1)})

    @pytest.mark.parametrize("domain_id", DOMAINS)
    def test_settled_arcs_are_not_relaunched(self, corpus, domain_id):
        for entry in corpus:
            for strategy in STRATEGIES:
                analyzer = Analyzer(entry.load(), domain_id, strategy)
                result = analyzer.run(entry.entries(domain_id))
                for callee, callee_answer in result.table.items():
                    if not callee_answer.failed:
                        analyzer.add_dependent_rules(callee)
                assert not analyzer.queue, f"{entry.name} [{strategy}]"

    def test_unreachable_patterns_are_dropped(self, qp):
        q, p = key("q(X):(term)"), key("p(X):(term)")
        table = AnswerTable({
            q: answer("types-v1", "(real)", 1),
            p: answer("types-v1", "(real)", 1),
            key("p(X):(int)"): answer("types-v1", "(int)", 1),
        })
        pruned = reachable_table(qp, get_domain("types-v1"), table, [q])
        assert pruned.keys() == [p, q]


class TestOracle:
    def test_one_round_reports_missing_keys(self, qp):
        table = AnswerTable({key("q(X):(term)"): AbstractSubstitution.bottom(("v1",))})
        result = one_round(qp, "types-v1", table)
        assert result.missing == [key("p(X):(term)")]
        assert result.table.get(key("p(X):(term)")).failed

    def test_fixpoint_is_stable(self, qp):
        fixpoint = analyze_f(qp, [key("q(X):(term)")], "textual-fifo", "types-v1").table
        result = one_round(qp, "types-v1", fixpoint)
        assert result.table == fixpoint
        assert result.missing == []
        assert result.evaluations == 3

    @pytest.mark.parametrize("domain_id", DOMAINS)
    def test_kleene_matches_analyzer_on_corpus(self, corpus, domain_id):
        for entry in corpus:
            program = entry.load()
            entries = entry.entries(domain_id)
            expected = kleene(program, domain_id, entries)
            for strategy in STRATEGIES:
                table = analyze_f(program, entries, strategy, domain_id).table
                assert table == expected, f"{entry.name} [{strategy}]"
