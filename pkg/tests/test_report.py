"""Reports: distribution, summary formatting, deterministic rendering."""

import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fanmine.filtering import ExclusionConfig, FilterConfig
from fanmine.frontend import graph_from_directory
from fanmine.metric import MetricResult, compute_metric
from fanmine.report import (Histogram, build_report, count_with_percent,
                            distribution, percent_half_up, render,
                            seed_percent_strings, summary)
from fanmine.seeds import MarkStore

from helpers import random_graph

MINI = "tests/fixtures/minijhotdraw"


def result_with(fanins):
    return MetricResult({m: frozenset() for m in fanins}, dict(fanins))


@pytest.fixture(scope="module")
def mini_report():
    g, _ = graph_from_directory(MINI)
    cfg = FilterConfig(absolute_threshold=10, exclusions=ExclusionConfig(
        utility_types=frozenset({"mini.FigureEnumerator"})))
    store = MarkStore(filter_config=cfg)
    store.mark("mini.Figure::changed/0", "seed", "Observer notification", ts="t")
    store.mark("mini.UndoManager::recordActivity/1", "nonSeed", ts="t")
    return build_report(g, cfg, store)


class TestDistribution:
    def test_all_zero(self):
        h = distribution(result_with({"a": 0, "b": 0, "c": 0}))
        assert h.buckets == {0: 3}
        assert h.total_methods == 3

    def test_distinct_values(self):
        h = distribution(result_with({"a": 0, "b": 0, "c": 2, "d": 12}))
        assert h.buckets == {0: 2, 2: 1, 12: 1}

    def test_zero_bucket_always_present(self):
        h = distribution(result_with({"a": 3}))
        assert h.buckets == {0: 0, 3: 1}

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 30_000))
    def test_conservation(self, seed):
        g = random_graph(random.Random(seed))
        h = distribution(compute_metric(g))
        assert sum(h.buckets.values()) == h.total_methods == len(g.methods)


class TestPercentFormatting:
    def test_threshold_row_matches_published_string(self):
        assert count_with_percent(16, 1917) == "16 (1%)"

    def test_seed_rows_match_published_strings(self):
        assert seed_percent_strings(7, 1) == ("7 (87%)", "1 (13%)")

    def test_second_published_row(self):
        assert seed_percent_strings(58, 56) == ("58 (51%)", "56 (49%)")

    def test_complement_sums_to_100(self):
        for seeds in range(0, 30):
            for non in range(0, 30):
                if seeds + non == 0:
                    continue
                s, n = seed_percent_strings(seeds, non)
                sp = int(s.split("(")[1].rstrip("%)"))
                np = int(n.split("(")[1].rstrip("%)"))
                assert sp + np == 100

    def test_half_up(self):
        assert percent_half_up(1, 8) == 13
        assert percent_half_up(1, 200) == 1
        assert percent_half_up(0, 7) == 0
        assert percent_half_up(1, 0) == 0

    def test_empty_inspection(self):
        assert seed_percent_strings(0, 0) == ("0 (0%)", "0 (0%)")


class TestSummary:
    def test_empty_graph_all_zero(self):
        table = summary([], MarkStore())
        assert (table.method_count, table.at_threshold, table.confirmed_seeds,
                table.non_seeds, table.concerns) == (0, 0, 0, 0, 0)

    def test_mini_corpus_numbers(self, mini_report):
        s = mini_report.summary
        assert s.method_count == 22
        assert s.at_threshold == 9
        assert s.utility_filtered == 1
        assert s.accessor_filtered == 6
        assert s.confirmed_seeds == 1
        assert s.non_seeds == 1
        assert s.concerns == 1

    def test_partition_never_exceeds_threshold_count(self, mini_report):
        s = mini_report.summary
        assert s.confirmed_seeds + s.non_seeds <= s.at_threshold
        assert s.utility_filtered + s.accessor_filtered <= s.at_threshold


class TestRender:
    def test_deterministic(self, mini_report):
        for fmt in ("text", "csv", "json"):
            assert render(mini_report, fmt) == render(mini_report, fmt)

    def test_fanin_sort_highest_first(self, mini_report):
        data = render(mini_report, "csv", sort="fanin",
                      include_filtered=True).decode()
        fanins = [int(line.split(",")[2]) for line in data.splitlines()[1:]]
        assert fanins == sorted(fanins, reverse=True)

    def test_name_sort_lexicographic(self, mini_report):
        data = render(mini_report, "csv", sort="name",
                      include_filtered=True).decode()
        methods = [line.split(",")[0] for line in data.splitlines()[1:]]
        assert methods == sorted(methods, key=lambda mid: next(
            r.display for r in mini_report.candidates if r.method == mid))

    def test_csv_header_contract(self, mini_report):
        data = render(mini_report, "csv").decode()
        assert data.splitlines()[0] == \
            "method,declaring_type,fanin,filtered_by,status,concern"

    def test_csv_survivors_only_by_default(self, mini_report):
        lines = render(mini_report, "csv").decode().splitlines()
        assert len(lines) == 3  # header + the two surviving concern methods

    def test_json_document_shape(self, mini_report):
        doc = json.loads(render(mini_report, "json", include_filtered=True))
        assert doc["format"] == "fanin-report/1"
        assert doc["summary"]["methodCount"] == 22
        assert doc["histogram"]["buckets"]["12"] == 8
        methods = {c["method"]: c for c in doc["candidates"]}
        assert methods["mini.Figure::changed/0"]["status"] == "seed"
        assert methods["mini.Figure::getX/0"]["filteredBy"] == [
            "accessorName", "accessorBody"] or \
            methods["mini.Figure::getX/0"]["filteredBy"] == [
            "accessorBody", "accessorName"]

    def test_unknown_format_rejected(self, mini_report):
        with pytest.raises(ValueError, match="format"):
            render(mini_report, "xml")

    def test_text_contains_summary_and_histogram(self, mini_report):
        text = render(mini_report, "text").decode()
        assert "confirmed seeds" in text
        assert "fan-in distribution" in text
        assert "Observer notification" in text
