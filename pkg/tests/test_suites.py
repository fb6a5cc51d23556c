import json
from pathlib import Path

from loopstar.config import parse_config
from loopstar.report import canonical_json, report_to_dict
from loopstar.suites import SUITE_RUNNERS, run_suites

REPO = Path(__file__).resolve().parents[1]

LIGHT_DOC = {
    "d": 2, "K": 2, "N": 10, "R": 2,
    "suites": ["algebra", "chaos", "gaussian", "poisson", "moyal", "equivalence"],
    "mc": {"n_samples": 1000, "K_mc": 16, "M": 256, "n_grid": 1024, "seed": 42},
}


def test_all_suites_pass_on_light_config():
    report = run_suites(parse_config(LIGHT_DOC))
    assert report.all_passed
    suites_seen = {r.suite for r in report.records}
    assert suites_seen == set(LIGHT_DOC["suites"])
    ids = [(r.suite, r.check_id) for r in report.records]
    assert len(ids) == len(set(ids))
    for r in report.records:
        assert r.tolerance >= 0.0
        assert r.n_instances > 0
        assert r.wall_time >= 0.0
        assert r.claim


def test_report_embeds_config_echo():
    cfg = parse_config(LIGHT_DOC)
    report = run_suites(cfg)
    assert report.config["K"] == 2
    assert report.config["mc"]["n_samples"] == 1000
    assert report.config["suites"] == list(cfg.suites)


def test_suite_registry_matches_config_names():
    from loopstar.config import SUITE_NAMES
    assert set(SUITE_RUNNERS) == set(SUITE_NAMES)


def test_default_config_report_matches_golden():
    """Full default-scale run reproduces the checked-in canonical report."""
    cfg = parse_config(json.loads((REPO / "configs" / "default.json").read_text()))
    report = run_suites(cfg)
    got = canonical_json(report_to_dict(report)).encode() + b"\n"
    golden = (REPO / "tests" / "golden" / "default_report.json").read_bytes()
    assert report.all_passed
    assert got == golden
