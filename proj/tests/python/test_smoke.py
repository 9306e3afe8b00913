# Copyright 2026 The debatecheck Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Smoke tests for the Python bindings."""

import json
import os
import pathlib

import pytest

import debatecheck as dc

DATA = pathlib.Path(
    os.environ.get("DEBATECHECK_TEST_DATA",
                   pathlib.Path(__file__).resolve().parents[1] / "data"))


def test_normalize_verdict():
    assert dc.normalize_verdict("supported") == "Supported"
    assert (dc.normalize_verdict("Conflicting Evidence/Cherry-Picking") ==
            "Conflicting Evidence/Cherry-picking")
    with pytest.raises(dc.UnknownVerdict):
        dc.normalize_verdict("maybe true")
    assert len(dc.verdict_labels()) == 4


def test_templates():
    assert set(dc.required_placeholders("ModeratorRound")) == {
        "ROUND_NUMBER", "AFFIRMATIVE_ARGUMENT", "NEGATIVE_ARGUMENT"}
    out = dc.render_template("Corrector", {
        "DEBATE_RECORDING": "d", "Primary_Insights": "p", "GT_VERDICT": "Refuted"})
    assert "this claim is Refuted based on the debate context" in out
    with pytest.raises(dc.MissingBinding):
        dc.render_template("AffirmativeOpen", {})
    assert len(dc.template_checksum("DebaterMeta")) == 64
    assert dc.render_evidence_set([]) == "No evidence provided."
    assert dc.render_evidence_set(
        [{"question": "q", "answer": "a", "url": "u"}]) == "1. Q: q A: a (u)"


def test_parse_decision():
    raw = ('```json\n{"Proceeding Necessity": "No", "Verdict": "Refuted", '
           '"Justification for Verdict": "x"}\n```')
    d = dc.parse_moderator_decision(raw)
    assert d["proceeding"] is False
    assert d["verdict"] == "Refuted"
    assert d["verdict_justification"] == "x"


def test_meteor_and_metrics():
    assert dc.meteor("the cat sat", "the cat sat") == pytest.approx(0.98148, abs=1e-5)
    assert dc.meteor("", "any text") == 0.0
    assert dc.porter_stem("running") == "run"
    gold = [{"question": "Where?", "answer": "Paris"}]
    assert dc.evidence_score([], gold) == 0.0
    items = [
        {"predicted": "Supported", "gold": "Supported", "evidence_score": 0.30},
        {"predicted": "Refuted", "gold": "Refuted", "evidence_score": 0.10},
        {"predicted": "Supported", "gold": "Refuted", "evidence_score": 0.50},
        {"predicted": "Not Enough Evidence", "gold": "Not Enough Evidence",
         "evidence_score": 0.25},
    ]
    assert dc.averitec_score(items, 0.25) == 0.5
    assert dc.accuracy(items) == 0.75
    fpr_items = [
        {"predicted": "Not Enough Evidence", "gold": g}
        for g in ("Supported", "Refuted", "Not Enough Evidence")
    ] + [{"predicted": "Refuted", "gold": "Refuted"}]
    assert dc.fpr_neutral(fpr_items, "Not Enough Evidence") == pytest.approx(2 / 3)


def test_run_debate():
    claim = {"id": "c1", "text": "The Eiffel Tower is in Berlin.",
             "gold_verdict": "Refuted", "evidence": []}
    out = dc.run_debate(claim, str(DATA / "fixtures3.jsonl"))
    assert out["predicted_verdict"] == "Refuted"
    assert out["rounds_used"] == 1
    assert [t["role"] for t in out["recording"]] == [
        "Affirmative", "Negative", "Moderator"]


def test_verify_synthesize_evaluate(tmp_path):
    runs = str(tmp_path)
    s = dc.verify(str(DATA / "corpus3.json"), run_id="r", runs_root=runs,
                  backend="scripted", fixtures=str(DATA / "fixtures3.jsonl"))
    assert s["executed"] == 3
    again = dc.verify(str(DATA / "corpus3.json"), run_id="r", runs_root=runs,
                      backend="scripted", fixtures=str(DATA / "fixtures3.jsonl"))
    assert again["executed"] == 0 and again["already_persisted"] == 3
    report = dc.evaluate("r", runs_root=runs)
    assert report["accuracy"] == pytest.approx(2 / 3)
    assert json.loads((tmp_path / "r" / "report.json").read_text())["items"] == 3

    syn = dc.synthesize(str(DATA / "corpus3.json"), run_id="s", runs_root=runs,
                        backend="scripted",
                        fixtures=str(DATA / "fixtures3_syn.jsonl"))
    assert (syn["sft"], syn["dpo"]) == (2, 1)
    pair = json.loads((tmp_path / "s" / "dpo.jsonl").read_text().splitlines()[0])
    assert set(pair) == {"prompt", "chosen", "rejected"}

    with pytest.raises(dc.MissingOutcomes):
        dc.evaluate("missing", runs_root=runs)
    with pytest.raises(dc.UsageError):
        dc.verify(str(tmp_path / "none.json"), run_id="x", runs_root=runs,
                  backend="scripted", fixtures=str(DATA / "fixtures3.jsonl"))
