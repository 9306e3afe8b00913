// Copyright 2026 The debatecheck Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Python module debatecheck._core. Structured values cross the boundary as
// JSON-compatible dicts and lists in the same layout the run store writes.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "debatecheck/codec.h"
#include "debatecheck/commands.h"
#include "debatecheck/debate.h"
#include "debatecheck/errors.h"
#include "debatecheck/meteor.h"
#include "debatecheck/metrics.h"
#include "debatecheck/prompts.h"
#include "debatecheck/scripted_backend.h"
#include "debatecheck/stemmer.h"

namespace py = pybind11;
namespace dc = debatecheck;

namespace {

py::object ToPy(const dc::OrderedJson& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

nlohmann::json FromPy(const py::handle& obj) {
  return nlohmann::json::parse(
      py::module_::import("json").attr("dumps")(obj).cast<std::string>());
}

std::vector<dc::EvidenceItem> EvidenceFromPy(const py::handle& obj) {
  std::vector<dc::EvidenceItem> out;
  for (const auto& e : FromPy(obj)) out.push_back(dc::DecodeEvidence(e));
  return out;
}

std::vector<dc::EvalItem> ItemsFromPy(const py::list& items) {
  std::vector<dc::EvalItem> out;
  for (const auto& h : items) {
    auto j = FromPy(h);
    dc::EvalItem it;
    it.claim_id = j.value("claim_id", "");
    it.predicted = dc::NormalizeVerdict(j.at("predicted").get<std::string>());
    it.gold = dc::NormalizeVerdict(j.at("gold").get<std::string>());
    it.evidence_score = j.value("evidence_score", 1.0);
    it.rounds_used = j.value("rounds_used", 1);
    out.push_back(it);
  }
  return out;
}

dc::RunOptions MakeRunOptions(const std::string& corpus,
                              const std::string& run_id,
                              const std::string& runs_root,
                              const std::string& condition,
                              const std::string& backend,
                              const std::optional<std::string>& fixtures,
                              const std::optional<std::string>& retrieved_file,
                              int max_rounds, const std::string& debater_model,
                              const std::string& moderator_model, int workers) {
  dc::RunOptions o;
  o.corpus = corpus;
  o.run_id = run_id;
  o.runs_root = runs_root;
  o.condition = dc::ParseCondition(condition);
  o.backend = backend;
  if (fixtures) o.fixtures = *fixtures;
  if (retrieved_file) o.retrieved_file = *retrieved_file;
  o.debate.max_rounds = max_rounds;
  o.debate.debater_model = debater_model;
  o.debate.moderator_model = moderator_model;
  o.workers = workers;
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Claim verification by multi-agent debate";

  static py::exception<dc::Error> base(m, "DebatecheckError", PyExc_RuntimeError);
  static py::exception<dc::UsageError> usage(m, "UsageError", base.ptr());
  static py::exception<dc::MissingOutcomes> missing(m, "MissingOutcomes", base.ptr());
  static py::exception<dc::MissingBinding> binding(m, "MissingBinding", base.ptr());
  static py::exception<dc::UnknownVerdict> verdict(m, "UnknownVerdict", base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const dc::UsageError& e) {
      usage(e.what());
    } catch (const dc::MissingOutcomes& e) {
      missing(e.what());
    } catch (const dc::MissingBinding& e) {
      binding(e.what());
    } catch (const dc::UnknownVerdict& e) {
      verdict(e.what());
    } catch (const dc::Error& e) {
      base(e.what());
    }
  });

  m.def("normalize_verdict", [](const std::string& label) {
    return std::string(dc::DisplayString(dc::NormalizeVerdict(label)));
  }, "Canonical display string of a verdict label");
  m.def("verdict_labels", [] {
    std::vector<std::string> out;
    for (auto v : dc::kAllVerdicts) out.emplace_back(dc::DisplayString(v));
    return out;
  });

  m.def("template_names", [] {
    std::vector<std::string> out;
    for (auto t : dc::kAllTemplates) out.emplace_back(dc::TemplateName(t));
    return out;
  });
  m.def("template_text", [](const std::string& name) {
    return std::string(dc::TemplateStore::Builtin().Text(dc::ParseTemplateId(name)));
  });
  m.def("template_checksum", [](const std::string& name) {
    return dc::TemplateStore::Builtin().Checksum(dc::ParseTemplateId(name));
  });
  m.def("required_placeholders", [](const std::string& name) {
    return dc::RequiredPlaceholders(dc::ParseTemplateId(name));
  });
  m.def("render_template", [](const std::string& name, const dc::Bindings& b) {
    return dc::Render(dc::ParseTemplateId(name), b);
  }, py::arg("name"), py::arg("bindings"));
  m.def("render_evidence_set", [](const py::list& evidence) {
    return dc::RenderEvidenceSet(EvidenceFromPy(evidence));
  });

  m.def("parse_moderator_decision", [](const std::string& raw) {
    return ToPy(dc::EncodeDecision(dc::ParseModeratorDecision(raw)));
  });

  m.def("run_debate", [](const py::dict& claim, const std::string& fixtures,
                         int max_rounds) {
    dc::Claim c = dc::DecodeClaim(FromPy(claim));
    auto backend = dc::ScriptedBackend::FromFile(fixtures);
    dc::Gateway gateway(*backend);
    dc::DebateConfig config;
    config.max_rounds = max_rounds;
    dc::DebateOutcome outcome;
    {
      py::gil_scoped_release release;
      outcome = dc::RunDebate(c, config, gateway);
    }
    return ToPy(dc::EncodeOutcome(outcome));
  }, py::arg("claim"), py::arg("fixtures"), py::arg("max_rounds") = 3,
     "Runs one debate against a scripted fixture file");

  m.def("porter_stem", &dc::PorterStem);
  m.def("meteor", [](const std::string& c, const std::string& r) {
    return dc::Meteor(c, r);
  }, py::arg("candidate"), py::arg("reference"));
  m.def("evidence_score", [](const py::list& predicted, const py::list& gold) {
    return dc::EvidenceScore(EvidenceFromPy(predicted), EvidenceFromPy(gold));
  });

  m.def("accuracy", [](const py::list& items) {
    return dc::Accuracy(ItemsFromPy(items));
  });
  m.def("averitec_score", [](const py::list& items, double threshold) {
    return dc::AveritecScore(ItemsFromPy(items), threshold);
  }, py::arg("items"), py::arg("threshold") = dc::kDefaultEvidenceThreshold);
  m.def("fpr_neutral", [](const py::list& items, const std::string& label) {
    return dc::FprNeutral(ItemsFromPy(items), dc::NormalizeVerdict(label));
  });

  m.def("verify", [](const std::string& corpus, const std::string& run_id,
                     const std::string& runs_root, const std::string& condition,
                     const std::string& backend,
                     const std::optional<std::string>& fixtures,
                     const std::optional<std::string>& retrieved_file,
                     int max_rounds, const std::string& debater_model,
                     const std::string& moderator_model, int workers) {
    auto o = MakeRunOptions(corpus, run_id, runs_root, condition, backend,
                            fixtures, retrieved_file, max_rounds, debater_model,
                            moderator_model, workers);
    auto b = dc::MakeBackend(o);
    std::ostringstream progress;
    dc::VerifySummary s;
    {
      py::gil_scoped_release release;
      s = dc::CmdVerify(o, *b, progress);
    }
    py::dict d;
    d["run_id"] = s.run_id;
    d["claims"] = s.claims;
    d["already_persisted"] = s.already_persisted;
    d["executed"] = s.executed;
    d["failed"] = s.failed;
    d["log"] = progress.str();
    return d;
  }, py::arg("corpus"), py::arg("run_id") = "", py::arg("runs_root") = "runs",
     py::arg("condition") = "golden", py::arg("backend") = "http",
     py::arg("fixtures") = py::none(), py::arg("retrieved_file") = py::none(),
     py::arg("max_rounds") = 3, py::arg("debater_model") = "gpt-4o-mini",
     py::arg("moderator_model") = "gpt-4o", py::arg("workers") = 1);

  m.def("synthesize", [](const std::string& corpus, const std::string& run_id,
                         const std::string& runs_root, const std::string& backend,
                         const std::optional<std::string>& fixtures,
                         int max_rounds, int workers) {
    auto o = MakeRunOptions(corpus, run_id, runs_root, "golden", backend,
                            fixtures, std::nullopt, max_rounds, "gpt-4o-mini",
                            "gpt-4o", workers);
    auto b = dc::MakeBackend(o);
    std::ostringstream progress;
    dc::SynthesizeSummary s;
    {
      py::gil_scoped_release release;
      s = dc::CmdSynthesize(o, *b, progress);
    }
    py::dict d;
    d["run_id"] = s.run_id;
    d["debates_run"] = s.debates_run;
    d["corrections_run"] = s.corrections_run;
    d["failed"] = s.failed;
    d["sft"] = s.exported.sft;
    d["dpo"] = s.exported.dpo;
    d["log"] = progress.str();
    return d;
  }, py::arg("corpus"), py::arg("run_id") = "", py::arg("runs_root") = "runs",
     py::arg("backend") = "http", py::arg("fixtures") = py::none(),
     py::arg("max_rounds") = 3, py::arg("workers") = 1);

  m.def("evaluate", [](const std::string& run_id, const std::string& runs_root,
                       double threshold) {
    dc::EvaluateOptions o;
    o.run_id = run_id;
    o.runs_root = runs_root;
    o.threshold = threshold;
    std::ostringstream progress;
    return ToPy(dc::EvalReportJson(dc::CmdEvaluate(o, progress)));
  }, py::arg("run_id"), py::arg("runs_root") = "runs",
     py::arg("threshold") = dc::kDefaultEvidenceThreshold);
}
