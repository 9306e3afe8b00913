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

#include "debatecheck/cost.h"

#include <cctype>
#include <fstream>

#include <json.hpp>

#include "debatecheck/errors.h"

namespace debatecheck {

namespace mp = boost::multiprecision;

Exact ParseDecimal(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    negative = s[0] == '-';
    s.remove_prefix(1);
  }
  mp::cpp_int numerator = 0;
  mp::cpp_int denominator = 1;
  bool seen_point = false;
  bool seen_digit = false;
  for (char c : s) {
    if (c == '.' && !seen_point) {
      seen_point = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      numerator = numerator * 10 + (c - '0');
      if (seen_point) denominator *= 10;
      seen_digit = true;
    } else {
      throw Error("not a plain decimal: \"" + std::string(text) + "\"");
    }
  }
  if (!seen_digit) throw Error("not a plain decimal: \"" + std::string(text) + "\"");
  Exact r(numerator, denominator);
  return negative ? Exact(-r) : r;
}

std::string FormatDecimal(const Exact& value, int places) {
  mp::cpp_int scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  Exact scaled = mp::abs(value) * scale;
  mp::cpp_int num = mp::numerator(scaled);
  mp::cpp_int den = mp::denominator(scaled);
  // round half away from zero: floor(x + 1/2)
  mp::cpp_int rounded = (2 * num + den) / (2 * den);
  std::string digits = rounded.str();
  if (static_cast<int>(digits.size()) <= places) {
    digits.insert(0, places - digits.size() + 1, '0');
  }
  std::string out = digits.substr(0, digits.size() - places);
  if (places > 0) out += "." + digits.substr(digits.size() - places);
  if (value < 0 && rounded != 0) out.insert(0, "-");
  return out;
}

double ToDouble(const Exact& value) { return value.convert_to<double>(); }

PricingTable PricingTable::Default() {
  PricingTable t;
  t.Set("gpt-4o-mini", {ParseDecimal("0.15"), ParseDecimal("0.60")});
  t.Set("gpt-4o", {ParseDecimal("2.50"), ParseDecimal("10.00")});
  return t;
}

PricingTable PricingTable::FromFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open pricing file: " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error("pricing file " + path.string() + ": " + e.what());
  }
  PricingTable t = Default();
  // Numbers are re-read from their JSON text so 0.15 stays exactly 15/100.
  auto exact = [](const nlohmann::json& v) {
    return ParseDecimal(v.is_string() ? v.get<std::string>() : v.dump());
  };
  for (const auto& [model, rates] : j.items()) {
    ModelRate r{exact(rates.at("input")), exact(rates.at("output"))};
    if (r.input_per_million < 0 || r.output_per_million < 0) {
      throw Error("negative rate for model " + model);
    }
    t.Set(model, r);
  }
  return t;
}

void PricingTable::Set(const std::string& model, ModelRate rate) {
  rates_[model] = std::move(rate);
}

const ModelRate& PricingTable::Rate(const std::string& model) const {
  auto it = rates_.find(model);
  if (it == rates_.end()) {
    throw UnknownModelRate("no pricing for model \"" + model + "\"");
  }
  return it->second;
}

Exact TokenCost(const Exact& tokens, const Exact& rate_per_million) {
  return tokens * rate_per_million / Exact(1000000);
}

CostReport ComputeCost(const TokenUsage& usage, const PricingTable& pricing,
                       const Exact& per) {
  if (per <= 0) throw Error("cost divisor must be positive");
  CostReport report;
  report.total.role = "Total";
  for (const auto& [role, tc] : usage) {
    if (tc.input_tokens < 0 || tc.output_tokens < 0) {
      throw Error("negative token count for role " + role);
    }
    const ModelRate& rate = pricing.Rate(tc.model);
    CostLine line;
    line.role = role;
    line.model = tc.model;
    line.input_tokens = Exact(tc.input_tokens) / per;
    line.output_tokens = Exact(tc.output_tokens) / per;
    line.input_cost = TokenCost(line.input_tokens, rate.input_per_million);
    line.output_cost = TokenCost(line.output_tokens, rate.output_per_million);
    line.total_cost = line.input_cost + line.output_cost;
    line.estimated = tc.estimated;

    report.total.input_tokens += line.input_tokens;
    report.total.output_tokens += line.output_tokens;
    report.total.input_cost += line.input_cost;
    report.total.output_cost += line.output_cost;
    report.total.total_cost += line.total_cost;
    report.total.estimated = report.total.estimated || line.estimated;
    report.lines.push_back(std::move(line));
  }
  return report;
}

}  // namespace debatecheck
