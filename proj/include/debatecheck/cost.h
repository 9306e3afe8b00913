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

// Token cost accounting in exact rational arithmetic. Dollar figures are only
// rounded when formatted.

#ifndef DEBATECHECK_COST_H_
#define DEBATECHECK_COST_H_

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "debatecheck/model.h"

namespace debatecheck {

using Exact = boost::multiprecision::cpp_rational;

// Parses a plain decimal such as "3685.13" or "-0.5" exactly. Throws Error.
Exact ParseDecimal(std::string_view text);
// Rounds half away from zero to `places` decimals.
std::string FormatDecimal(const Exact& value, int places = 4);
double ToDouble(const Exact& value);

struct ModelRate {
  Exact input_per_million;
  Exact output_per_million;
};

class PricingTable {
 public:
  // gpt-4o-mini 0.15 / 0.60 and gpt-4o 2.50 / 10.00 dollars per 1M tokens.
  static PricingTable Default();
  // JSON object {"<model>": {"input": <rate>, "output": <rate>}, ...}.
  // Entries override the defaults. Throws Error on negative rates.
  static PricingTable FromFile(const std::filesystem::path& path);

  void Set(const std::string& model, ModelRate rate);
  // Throws UnknownModelRate.
  const ModelRate& Rate(const std::string& model) const;

 private:
  std::map<std::string, ModelRate> rates_;
};

// tokens * rate / 1,000,000.
Exact TokenCost(const Exact& tokens, const Exact& rate_per_million);

struct CostLine {
  std::string role;
  std::string model;
  Exact input_tokens;
  Exact output_tokens;
  Exact input_cost;
  Exact output_cost;
  Exact total_cost;
  bool estimated = false;
};

struct CostReport {
  std::vector<CostLine> lines;  // one per role, sorted by role name
  CostLine total;               // role "Total", model empty
};

// Costs for the given per-role token totals, divided by `per` (e.g. the
// number of claims, to get per-claim averages).
CostReport ComputeCost(const TokenUsage& usage, const PricingTable& pricing,
                       const Exact& per = Exact(1));

}  // namespace debatecheck

#endif  // DEBATECHECK_COST_H_
