#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ltlrl/logic/alphabet.hpp"
#include "ltlrl/logic/formula.hpp"

namespace ltlrl::mon {

using logic::Letter;

/* How a monitor turns its state into a raw cost (see MonitorSet::observe):
 * Pulse charges 1 on the step a violation happens, Sustained charges 1 on
 * every step a reach obligation is still open. */
enum class CostMode { Pulse, Sustained };

std::string to_string(CostMode m);
CostMode cost_mode_from_string(const std::string& s);

/* One constraint: a formula plus its cost shaping and budget. The budget is
 * in raw (unweighted) units; the weight scales this spec's share of the
 * aggregated cost and of the aggregated budget. */
struct Spec {
  std::string id;
  logic::Formula formula;
  double weight = 1.0;
  double budget = 0.0;
  CostMode cost_mode = CostMode::Pulse;
};

/* A spec listing with the alphabet the formulas and traces are read over. */
struct SpecSet {
  logic::Alphabet alphabet;
  std::vector<Spec> specs;

  // Sum of weight_i * budget_i, the budget of the aggregated cost signal.
  double aggregated_budget() const;
};

/* Parse a spec file. The document is a JSON object:
 *
 *   {
 *     "alphabet": ["blue", "green"],          // optional
 *     "specs": [
 *       {"id": "order", "formula": "!blue U green",
 *        "weight": 1.0, "budget": 0.05, "cost_mode": "pulse"}
 *     ]
 *   }
 *
 * Ids must be unique, weights and budgets nonnegative. weight defaults to 1,
 * budget to 0, cost_mode to "pulse". Without the alphabet entry, propositions
 * are collected from the formulas in first-use order. Unknown keys are
 * rejected so typos fail loudly. */
SpecSet parse_spec_set(const std::string& text);
SpecSet load_spec_set(const std::string& path);

/* Read a trace: one letter per line, true propositions space-separated, a
 * blank line meaning the empty letter. Unknown propositions are reported
 * with their 1-based line number as the offset. */
std::vector<Letter> parse_trace(std::istream& in, const logic::Alphabet& alphabet);

}  // namespace ltlrl::mon
