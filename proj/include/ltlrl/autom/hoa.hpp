#pragma once

#include <string>

#include "ltlrl/autom/monitor_automaton.hpp"
#include "ltlrl/autom/nba.hpp"

namespace ltlrl::autom {

/* HOA v1 serialization (output only).  Single Buchi acceptance `1 Inf(0)`,
 * explicit labeled edges. */
std::string export_hoa(const BuchiAutomaton& a, const std::string& name);

/* The monitor's language-exact automaton: the safety-monitoring good state
 * keeps its verdict in events at runtime, so for export its unsafe letters
 * are redirected to REJECT. */
std::string export_hoa(const MonitorAutomaton& m, const std::string& name);

}  // namespace ltlrl::autom
