#include "ltlrl/autom/hoa.hpp"

#include <sstream>

#include "ltlrl/errors.hpp"

namespace ltlrl::autom {

using logic::Op;

namespace {

/* HOA label expression: AP indices with ! & | and t/f constants. */
void label_rec(const Formula& f, int ctx, std::string& out) {
  switch (f.op()) {
    case Op::True: out += 't'; return;
    case Op::False: out += 'f'; return;
    case Op::Atom: out += std::to_string(f.ap()); return;
    case Op::Not:
      out += '!';
      label_rec(f.lhs(), 3, out);
      return;
    case Op::And:
    case Op::Or: {
      int p = f.is(Op::And) ? 2 : 1;
      bool paren = p < ctx;
      if (paren) out += '(';
      label_rec(f.lhs(), p, out);
      out += f.is(Op::And) ? " & " : " | ";
      label_rec(f.rhs(), p + 1, out);
      if (paren) out += ')';
      return;
    }
    default:
      throw Error("HOA labels must be propositional: " + f.str());
  }
}

std::string label(const Formula& f) {
  std::string out;
  label_rec(f, 0, out);
  return out;
}

void header(std::ostringstream& os, const std::string& name, std::size_t n_states,
            std::size_t start, const std::vector<std::string>& aps,
            const std::string& extra_props) {
  os << "HOA: v1\n";
  os << "name: \"" << name << "\"\n";
  os << "States: " << n_states << "\n";
  os << "Start: " << start << "\n";
  os << "AP: " << aps.size();
  for (const auto& ap : aps) os << " \"" << ap << "\"";
  os << "\n";
  os << "acc-name: Buchi\n";
  os << "Acceptance: 1 Inf(0)\n";
  os << "properties: trans-labels explicit-labels state-acc" << extra_props << "\n";
  os << "--BODY--\n";
}

}  // namespace

std::string export_hoa(const BuchiAutomaton& a, const std::string& name) {
  std::ostringstream os;
  header(os, name, a.num_states(), a.initial, a.ap_names, "");
  for (std::size_t s = 0; s < a.num_states(); ++s) {
    os << "State: " << s;
    if (a.accepting[s]) os << " {0}";
    os << "\n";
    for (const auto& e : a.edges[s]) {
      if (e.guard.is(Op::False)) continue;
      os << "[" << label(e.guard) << "] " << e.dst << "\n";
    }
  }
  os << "--END--\n";
  return os.str();
}

std::string export_hoa(const MonitorAutomaton& m, const std::string& name) {
  std::ostringstream os;
  header(os, name, m.num_states(), m.initial_state(), m.ap_names(),
         " deterministic complete");
  for (std::size_t s = 0; s < m.num_states(); ++s) {
    os << "State: " << s << " \"" << m.state_name(s) << "\"";
    if (s == m.good_state()) os << " {0}";
    os << "\n";
    for (const auto& e : m.edges_from(s)) {
      if (e.guard.is(Op::False)) continue;
      std::size_t dst = e.dst;
      if (s == m.good_state() && e.event == MonitorEvent::Violation)
        dst = m.reject_state();  // make the reject verdict a real transition
      os << "[" << label(e.guard) << "] " << dst << "\n";
    }
  }
  os << "--END--\n";
  return os.str();
}

}  // namespace ltlrl::autom
