#include "nfagen/json_io.hpp"

#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

namespace nfagen {

namespace {

using nlohmann::json;

int require_int(const json& doc, const char* field) {
  if (!doc.contains(field)) throw ParseError(std::string("missing field \"") + field + "\"");
  const json& v = doc.at(field);
  if (!v.is_number_integer()) {
    throw ParseError(std::string("field \"") + field + "\" must be an integer");
  }
  return v.get<int>();
}

State read_state(const json& v, int n, const char* where) {
  if (!v.is_number_integer()) throw ParseError(std::string(where) + ": state must be an integer");
  const int q = v.get<int>();
  if (q < 1 || q > n) {
    throw ParseError(std::string(where) + ": state " + std::to_string(q) + " outside 1.." +
                     std::to_string(n));
  }
  return q - 1;
}

}  // namespace

ParsedAutomaton parse_automaton(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("automaton document must be a JSON object");

  const int n = require_int(doc, "n");
  const int k = require_int(doc, "alphabet");
  if (n < 1) throw ParseError("\"n\" must be positive");
  if (k < 2 || k > Alphabet::kMaxSize) throw ParseError("\"alphabet\" must be in [2, 26]");

  ParsedAutomaton out{Nfa(n, Alphabet(k)), false};
  Nfa& a = out.nfa;

  for (const char* field : {"initial", "final"}) {
    if (!doc.contains(field)) continue;
    const json& list = doc.at(field);
    if (!list.is_array()) throw ParseError(std::string("\"") + field + "\" must be an array");
    for (const json& v : list) {
      const State q = read_state(v, n, field);
      if (field[0] == 'i') {
        a.set_initial(q);
      } else {
        a.set_final(q);
      }
    }
  }

  if (doc.contains("transitions")) {
    const json& list = doc.at("transitions");
    if (!list.is_array()) throw ParseError("\"transitions\" must be an array");
    for (const json& t : list) {
      if (!t.is_array() || t.size() != 3 || !t[1].is_string()) {
        throw ParseError("each transition must be [state, \"letter\", state]");
      }
      const std::string name = t[1].get<std::string>();
      const Letter x = name.size() == 1 ? a.alphabet().letter_of(name[0]) : -1;
      if (x < 0) throw ParseError("unknown letter \"" + name + "\"");
      const State p = read_state(t[0], n, "transitions");
      const State q = read_state(t[2], n, "transitions");
      if (a.has_transition(p, x, q)) out.had_duplicates = true;
      a.add_transition(p, x, q);
    }
  }
  return out;
}

std::string serialize_automaton(const Nfa& a) {
  // Built by hand so the key order is fixed.
  std::ostringstream os;
  os << "{\"n\":" << a.num_states() << ",\"alphabet\":" << a.num_letters();
  auto write_set = [&](const char* name, const StateSet& s) {
    os << ",\"" << name << "\":[";
    bool first = true;
    for (auto q = s.find_first(); q != StateSet::npos; q = s.find_next(q)) {
      os << (first ? "" : ",") << q + 1;
      first = false;
    }
    os << "]";
  };
  write_set("initial", a.initial());
  write_set("final", a.final_states());
  os << ",\"transitions\":[";
  bool first = true;
  for (const Transition& t : a.transitions()) {
    os << (first ? "" : ",") << "[" << t.from + 1 << ",\"" << a.alphabet().letter_name(t.letter)
       << "\"," << t.to + 1 << "]";
    first = false;
  }
  os << "]}";
  return os.str();
}

std::string to_dot(const Nfa& a, std::string_view name) {
  std::ostringstream os;
  os << "digraph " << name << " {\n  rankdir=LR;\n";
  for (State q = 0; q < a.num_states(); ++q) {
    os << "  " << q + 1 << " [shape=" << (a.is_final(q) ? "doublecircle" : "circle") << "];\n";
    if (a.is_initial(q)) {
      os << "  init" << q + 1 << " [shape=point];\n  init" << q + 1 << " -> " << q + 1 << ";\n";
    }
  }
  // Parallel edges with different letters are merged into one labeled edge.
  std::map<std::pair<State, State>, std::string> labels;
  for (const Transition& t : a.transitions()) {
    std::string& l = labels[{t.from, t.to}];
    if (!l.empty()) l += ",";
    l += a.alphabet().letter_name(t.letter);
  }
  for (const auto& [edge, label] : labels) {
    os << "  " << edge.first + 1 << " -> " << edge.second + 1 << " [label=\"" << label << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace nfagen
