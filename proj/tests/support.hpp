// Shared fixtures and independent oracles for the test binaries.
#ifndef OODN_TESTS_SUPPORT_HPP_
#define OODN_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "oodn/dsl.hpp"
#include "oodn/model.hpp"

namespace fixtures {

inline const char* const kClasses = R"(
class A1 {
  prop p1: int = 1;
  prop p2: int = 2;
  method f1();
  method f2();
}

class A2 {
  prop p3: int = 3;
  prop p4: int = 4;
  method f3();
}

class A3 {
  prop p5: int = 5;
  method f4();
}
)";

inline std::string with_plan(const std::string& plan) { return std::string(kClasses) + plan + "\n"; }

inline std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read " + path);
  std::stringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

#ifdef OODN_FIXTURES
inline std::string path(const std::string& name) { return std::string(OODN_FIXTURES) + "/" + name; }
inline std::string file(const std::string& name) { return read_file(path(name)); }
#endif

inline oodn::Network load(const std::string& text) {
  oodn::ParseResult r = oodn::parse(text, "<test>");
  if (!r.ok()) throw std::runtime_error(r.errors.front().message());
  return std::move(r.network);
}

}  // namespace fixtures

namespace oracle {

// A member's identity written out by hand, owner left out.
inline std::string fingerprint(const oodn::DegreedMember& dm) {
  const oodn::Member& m = dm.member;
  std::ostringstream out;
  out << m.name << '|' << oodn::format_rational(dm.degree.value()) << '|';
  if (m.is_property()) {
    const auto& p = m.as_property();
    out << "P|" << static_cast<int>(p.type) << '|' << p.value.index() << '|';
    std::visit(
        [&](const auto& v) {
          using V = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<V, oodn::FuzzySet>) {
            for (const auto& e : v.elements) {
              std::visit([&](const auto& l) { out << l; }, e.element);
              out << ':' << e.membership << ';';
            }
          } else {
            out << v;
          }
        },
        p.value);
  } else {
    const auto& f = m.as_method();
    out << "M|";
    for (const auto& param : f.params) out << param.name << ':' << static_cast<int>(param.type) << ',';
    out << '|' << (f.returns ? static_cast<int>(*f.returns) : -1);
  }
  return out.str();
}

inline std::multiset<std::string> fingerprints(const oodn::MemberSet& s) {
  std::multiset<std::string> out;
  for (const auto& m : s) out.insert(fingerprint(m));
  return out;
}

// Names whose fingerprint occurs in every set, by exhaustive comparison.
inline std::set<std::string> brute_core(const std::vector<oodn::MemberSet>& sets) {
  std::set<std::string> out;
  for (const auto& m : sets.front()) {
    const std::string fp = fingerprint(m);
    bool everywhere = true;
    for (const auto& s : sets) {
      bool here = false;
      for (const auto& other : s) here = here || fingerprint(other) == fp;
      everywhere = everywhere && here;
    }
    if (everywhere) out.insert(m.name());
  }
  return out;
}

// Generalization and plan edges searched depth-first from every node.
inline bool has_cycle(const oodn::Network& net) {
  std::map<std::string, std::set<std::string>> edges;
  for (const auto& r : net.relations) {
    if (r.kind == oodn::RelationKind::Generalization) edges[r.from].insert(r.to);
  }
  for (const auto& p : net.plans) {
    std::string below = p.heir;
    for (const auto& s : p.sources) {
      edges[below].insert(s.name);
      if (p.chain) below = s.name;
    }
  }
  std::function<bool(const std::string&, const std::string&, std::set<std::string>&)> reaches =
      [&](const std::string& from, const std::string& goal, std::set<std::string>& seen) {
        for (const auto& next : edges[from]) {
          if (next == goal) return true;
          if (seen.insert(next).second && reaches(next, goal, seen)) return true;
        }
        return false;
      };
  for (const auto& [node, out] : edges) {
    std::set<std::string> seen;
    if (reaches(node, node, seen)) return true;
  }
  return false;
}

inline std::set<std::string> own_names(const oodn::Network& net, const std::string& cls) {
  std::set<std::string> out;
  for (const auto& m : net.find_hom(cls)->members()) out.insert(m.name());
  return out;
}

// Names inherited by the heir of a full chain or parallel plan, minus what is
// required.
inline std::set<std::string> unnecessary(const oodn::Network& net, const oodn::InheritancePlan& plan,
                                         const std::set<std::string>& required) {
  std::set<std::string> out;
  for (const auto& s : plan.sources) {
    for (const auto& n : own_names(net, s.name)) {
      if (required.count(n) == 0) out.insert(n);
    }
  }
  return out;
}

// (name, owner) pairs of every participant of a full strong plan.
inline std::set<std::pair<std::string, std::string>> union_of(const oodn::Network& net,
                                                              const oodn::InheritancePlan& plan) {
  std::set<std::pair<std::string, std::string>> out;
  auto take = [&](const std::string& cls) {
    for (const auto& m : net.find_hom(cls)->members()) out.insert({m.name(), m.member.owner});
  };
  take(plan.heir);
  for (const auto& s : plan.sources) take(s.name);
  return out;
}

inline std::set<std::pair<std::string, std::string>> pairs(const oodn::MemberSet& s) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& m : s) out.insert({m.name(), m.member.owner});
  return out;
}

inline std::set<std::string> names(const oodn::MemberSet& s) {
  std::set<std::string> out;
  for (const auto& m : s) out.insert(m.name());
  return out;
}

// What the three coordinates should be, read directly off the plan text.
inline std::string expected_octant(const oodn::Network& net, const oodn::InheritancePlan& plan) {
  const bool multiple = !plan.chain && plan.sources.size() >= 2;
  bool partial = false;
  bool weak = false;
  for (std::size_t i = 0; i < plan.sources.size(); ++i) {
    const auto& s = plan.sources[i];
    for (const auto& item : s.selection.items) weak = weak || item.degree.is_weak();
    if (s.selection.mode != oodn::Selection::Mode::Listed) continue;
    std::set<std::string> offered = own_names(net, s.name);
    if (plan.chain) {
      for (std::size_t j = i + 1; j < plan.sources.size(); ++j) {
        for (const auto& n : own_names(net, plan.sources[j].name)) offered.insert(n);
      }
    }
    for (const auto& n : offered) {
      if (s.selection.find(n) == nullptr) partial = true;
    }
  }
  return std::string(multiple ? "multiple" : "single") + "/" + (partial ? "partial" : "full") +
         "/" + (weak ? "weak" : "strong");
}

// Checks text against the DOT subset: digraph ID { (node_stmt | edge_stmt) ; ... }
// with ID = identifier or quoted string and optional [key=value, ...] lists.
struct DotSummary {
  bool valid = false;
  std::set<std::string> nodes;
  std::vector<std::pair<std::string, std::string>> edges;
  std::vector<std::string> edge_labels;
};

inline DotSummary parse_dot(const std::string& text) {
  DotSummary out;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto id = [&](std::string& value) {
    skip();
    if (i >= text.size()) return false;
    if (text[i] == '"') {
      ++i;
      value.clear();
      while (i < text.size() && text[i] != '"') {
        if (text[i] == '\\' && i + 1 < text.size()) ++i;
        value += text[i++];
      }
      if (i >= text.size()) return false;
      ++i;
      return true;
    }
    const std::size_t start = i;
    while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) ++i;
    value = text.substr(start, i - start);
    return !value.empty();
  };
  auto lit = [&](const std::string& token) {
    skip();
    if (text.compare(i, token.size(), token) != 0) return false;
    i += token.size();
    return true;
  };
  auto attrs = [&](std::string* label) {
    skip();
    if (i >= text.size() || text[i] != '[') return true;
    ++i;
    for (;;) {
      std::string key;
      std::string value;
      if (!id(key) || !lit("=") || !id(value)) return false;
      if (key == "label" && label != nullptr) *label = value;
      if (lit("]")) return true;
      if (!lit(",")) return false;
    }
  };
  std::string name;
  if (!lit("digraph") || !id(name) || !lit("{")) return out;
  for (;;) {
    if (lit("}")) break;
    std::string a;
    if (!id(a)) return out;
    if (lit("->")) {
      std::string b;
      std::string label;
      if (!id(b) || !attrs(&label) || !lit(";")) return out;
      out.edges.push_back({a, b});
      out.edge_labels.push_back(label);
    } else {
      if (!attrs(nullptr) || !lit(";")) return out;
      out.nodes.insert(a);
    }
  }
  skip();
  out.valid = i == text.size();
  for (const auto& [a, b] : out.edges) {
    if (out.nodes.count(a) == 0 || out.nodes.count(b) == 0) out.valid = false;
  }
  return out;
}

}  // namespace oracle

#endif  // OODN_TESTS_SUPPORT_HPP_
