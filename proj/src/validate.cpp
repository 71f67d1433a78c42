#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "oodn/inheritance.hpp"
#include "oodn/model.hpp"

namespace oodn {
namespace {

class Checker {
 public:
  explicit Checker(const Network& net) : net_(net) {}

  std::vector<Violation> run() {
    for (const auto& [name, entry] : net_.classes) {
      if (class_name(entry) != name) {
        error(name, "class-key", "stored under '" + name + "' but named '" + class_name(entry) + "'");
      }
      if (const auto* hom = std::get_if<HomClass>(&entry)) {
        check_hom(*hom);
      } else {
        check_het(std::get<HetClass>(entry));
      }
    }
    for (const auto& [name, obj] : net_.objects) check_object(name, obj);
    for (const auto& rel : net_.relations) check_relation(rel);
    check_plans();
    check_cycles();
    return std::move(out_);
  }

 private:
  void error(const std::string& entity, const std::string& rule, const std::string& msg) {
    out_.push_back({Severity::Error, entity, rule, msg});
  }
  void warning(const std::string& entity, const std::string& rule, const std::string& msg) {
    out_.push_back({Severity::Warning, entity, rule, msg});
  }

  void check_member(const std::string& entity, const DegreedMember& m) {
    if (m.member.owner.empty()) error(entity, "member-owner", "'" + m.name() + "' has no owner");
    if (!m.member.is_property()) return;
    const Property& p = m.member.as_property();
    if (!value_matches(p.type, p.value)) {
      error(entity, "value-type",
            "'" + m.name() + "' value does not match type " + std::string(to_string(p.type)));
    }
    if (const auto* set = std::get_if<FuzzySet>(&p.value)) {
      if (auto broken = check_fuzzy_set(*set)) error(entity, "fuzzy-set", "'" + m.name() + "': " + *broken);
    }
  }

  void check_hom(const HomClass& cls) {
    for (const auto& m : cls.spec) {
      if (!m.member.is_property()) {
        error(cls.name, "spec-kind", "method '" + m.name() + "' among properties");
      }
      check_member(cls.name, m);
    }
    for (const auto& m : cls.sig) {
      if (m.member.is_property()) {
        error(cls.name, "sig-kind", "property '" + m.name() + "' in signature");
      }
      if (m.degree.is_weak()) {
        error(cls.name, "sig-degree", "method '" + m.name() + "' carries a degree");
      }
      if (cls.spec.contains(m.name())) {
        error(cls.name, "unique-name", "'" + m.name() + "' is both a property and a method");
      }
    }
    if (cls.spec.empty() && cls.sig.empty()) {
      warning(cls.name, "empty-class", "class has no properties and no methods");
    }
  }

  void check_het(const HetClass& het) {
    std::set<std::string> labels;
    for (const auto& p : het.projections) {
      if (!labels.insert(p.label).second) {
        error(het.name, "projection-label", "duplicate projection '" + p.label + "'");
      }
    }
    for (const auto& m : het.core) check_member(het.name, m);
    for (std::size_t i = 0; i < het.projections.size(); ++i) {
      const auto& p = het.projections[i];
      for (const auto& m : p.members) {
        check_member(het.name, m);
        if (het.core.contains(m.name())) {
          error(het.name, "core-disjoint",
                "'" + m.name() + "' is in the core and in projection '" + p.label + "'");
        }
        for (std::size_t j = 0; j < i; ++j) {
          const DegreedMember* other = het.projections[j].members.find(m.name());
          if (other != nullptr && same_item(*other, m)) {
            error(het.name, "projection-disjoint",
                  "'" + m.name() + "' appears in '" + het.projections[j].label + "' and '" +
                      p.label + "' as the same member");
          }
        }
      }
      for (const auto& d : p.depends_on) {
        if (labels.count(d) == 0) {
          error(het.name, "depends-on", "'" + p.label + "' depends on unknown '" + d + "'");
        }
      }
    }
    // depends_on must be acyclic.
    std::map<std::string, int> state;
    std::function<bool(const std::string&)> visit = [&](const std::string& label) {
      int& s = state[label];
      if (s == 1) return false;
      if (s == 2) return true;
      s = 1;
      if (const Projection* p = het.find_projection(label)) {
        for (const auto& d : p->depends_on) {
          if (!visit(d)) return false;
        }
      }
      state[label] = 2;
      return true;
    };
    for (const auto& p : het.projections) {
      if (!visit(p.label)) {
        error(het.name, "depends-on-cycle", "projection dependencies form a cycle");
        break;
      }
    }
    for (const auto& part : het.participants) {
      if (part.entry && labels.count(*part.entry) == 0) {
        error(het.name, "participant-entry",
              "participant '" + part.name + "' starts at unknown projection '" + *part.entry + "'");
      }
    }
  }

  void check_object(const std::string& name, const ObjectInstance& obj) {
    if (obj.name != name) error(name, "object-key", "stored under '" + name + "' but named '" + obj.name + "'");
    if (net_.classes.count(obj.class_ref) == 0) {
      error(name, "dangling-class-ref", "dangling class_ref \"" + obj.class_ref + "\"");
      return;
    }
    MemberSet members;
    try {
      members = materialize(net_, obj.class_ref);
    } catch (const std::exception& e) {
      error(name, "class-ref", std::string("class '") + obj.class_ref + "' cannot be built: " + e.what());
      return;
    }
    for (const auto& [member, value] : obj.assignments) {
      const DegreedMember* m = members.find(member);
      if (m == nullptr || !m->member.is_property()) {
        error(name, "assignment", "'" + member + "' is not a property of " + obj.class_ref);
        continue;
      }
      if (!value_matches(m->member.as_property().type, value)) {
        error(name, "assignment-type", "'" + member + "' value does not match its property type");
      }
      if (const auto* set = std::get_if<FuzzySet>(&value)) {
        if (auto broken = check_fuzzy_set(*set)) error(name, "fuzzy-set", "'" + member + "': " + *broken);
      }
    }
  }

  void check_relation(const Relation& rel) {
    const std::string entity = std::string(to_string(rel.kind)) + " " + rel.from + " -> " + rel.to;
    for (const auto* end : {&rel.from, &rel.to}) {
      if (!net_.has_entity(*end)) error(entity, "dangling-endpoint", "unknown entity '" + *end + "'");
    }
    if (rel.kind == RelationKind::InstanceOf &&
        (net_.objects.count(rel.from) == 0 || net_.classes.count(rel.to) == 0)) {
      error(entity, "instance-of", "instance_of must link an object to a class");
    }
    if (rel.kind == RelationKind::Generalization &&
        (net_.classes.count(rel.from) == 0 || net_.classes.count(rel.to) == 0)) {
      error(entity, "generalization", "generalization must link two classes");
    }
    if (rel.kind == RelationKind::Association && rel.label.empty()) {
      error(entity, "association-label", "association needs a label");
    }
  }

  void check_plans() {
    std::set<std::string> heirs;
    for (const auto& plan : net_.plans) {
      const std::string entity = "plan " + plan.heir;
      if (!heirs.insert(plan.heir).second) {
        error(entity, "one-plan-per-heir", "'" + plan.heir + "' is the heir of more than one plan");
      }
      for (const auto& c : analyze_plan(plan, net_).conflicts) {
        const bool hard = c.kind == ConflictKind::UnknownClass ||
                          c.kind == ConflictKind::UnknownMember ||
                          c.kind == ConflictKind::MalformedPlan;
        if (hard) {
          error(entity, "plan", c.explanation);
        } else {
          warning(entity, "plan-conflict", c.explanation);
        }
      }
    }
  }

  // Generalization links and plan links (heir -> source) must not loop.
  void check_cycles() {
    std::map<std::string, std::vector<std::string>> edges;
    for (const auto& rel : net_.relations) {
      if (rel.kind == RelationKind::Generalization) edges[rel.from].push_back(rel.to);
    }
    for (const auto& plan : net_.plans) {
      std::string below = plan.heir;
      for (const auto& src : plan.sources) {
        edges[below].push_back(src.name);
        if (plan.chain) below = src.name;
      }
    }
    std::map<std::string, int> state;
    std::vector<std::string> stack;
    std::set<std::set<std::string>> reported;
    std::function<void(const std::string&)> visit = [&](const std::string& node) {
      state[node] = 1;
      stack.push_back(node);
      for (const auto& next : edges[node]) {
        if (state[next] == 1) {
          auto start = std::find(stack.begin(), stack.end(), next);
          std::vector<std::string> cycle(start, stack.end());
          std::set<std::string> key(cycle.begin(), cycle.end());
          if (reported.insert(key).second) {
            std::string path;
            for (const auto& c : cycle) path += c + " -> ";
            error(cycle.front(), "generalization-cycle", "cycle " + path + next);
          }
        } else if (state[next] == 0) {
          visit(next);
        }
      }
      stack.pop_back();
      state[node] = 2;
    };
    for (const auto& [node, targets] : edges) {
      if (state[node] == 0) visit(node);
    }
  }

  const Network& net_;
  std::vector<Violation> out_;
};

}  // namespace

std::vector<Violation> validate_network(const Network& net) { return Checker(net).run(); }

}  // namespace oodn
