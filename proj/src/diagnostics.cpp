#include "oodn/diagnostics.hpp"

#include <algorithm>
#include <sstream>

#include "oodn/dsl.hpp"

namespace oodn {

std::string_view to_string(DiagnosticKind k) {
  switch (k) {
    case DiagnosticKind::Exception: return "exception";
    case DiagnosticKind::Redundancy: return "redundancy";
    case DiagnosticKind::Ambiguity: return "ambiguity";
  }
  return "?";
}

namespace {

std::size_t source_index(const InheritancePlan& plan, const std::string& name) {
  for (std::size_t i = 0; i < plan.sources.size(); ++i) {
    if (plan.sources[i].name == name) return i;
  }
  return std::string::npos;
}

// Applies without_member for each (source, member) pair in turn; indices are
// looked up again each time since sources can disappear.
std::optional<InheritancePlan> exclude_all(
    InheritancePlan plan, const std::vector<std::pair<std::string, std::string>>& exclusions,
    const Network& net) {
  for (const auto& [source, member] : exclusions) {
    const std::size_t i = source_index(plan, source);
    if (i == std::string::npos) continue;
    auto next = without_member(plan, i, member, net);
    if (!next) return std::nullopt;
    plan = std::move(*next);
  }
  return plan;
}

bool fuzzy_property(const DegreedMember* m) {
  return m != nullptr && m->member.is_property() && is_fuzzy_value(m->member.as_property().value);
}

// The plan with `member` taken from `source` at half its current degree.
InheritancePlan weakened(InheritancePlan plan, std::size_t source, const std::string& member) {
  Selection& sel = plan.sources[source].selection;
  for (auto& item : sel.items) {
    if (item.name == member) {
      item.degree = item.degree * Degree(1, 2);
      return plan;
    }
  }
  sel.items.push_back({member, Degree(1, 2)});
  return plan;
}

}  // namespace

std::vector<Diagnostic> detect_exception(const InheritancePlan& plan, const Network& net) {
  std::vector<Diagnostic> out;
  const PlanAnalysis analysis = analyze_plan(plan, net);
  for (const auto& c : analysis.conflicts) {
    if (c.kind != ConflictKind::Exception) continue;
    const std::string& source = c.subjects[0];
    const std::string& heir = c.subjects[1];
    const std::string& name = c.members.front();
    Diagnostic d{DiagnosticKind::Exception, plan.heir, c.subjects, c.members, c.explanation,
                 std::nullopt, {}};
    const std::size_t i = source_index(plan, source);
    if (i != std::string::npos) {
      d.suggestion = without_member(plan, i, name, net);
      const MemberSet offered = available_from(plan, i, net);
      const HomClass* heir_class = net.find_hom(heir);
      const DegreedMember* own = heir_class != nullptr ? heir_class->spec.find(name) : nullptr;
      if (fuzzy_property(offered.find(name)) || fuzzy_property(own)) {
        d.alternatives.push_back({weakened(plan, i, name),
                                  {name},
                                  "drop " + heir + "'s own '" + name + "' and inherit it weakly"});
      }
    }
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<Diagnostic> detect_redundancy(const InheritancePlan& plan, const Network& net,
                                          const std::optional<std::set<std::string>>& required) {
  std::vector<Diagnostic> out;
  const PlanAnalysis analysis = analyze_plan(plan, net);
  if (analysis.participants.empty()) return out;
  const std::size_t heir = analysis.participants.size() - 1;
  const std::vector<Arrival>& arrived = analysis.effective[heir];

  if (required) {
    std::set<std::string> available;
    std::vector<MemberSet> offers;
    const std::size_t links = plan.is_parallel() ? plan.sources.size() : 1;
    for (std::size_t i = 0; i < links; ++i) {
      offers.push_back(available_from(plan, i, net));
      for (const auto& n : offers.back().names()) available.insert(n);
    }
    for (const auto& r : *required) {
      if (available.count(r) == 0) {
        throw DiagnosticError("required member '" + r + "' is not offered to " + plan.heir +
                              " by any source");
      }
    }
    std::vector<std::string> unnecessary;
    for (const auto& a : arrived) {
      if (!a.via.empty() && required->count(a.member.name()) == 0) {
        unnecessary.push_back(a.member.name());
      }
    }
    if (unnecessary.empty()) return out;

    InheritancePlan fixed = plan;
    std::set<std::string> assigned;
    std::vector<PlanSource> kept;
    for (std::size_t i = 0; i < fixed.sources.size(); ++i) {
      if (i >= links) {
        kept.push_back(fixed.sources[i]);
        continue;
      }
      const Selection& old = fixed.sources[i].selection;
      std::vector<SelectionItem> items;
      for (const auto& m : offers[i]) {
        if (required->count(m.name()) == 0 || assigned.count(m.name()) != 0) continue;
        const SelectionItem* prior = old.find(m.name());
        items.push_back({m.name(), prior != nullptr ? prior->degree : Degree::one()});
        assigned.insert(m.name());
      }
      if (!items.empty()) kept.push_back({fixed.sources[i].name, Selection::listed(items)});
    }
    std::optional<InheritancePlan> suggestion;
    if (kept.size() == fixed.sources.size() || (plan.is_parallel() && !kept.empty())) {
      fixed.sources = std::move(kept);
      if (fixed.sources.size() == 1) fixed.chain = true;
      suggestion = std::move(fixed);
    }
    std::vector<std::string> subjects;
    for (std::size_t i = 0; i < links; ++i) subjects.push_back(plan.sources[i].name);
    subjects.push_back(plan.heir);
    out.push_back({DiagnosticKind::Redundancy, plan.heir, subjects, unnecessary,
                   plan.heir + " inherits " + std::to_string(unnecessary.size()) +
                       " member(s) it does not require",
                   std::move(suggestion),
                   {}});
    return out;
  }

  for (const auto& a : arrived) {
    if (a.origins.size() < 2) continue;
    // Cut the member at every link whose lower end declares it again.
    std::vector<std::pair<std::string, std::string>> cuts;
    for (std::size_t k = 1; k < a.origins.size(); ++k) {
      const std::size_t level = analysis.index_of(a.origins[k]);
      std::string parent;
      if (plan.is_parallel()) {
        parent = a.origins[0];
      } else if (level != std::string::npos && level > 0) {
        parent = analysis.participants[level - 1];
      }
      if (!parent.empty()) cuts.emplace_back(parent, a.member.name());
    }
    out.push_back({DiagnosticKind::Redundancy, plan.heir, a.origins, {a.member.name()},
                   "'" + a.member.name() + "' arrives at " + plan.heir + " from " +
                       std::to_string(a.origins.size()) + " levels that declare it alike",
                   exclude_all(plan, cuts, net),
                   {}});
  }
  return out;
}

std::vector<Diagnostic> detect_ambiguity(const InheritancePlan& plan, const Network& net,
                                         DegreePolicy policy) {
  std::vector<Diagnostic> out;
  if (!plan.is_parallel()) return out;
  const PlanAnalysis analysis = analyze_plan(plan, net, policy);
  for (const auto& c : analysis.conflicts) {
    if (c.kind != ConflictKind::Ambiguity) continue;
    const std::string& name = c.members.front();
    auto keep_only = [&](const std::string& keeper) {
      std::vector<std::pair<std::string, std::string>> cuts;
      for (const auto& s : c.subjects) {
        if (s != keeper) cuts.emplace_back(s, name);
      }
      return exclude_all(plan, cuts, net);
    };
    Diagnostic d{DiagnosticKind::Ambiguity, plan.heir, c.subjects, c.members, c.explanation,
                 keep_only(c.subjects.front()), {}};
    for (const auto& s : c.subjects) {
      if (auto alt = keep_only(s)) {
        d.alternatives.push_back({std::move(*alt), {}, "keep '" + name + "' from " + s});
      }
    }
    out.push_back(std::move(d));
  }
  return out;
}

namespace {

std::vector<Diagnostic> diagnose_plan(const InheritancePlan& plan, const Network& net,
                                      const std::optional<std::set<std::string>>& required,
                                      DegreePolicy policy) {
  std::vector<Diagnostic> out = detect_exception(plan, net);
  for (auto& d : detect_redundancy(plan, net, required)) out.push_back(std::move(d));
  for (auto& d : detect_ambiguity(plan, net, policy)) out.push_back(std::move(d));
  std::stable_sort(out.begin(), out.end(), [](const Diagnostic& a, const Diagnostic& b) {
    const std::string& ma = a.members.empty() ? std::string() : a.members.front();
    const std::string& mb = b.members.empty() ? std::string() : b.members.front();
    if (ma != mb) return ma < mb;
    return a.kind < b.kind;
  });
  return out;
}

}  // namespace

std::vector<Diagnostic> diagnose_all(const Network& net,
                                     const std::optional<std::set<std::string>>& required,
                                     DegreePolicy policy) {
  std::vector<Diagnostic> out;
  for (const auto& plan : net.plans) {
    for (auto& d : diagnose_plan(plan, net, required, policy)) out.push_back(std::move(d));
  }
  return out;
}

std::size_t apply_suggestions(Network& net, const std::optional<std::set<std::string>>& required,
                              DegreePolicy policy) {
  constexpr int kMaxRounds = 64;
  std::size_t rewrites = 0;
  for (auto& plan : net.plans) {
    for (int round = 0; round < kMaxRounds; ++round) {
      const auto found = diagnose_plan(plan, net, required, policy);
      auto it = std::find_if(found.begin(), found.end(),
                             [](const Diagnostic& d) { return d.suggestion.has_value(); });
      if (it == found.end()) break;
      plan = *it->suggestion;
      ++rewrites;
    }
  }
  return rewrites;
}

std::string render_report(const std::vector<Diagnostic>& diagnostics) {
  std::ostringstream out;
  for (const auto& d : diagnostics) {
    out << to_string(d.kind) << ": plan " << d.plan << ": ";
    for (std::size_t i = 0; i < d.members.size(); ++i) out << (i ? ", " : "") << d.members[i];
    out << ": " << d.explanation << " [";
    for (std::size_t i = 0; i < d.subjects.size(); ++i) out << (i ? ", " : "") << d.subjects[i];
    out << "]\n";
    if (d.suggestion) out << "  suggestion: " << format_plan(*d.suggestion) << "\n";
    for (const auto& alt : d.alternatives) {
      out << "  alternative: " << format_plan(alt.plan) << "  // " << alt.note << "\n";
    }
  }
  out << diagnostics.size() << " diagnostic(s)\n";
  return out.str();
}

}  // namespace oodn
