#include "oodn/inheritance.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace oodn {

std::string to_string(const Octant& o) {
  std::string out = o.arity == Octant::Arity::Single ? "single" : "multiple";
  out += o.extent == Octant::Extent::Full ? "/full" : "/partial";
  out += o.strength == Octant::Strength::Strong ? "/strong" : "/weak";
  return out;
}

std::optional<DegreePolicy> parse_degree_policy(std::string_view s) {
  if (s == "reject") return DegreePolicy::Reject;
  if (s == "min") return DegreePolicy::Min;
  if (s == "max") return DegreePolicy::Max;
  return std::nullopt;
}

InheritanceError::InheritanceError(Conflict conflict, std::optional<InheritancePlan> repair)
    : std::runtime_error(conflict.explanation),
      conflict_(std::move(conflict)),
      repair_(std::move(repair)) {}

CoreSplit compute_core(const std::vector<MemberSet>& sets) {
  if (sets.size() < 2) throw std::invalid_argument("compute_core needs at least two member sets");
  CoreSplit out;
  for (const auto& m : sets.front()) {
    const bool everywhere = std::all_of(sets.begin() + 1, sets.end(), [&](const MemberSet& s) {
      return s.find_item(m) != nullptr;
    });
    if (everywhere) out.core.add(m);
  }
  for (const auto& s : sets) {
    MemberSet rest;
    for (const auto& m : s) {
      if (out.core.find_item(m) == nullptr) rest.add(m);
    }
    out.remainders.push_back(std::move(rest));
  }
  return out;
}

std::size_t PlanAnalysis::index_of(const std::string& name) const {
  auto it = std::find(participants.begin(), participants.end(), name);
  return it == participants.end() ? std::string::npos
                                  : static_cast<std::size_t>(it - participants.begin());
}

MemberSet PlanAnalysis::members_of(std::size_t i) const {
  MemberSet out;
  for (const auto& a : effective.at(i)) out.add(a.member);
  return out;
}

namespace {

std::vector<Arrival> own_arrivals(const HomClass& cls) {
  std::vector<Arrival> out;
  for (const auto& m : cls.members()) out.push_back({m, {cls.name}, ""});
  return out;
}

const Arrival* find_arrival(const std::vector<Arrival>& set, const std::string& name) {
  for (const auto& a : set) {
    if (a.member.name() == name) return &a;
  }
  return nullptr;
}

// Members of `available` taken under `selection`, degrees multiplied in.
std::vector<Arrival> select(const std::vector<Arrival>& available, const Selection& selection,
                            const std::string& source, const std::string& heir,
                            std::vector<Conflict>& conflicts) {
  for (const auto& item : selection.items) {
    if (find_arrival(available, item.name) == nullptr) {
      conflicts.push_back({ConflictKind::UnknownMember,
                           {source, heir},
                           {item.name},
                           "'" + item.name + "' selected by " + heir + " is not a member of " +
                               source});
    }
  }
  std::vector<Arrival> out;
  for (const auto& a : available) {
    const SelectionItem* item = selection.find(a.member.name());
    if (selection.mode == Selection::Mode::Listed && item == nullptr) continue;
    Arrival taken = a;
    taken.via = source;
    if (item != nullptr) taken.member.degree = a.member.degree * item->degree;
    out.push_back(std::move(taken));
  }
  return out;
}

// Own members of `heir` laid over what it inherits.
std::vector<Arrival> merge_vertical(std::vector<Arrival> inherited, const std::vector<Arrival>& own,
                                    const std::string& heir, std::vector<Conflict>& conflicts) {
  std::vector<Arrival> extra;
  for (const auto& mine : own) {
    auto it = std::find_if(inherited.begin(), inherited.end(), [&](const Arrival& a) {
      return a.member.name() == mine.member.name();
    });
    if (it == inherited.end()) {
      extra.push_back(mine);
      continue;
    }
    if (similar(it->member.member, mine.member.member)) {
      Arrival kept = mine;
      kept.origins = it->origins;
      kept.origins.push_back(heir);
      *it = std::move(kept);
      continue;
    }
    const std::string strength = it->member.degree.is_strong()
                                     ? "strongly"
                                     : "weakly (degree " + to_string(it->member.degree) + ")";
    conflicts.push_back({ConflictKind::Exception,
                         {it->via, heir},
                         {mine.member.name()},
                         heir + " redeclares '" + mine.member.name() + "' inherited " + strength +
                             " from " + it->via + " with a different definition"});
    *it = mine;
  }
  for (auto& e : extra) inherited.push_back(std::move(e));
  return inherited;
}

// Union of what parallel sources offer; clashing names become conflicts.
std::vector<Arrival> merge_parallel(const std::vector<std::vector<Arrival>>& offers,
                                    const std::string& heir, DegreePolicy policy,
                                    std::vector<Conflict>& conflicts) {
  std::vector<std::string> order;
  std::map<std::string, std::vector<const Arrival*>> by_name;
  for (const auto& offer : offers) {
    for (const auto& a : offer) {
      auto& group = by_name[a.member.name()];
      if (group.empty()) order.push_back(a.member.name());
      group.push_back(&a);
    }
  }
  std::vector<Arrival> out;
  for (const auto& name : order) {
    const auto& group = by_name[name];
    Arrival kept = *group.front();
    std::vector<std::string> sources;
    for (const auto* a : group) sources.push_back(a->via);
    const bool all_similar = std::all_of(group.begin(), group.end(), [&](const Arrival* a) {
      return similar(a->member.member, kept.member.member);
    });
    if (!all_similar) {
      conflicts.push_back({ConflictKind::Ambiguity, sources, {name},
                           heir + " inherits different definitions of '" + name + "' from " +
                               std::to_string(group.size()) + " sources"});
    } else {
      const bool same_degree = std::all_of(group.begin(), group.end(), [&](const Arrival* a) {
        return a->member.degree == kept.member.degree;
      });
      if (!same_degree) {
        if (policy == DegreePolicy::Reject) {
          conflicts.push_back({ConflictKind::Ambiguity, sources, {name},
                               heir + " inherits '" + name +
                                   "' at different degrees from several sources"});
        } else {
          for (const auto* a : group) {
            const bool better = policy == DegreePolicy::Min ? a->member.degree < kept.member.degree
                                                            : kept.member.degree < a->member.degree;
            if (better) kept.member.degree = a->member.degree;
          }
        }
      }
    }
    out.push_back(std::move(kept));
  }
  return out;
}

bool check_structure(const InheritancePlan& plan, const Network& net,
                     std::vector<Conflict>& conflicts) {
  const std::size_t before = conflicts.size();
  if (plan.sources.empty()) {
    conflicts.push_back({ConflictKind::MalformedPlan, {plan.heir}, {},
                         "plan for " + plan.heir + " has no sources"});
  }
  std::set<std::string> seen{plan.heir};
  auto need_class = [&](const std::string& name) {
    if (net.find_hom(name) == nullptr) {
      conflicts.push_back({ConflictKind::UnknownClass, {name}, {},
                           "'" + name + "' is not a declared homogeneous class"});
    }
  };
  need_class(plan.heir);
  for (const auto& src : plan.sources) {
    need_class(src.name);
    if (!seen.insert(src.name).second) {
      conflicts.push_back({ConflictKind::MalformedPlan, {plan.heir, src.name}, {},
                           "'" + src.name + "' appears twice in the plan for " + plan.heir});
    }
    const auto& sel = src.selection;
    if (sel.mode == Selection::Mode::Listed && sel.items.empty()) {
      conflicts.push_back({ConflictKind::MalformedPlan, {plan.heir, src.name}, {},
                           "empty member list for source " + src.name});
    }
    std::set<std::string> names;
    for (const auto& item : sel.items) {
      if (!names.insert(item.name).second) {
        conflicts.push_back({ConflictKind::MalformedPlan, {plan.heir, src.name}, {item.name},
                             "'" + item.name + "' selected twice from " + src.name});
      }
    }
  }
  return conflicts.size() == before;
}

std::vector<std::string> participant_order(const InheritancePlan& plan) {
  std::vector<std::string> out;
  if (plan.is_parallel()) {
    for (const auto& s : plan.sources) out.push_back(s.name);
  } else {
    for (auto it = plan.sources.rbegin(); it != plan.sources.rend(); ++it) out.push_back(it->name);
  }
  out.push_back(plan.heir);
  return out;
}

}  // namespace

PlanAnalysis analyze_plan(const InheritancePlan& plan, const Network& net, DegreePolicy policy) {
  PlanAnalysis out;
  if (!check_structure(plan, net, out.conflicts)) return out;
  out.participants = participant_order(plan);
  const std::size_t n = out.participants.size();
  out.effective.resize(n);

  auto own = [&](std::size_t i) { return own_arrivals(*net.find_hom(out.participants[i])); };

  if (plan.is_parallel()) {
    std::vector<std::vector<Arrival>> offers;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      out.effective[i] = own(i);
      offers.push_back(select(out.effective[i], plan.sources[i].selection, plan.sources[i].name,
                              plan.heir, out.conflicts));
    }
    auto inherited = merge_parallel(offers, plan.heir, policy, out.conflicts);
    out.effective[n - 1] = merge_vertical(std::move(inherited), own(n - 1), plan.heir,
                                          out.conflicts);
    return out;
  }

  out.effective[0] = own(0);
  for (std::size_t k = 1; k < n; ++k) {
    const PlanSource& link = plan.sources[n - 1 - k];
    auto inherited = select(out.effective[k - 1], link.selection, link.name, out.participants[k],
                            out.conflicts);
    out.effective[k] =
        merge_vertical(std::move(inherited), own(k), out.participants[k], out.conflicts);
  }
  return out;
}

MemberSet available_from(const InheritancePlan& plan, std::size_t source_index,
                         const Network& net) {
  const std::string& name = plan.sources.at(source_index).name;
  if (plan.is_parallel()) {
    const HomClass* cls = net.find_hom(name);
    if (cls == nullptr) throw std::out_of_range("unknown class '" + name + "'");
    return cls->members();
  }
  const PlanAnalysis analysis = analyze_plan(plan, net);
  const std::size_t i = analysis.index_of(name);
  if (i == std::string::npos) throw std::out_of_range("unknown class '" + name + "'");
  return analysis.members_of(i);
}

std::optional<InheritancePlan> without_member(const InheritancePlan& plan,
                                              std::size_t source_index,
                                              const std::string& member, const Network& net) {
  InheritancePlan out = plan;
  Selection& sel = out.sources.at(source_index).selection;
  if (sel.mode == Selection::Mode::All) {
    std::vector<SelectionItem> items;
    for (const auto& m : available_from(plan, source_index, net)) {
      if (m.name() == member) continue;
      const SelectionItem* override = sel.find(m.name());
      items.push_back({m.name(), override != nullptr ? override->degree : Degree::one()});
    }
    sel = Selection::listed(std::move(items));
  } else {
    std::erase_if(sel.items, [&](const SelectionItem& i) { return i.name == member; });
  }
  if (!sel.items.empty()) return out;
  if (!plan.is_parallel()) return std::nullopt;
  out.sources.erase(out.sources.begin() + static_cast<std::ptrdiff_t>(source_index));
  if (out.sources.size() == 1) out.chain = true;
  return out;
}

HetClass assemble(const std::string& name, const std::vector<std::string>& participants,
                  const std::vector<MemberSet>& effective, bool parallel_heir) {
  const std::size_t n = participants.size();
  struct Item {
    DegreedMember member;
    std::vector<bool> in;
  };
  std::vector<Item> items;
  for (std::size_t p = 0; p < n; ++p) {
    for (const auto& m : effective[p]) {
      auto it = std::find_if(items.begin(), items.end(),
                             [&](const Item& x) { return same_item(x.member, m); });
      if (it == items.end()) {
        items.push_back({m, std::vector<bool>(n, false)});
        it = items.end() - 1;
      }
      it->in[p] = true;
    }
  }

  HetClass het;
  het.name = name;

  // Venn regions in order of first appearance; the all-participant one is the core.
  struct Region {
    std::vector<bool> in;
    MemberSet members;
    std::string label;
    std::vector<std::string> depends_on;
    bool emitted = false;
  };
  std::vector<Region> regions;
  for (const auto& item : items) {
    const bool everywhere = n >= 2 && std::all_of(item.in.begin(), item.in.end(),
                                                  [](bool b) { return b; });
    if (everywhere) {
      het.core.add(item.member);
      continue;
    }
    auto it = std::find_if(regions.begin(), regions.end(),
                           [&](const Region& r) { return r.in == item.in; });
    if (it == regions.end()) {
      regions.push_back({item.in, {}, {}, {}});
      it = regions.end() - 1;
    }
    it->members.add(item.member);
  }

  auto subset = [](const std::vector<bool>& a, const std::vector<bool>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] && !b[i]) return false;
    }
    return true;
  };
  auto label_for = [&](std::size_t p) {
    return parallel_heir && p + 1 == n ? "heir<" + participants[p] + ">" : participants[p];
  };

  // Entry projection of each participant: the region equal to the
  // intersection of all regions containing it, else a synthetic empty one.
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  constexpr std::size_t kSynthetic = static_cast<std::size_t>(-2);
  std::vector<std::size_t> entry(n, kNone);
  std::vector<std::vector<std::size_t>> regs(n);
  std::vector<bool> claimed(regions.size(), false);
  for (std::size_t p = 0; p < n; ++p) {
    std::vector<bool> meet(n, true);
    for (std::size_t r = 0; r < regions.size(); ++r) {
      if (!regions[r].in[p]) continue;
      regs[p].push_back(r);
      for (std::size_t i = 0; i < n; ++i) meet[i] = meet[i] && regions[r].in[i];
    }
    if (regs[p].empty()) continue;
    entry[p] = kSynthetic;
    for (std::size_t r : regs[p]) {
      if (regions[r].in == meet && !claimed[r]) {
        entry[p] = r;
        claimed[r] = true;
        regions[r].label = label_for(p);
      }
    }
  }
  for (auto& r : regions) {
    if (!r.label.empty()) continue;
    for (std::size_t i = 0; i < n; ++i) {
      if (!r.in[i]) continue;
      if (!r.label.empty()) r.label += "+";
      r.label += participants[i];
    }
  }
  std::vector<std::size_t> entry_owner(regions.size(), kNone);
  for (std::size_t p = 0; p < n; ++p) {
    if (entry[p] != kNone && entry[p] != kSynthetic) entry_owner[entry[p]] = p;
  }

  // Direct dependencies, dropping those already reached through another
  // participant's entry.
  auto deps_for = [&](std::size_t p) {
    std::vector<std::size_t> candidates;
    for (std::size_t r : regs[p]) {
      if (r != entry[p]) candidates.push_back(r);
    }
    std::vector<std::string> out;
    for (std::size_t d : candidates) {
      const bool covered = std::any_of(candidates.begin(), candidates.end(), [&](std::size_t e) {
        return e != d && entry_owner[e] != kNone && subset(regions[e].in, regions[d].in) &&
               regions[d].in[entry_owner[e]];
      });
      if (!covered) out.push_back(regions[d].label);
    }
    return out;
  };

  std::vector<Projection> synthetic(n);
  for (std::size_t p = 0; p < n; ++p) {
    if (entry[p] == kSynthetic) {
      synthetic[p] = {label_for(p), deps_for(p), {}};
    } else if (entry[p] != kNone) {
      regions[entry[p]].depends_on = deps_for(p);
    }
  }

  auto origin = [&](const Region& r) {
    return static_cast<std::size_t>(std::find(r.in.begin(), r.in.end(), true) - r.in.begin());
  };
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t r = 0; r < regions.size(); ++r) {
      if (regions[r].emitted || origin(regions[r]) != p || entry_owner[r] != kNone) continue;
      het.projections.push_back({regions[r].label, regions[r].depends_on, regions[r].members});
      regions[r].emitted = true;
    }
    if (entry[p] == kSynthetic) {
      het.projections.push_back(synthetic[p]);
    } else if (entry[p] != kNone && !regions[entry[p]].emitted) {
      auto& r = regions[entry[p]];
      het.projections.push_back({r.label, r.depends_on, r.members});
      r.emitted = true;
    }
  }

  for (std::size_t p = 0; p < n; ++p) {
    Participant part{participants[p], std::nullopt};
    if (entry[p] == kSynthetic) {
      part.entry = synthetic[p].label;
    } else if (entry[p] != kNone) {
      part.entry = regions[entry[p]].label;
    }
    het.participants.push_back(std::move(part));
  }
  return het;
}

HetClass inherit(const InheritancePlan& plan, const Network& net, InheritOptions options) {
  const PlanAnalysis analysis = analyze_plan(plan, net, options.policy);
  if (!analysis.conflicts.empty()) {
    const Conflict& first = analysis.conflicts.front();
    std::optional<InheritancePlan> repair;
    if (first.kind == ConflictKind::Exception) {
      for (std::size_t i = 0; i < plan.sources.size(); ++i) {
        if (plan.sources[i].name == first.subjects.front()) {
          repair = without_member(plan, i, first.members.front(), net);
        }
      }
    }
    throw InheritanceError(first, std::move(repair));
  }
  std::vector<MemberSet> effective;
  for (std::size_t i = 0; i < analysis.participants.size(); ++i) {
    effective.push_back(analysis.members_of(i));
  }
  return assemble(plan.heir, analysis.participants, effective, plan.is_parallel());
}

HetClass inherit_single(const std::vector<std::string>& chain, const Network& net) {
  if (chain.size() < 2) throw std::invalid_argument("single inheritance needs a chain of two");
  InheritancePlan plan;
  plan.heir = chain.back();
  plan.chain = true;
  for (auto it = chain.rbegin() + 1; it != chain.rend(); ++it) {
    plan.sources.push_back({*it, Selection::all()});
  }
  return inherit(plan, net);
}

HetClass inherit_multiple(const std::vector<std::string>& sources, const std::string& heir,
                          const Network& net, InheritOptions options) {
  if (sources.size() < 2) throw std::invalid_argument("multiple inheritance needs two sources");
  InheritancePlan plan;
  plan.heir = heir;
  plan.chain = false;
  for (const auto& s : sources) plan.sources.push_back({s, Selection::all()});
  return inherit(plan, net, options);
}

Octant classify_plan(const InheritancePlan& plan, const Network& net) {
  Octant o = classify_plan(plan);
  o.extent = Octant::Extent::Full;
  for (std::size_t i = 0; i < plan.sources.size(); ++i) {
    const Selection& sel = plan.sources[i].selection;
    if (sel.mode != Selection::Mode::Listed) continue;
    for (const auto& m : available_from(plan, i, net)) {
      if (sel.find(m.name()) == nullptr) o.extent = Octant::Extent::Partial;
    }
  }
  return o;
}

Octant classify_plan(const InheritancePlan& plan) {
  Octant o;
  if (plan.is_parallel()) o.arity = Octant::Arity::Multiple;
  for (const auto& s : plan.sources) {
    if (s.selection.mode == Selection::Mode::Listed) o.extent = Octant::Extent::Partial;
    if (s.selection.has_weak_degree()) o.strength = Octant::Strength::Weak;
  }
  return o;
}

MemberSet decompose(const HetClass& het, const std::string& name) {
  const Participant* part = het.find_participant(name);
  if (part == nullptr) {
    throw std::out_of_range("'" + name + "' is not a participant of " + het.name);
  }
  std::set<std::string> reached;
  std::vector<std::string> pending;
  if (part->entry) pending.push_back(*part->entry);
  while (!pending.empty()) {
    std::string label = pending.back();
    pending.pop_back();
    if (!reached.insert(label).second) continue;
    const Projection* proj = het.find_projection(label);
    if (proj == nullptr) throw std::out_of_range("dangling projection '" + label + "'");
    for (const auto& d : proj->depends_on) pending.push_back(d);
  }
  MemberSet out = het.core;
  for (const auto& proj : het.projections) {
    if (reached.count(proj.label) == 0) continue;
    for (const auto& m : proj.members) out.add(m);
  }
  return out;
}

MemberSet materialize(const Network& net, const std::string& name, InheritOptions options) {
  if (const InheritancePlan* plan = net.plan_for(name)) {
    return decompose(inherit(*plan, net, options), name);
  }
  if (const HomClass* hom = net.find_hom(name)) return hom->members();
  for (const auto& [n, entry] : net.classes) {
    const auto* het = std::get_if<HetClass>(&entry);
    if (het != nullptr && het->find_participant(name) != nullptr) return decompose(*het, name);
  }
  throw std::out_of_range("unknown class '" + name + "'");
}

std::vector<Conflict> rebuild_derived(Network& net, InheritOptions options) {
  std::vector<Conflict> failures;
  net.derived.clear();
  for (const auto& plan : net.plans) {
    try {
      net.derived[plan.heir] = inherit(plan, net, options);
    } catch (const InheritanceError& e) {
      failures.push_back(e.conflict());
    }
  }
  for (auto it = net.stale.begin(); it != net.stale.end();) {
    it = net.classes.count(*it) != 0 && net.find_het(*it) != nullptr ? std::next(it)
                                                                     : net.stale.erase(it);
  }
  return failures;
}

}  // namespace oodn
