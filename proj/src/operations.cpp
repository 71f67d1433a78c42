#include "oodn/operations.hpp"

#include <algorithm>

#include "oodn/inheritance.hpp"

namespace oodn {
namespace {

MemberSet members_or_throw(const Network& net, const std::string& name) {
  if (net.classes.count(name) == 0 && net.plan_for(name) == nullptr) {
    throw std::out_of_range("unknown class '" + name + "'");
  }
  return materialize(net, name);
}

}  // namespace

ExploiterResult exploit_union(const std::string& a, const std::string& b, const Network& net) {
  const CoreSplit split = compute_core({members_or_throw(net, a), members_or_throw(net, b)});
  HetClass het;
  het.core = split.core;
  const std::string second = a == b ? b + "#2" : b;
  het.projections.push_back({a, {}, split.remainders[0]});
  het.projections.push_back({second, {}, split.remainders[1]});
  het.participants.push_back({a, a});
  het.participants.push_back({second, second});
  return {"union", {a, b}, {het}, std::nullopt};
}

ExploiterResult exploit_intersection(const std::string& a, const std::string& b,
                                     const Network& net) {
  const CoreSplit split = compute_core({members_or_throw(net, a), members_or_throw(net, b)});
  HomClass hom;
  for (const auto& m : split.core) hom.add(m);
  return {"intersection", {a, b}, {hom}, std::nullopt};
}

InstanceVerdict exploit_instance_check(const std::string& object, const std::string& cls,
                                       const Network& net) {
  auto obj_it = net.objects.find(object);
  if (obj_it == net.objects.end()) throw std::out_of_range("unknown object '" + object + "'");
  const ObjectInstance& obj = obj_it->second;
  const MemberSet target = members_or_throw(net, cls);
  const MemberSet base = members_or_throw(net, obj.class_ref);

  // Effective property types of the object: its class, overridden by assignments.
  auto covers = [&](const Property& wanted, const std::string& name) {
    const DegreedMember* have = base.find(name);
    if (have == nullptr || !have->member.is_property()) return false;
    const Property& p = have->member.as_property();
    const PropertyValue* assigned = obj.find(name);
    return p.type == wanted.type && value_matches(wanted.type, assigned ? *assigned : p.value);
  };

  std::optional<Degree> weakest;
  for (const auto& m : target) {
    if (!m.member.is_property()) continue;
    const bool ok = covers(m.member.as_property(), m.name());
    if (m.degree.is_strong()) {
      if (!ok) return false;
    } else if (ok && (!weakest || m.degree < *weakest)) {
      weakest = m.degree;
    }
  }
  if (weakest) return *weakest;
  return true;
}

std::set<std::string> dependents_of(const Network& net, const std::string& name) {
  std::set<std::string> out;
  for (const auto& plan : net.plans) {
    const bool mentions =
        plan.heir == name || std::any_of(plan.sources.begin(), plan.sources.end(),
                                         [&](const PlanSource& s) { return s.name == name; });
    if (mentions) out.insert(plan.heir);
  }
  for (const auto& [key, entry] : net.classes) {
    const auto* het = std::get_if<HetClass>(&entry);
    if (het != nullptr && het->find_participant(name) != nullptr) out.insert(key);
  }
  return out;
}

namespace {

// Runs `change` on a copy and commits only if no new validation errors appear.
template <typename Change>
void transact(Network& net, const std::string& target, Change change) {
  Network draft = net;
  change(draft);
  const auto before = validate_network(net);
  for (const auto& v : validate_network(draft)) {
    if (!v.is_error()) continue;
    if (std::find(before.begin(), before.end(), v) == before.end()) {
      throw ModifierError("change to '" + target + "' rejected: " + v.entity + ": " + v.message);
    }
  }
  for (const auto& d : dependents_of(draft, target)) draft.stale.insert(d);
  net = std::move(draft);
}

HomClass& class_or_throw(Network& net, const std::string& cls) {
  HomClass* hom = net.find_hom(cls);
  if (hom == nullptr) throw ModifierError("unknown class '" + cls + "'");
  return *hom;
}

}  // namespace

void modify_add_member(Network& net, const std::string& cls, DegreedMember member) {
  const HomClass& current = class_or_throw(net, cls);
  if (member.name().empty()) throw ModifierError("member without a name");
  if (current.spec.contains(member.name()) || current.sig.contains(member.name())) {
    throw ModifierError("'" + member.name() + "' already declared in " + cls);
  }
  if (member.member.owner.empty()) member.member.owner = cls;
  transact(net, cls, [&](Network& draft) { class_or_throw(draft, cls).add(member); });
}

void modify_remove_member(Network& net, const std::string& cls, const std::string& member) {
  const HomClass& current = class_or_throw(net, cls);
  if (!current.spec.contains(member) && !current.sig.contains(member)) {
    throw ModifierError("'" + member + "' is not declared in " + cls);
  }
  transact(net, cls, [&](Network& draft) {
    HomClass& hom = class_or_throw(draft, cls);
    if (!hom.spec.remove(member)) hom.sig.remove(member);
  });
}

void modify_set_value(Network& net, const std::string& target, const std::string& member,
                      PropertyValue value) {
  if (auto it = net.objects.find(target); it != net.objects.end()) {
    const PropertyValue* old = it->second.find(member);
    if (old != nullptr && *old == value) return;
    transact(net, target, [&](Network& draft) {
      auto& obj = draft.objects.at(target);
      for (auto& [n, v] : obj.assignments) {
        if (n == member) {
          v = value;
          return;
        }
      }
      obj.assignments.emplace_back(member, value);
    });
    return;
  }
  const HomClass& current = class_or_throw(net, target);
  const DegreedMember* m = current.spec.find(member);
  if (m == nullptr) throw ModifierError("'" + member + "' is not a property of " + target);
  if (m->member.as_property().value == value) return;
  transact(net, target, [&](Network& draft) {
    auto* dm = class_or_throw(draft, target).spec.find(member);
    dm->member.body = Property{dm->member.as_property().type, value};
  });
}

void register_builtins(Network& net) {
  auto two_args = [](const std::vector<std::string>& args) {
    if (args.size() != 2) throw std::invalid_argument("expected two arguments");
  };
  net.exploiters["union"] = [two_args](const Network& n, const std::vector<std::string>& args) {
    two_args(args);
    return exploit_union(args[0], args[1], n);
  };
  net.exploiters["intersection"] = [two_args](const Network& n,
                                              const std::vector<std::string>& args) {
    two_args(args);
    return exploit_intersection(args[0], args[1], n);
  };
  net.exploiters["instance_check"] = [two_args](const Network& n,
                                                const std::vector<std::string>& args) {
    two_args(args);
    ExploiterResult r{"instance_check", args, {}, std::nullopt};
    const InstanceVerdict v = exploit_instance_check(args[0], args[1], n);
    if (const bool* b = std::get_if<bool>(&v)) {
      r.verdict = *b;
    } else {
      r.verdict = std::get<Degree>(v);
    }
    return r;
  };
  net.modifiers["add_member"] = [](Network& n, const ModifierRequest& req) {
    if (!req.new_member) throw ModifierError("add_member needs a member");
    modify_add_member(n, req.target, *req.new_member);
  };
  net.modifiers["remove_member"] = [](Network& n, const ModifierRequest& req) {
    modify_remove_member(n, req.target, req.member);
  };
  net.modifiers["set_value"] = [](Network& n, const ModifierRequest& req) {
    if (!req.value) throw ModifierError("set_value needs a value");
    modify_set_value(n, req.target, req.member, *req.value);
  };
}

}  // namespace oodn
