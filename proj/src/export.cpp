#include "oodn/export.hpp"

#include <sstream>

#include <json.hpp>

#include "oodn/dsl.hpp"
#include "oodn/inheritance.hpp"
#include "oodn/operations.hpp"

namespace oodn {

using Json = nlohmann::ordered_json;

namespace {

Rational parse_rational_text(const std::string& s) {
  const auto slash = s.find('/');
  auto decimal = [](const std::string& d) {
    const bool negative = !d.empty() && d[0] == '-';
    std::string body = negative ? d.substr(1) : d;
    const auto dot = body.find('.');
    std::int64_t den = 1;
    if (dot != std::string::npos) {
      for (std::size_t i = dot + 1; i < body.size(); ++i) den *= 10;
      body.erase(dot, 1);
    }
    if (body.empty() || body.size() > 18 ||
        body.find_first_not_of("0123456789") != std::string::npos) {
      throw std::invalid_argument("bad rational '" + d + "'");
    }
    const std::int64_t num = std::stoll(body);
    return Rational(negative ? -num : num, den);
  };
  if (slash == std::string::npos) return decimal(s);
  const Rational den = decimal(s.substr(slash + 1));
  if (den == Rational(0)) throw std::invalid_argument("zero denominator in '" + s + "'");
  return decimal(s.substr(0, slash)) / den;
}

Json label_json(const FuzzyLabel& l) {
  if (const auto* i = std::get_if<std::int64_t>(&l)) return *i;
  if (const auto* d = std::get_if<double>(&l)) return *d;
  return std::get<std::string>(l);
}

FuzzyLabel label_from(const Json& j) {
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_number_float()) return j.get<double>();
  if (j.is_string()) return j.get<std::string>();
  throw std::invalid_argument("bad fuzzy-set element");
}

const char* value_kind(const PropertyValue& v) {
  switch (v.index()) {
    case 0: return "int";
    case 1: return "real";
    case 2: return "text";
    case 3: return "bool";
    default: return "fuzzy";
  }
}

Json value_json(const PropertyValue& v) {
  Json out;
  out["type"] = value_kind(v);
  if (const auto* i = std::get_if<std::int64_t>(&v)) {
    out["value"] = *i;
  } else if (const auto* d = std::get_if<double>(&v)) {
    out["value"] = *d;
  } else if (const auto* s = std::get_if<std::string>(&v)) {
    out["value"] = *s;
  } else if (const auto* b = std::get_if<bool>(&v)) {
    out["value"] = *b;
  } else {
    Json elems = Json::array();
    for (const auto& e : std::get<FuzzySet>(v).elements) {
      elems.push_back({{"element", label_json(e.element)},
                       {"membership", format_rational(e.membership)}});
    }
    out["value"] = elems;
  }
  return out;
}

PropertyValue value_from(const Json& j) {
  const std::string type = j.at("type").get<std::string>();
  const Json& v = j.at("value");
  if (type == "int") return v.get<std::int64_t>();
  if (type == "real") return v.get<double>();
  if (type == "text") return v.get<std::string>();
  if (type == "bool") return v.get<bool>();
  if (type == "fuzzy") {
    FuzzySet set;
    for (const auto& e : v) {
      set.elements.push_back(
          {label_from(e.at("element")), parse_rational_text(e.at("membership").get<std::string>())});
    }
    return set;
  }
  throw std::invalid_argument("unknown value type '" + type + "'");
}

TypeTag tag_from(const Json& j) {
  auto t = parse_type_tag(j.get<std::string>());
  if (!t) throw std::invalid_argument("unknown type tag");
  return *t;
}

Json member_json(const DegreedMember& m) {
  Json out;
  out["name"] = m.name();
  out["owner"] = m.member.owner;
  out["kind"] = m.member.is_property() ? "property" : "method";
  out["degree"] = to_string(m.degree);
  if (m.member.is_property()) {
    const Property& p = m.member.as_property();
    out["type"] = std::string(to_string(p.type));
    out["value"] = value_json(p.value);
  } else {
    const Method& f = m.member.as_method();
    Json params = Json::array();
    for (const auto& p : f.params) params.push_back({{"name", p.name}, {"type", to_string(p.type)}});
    out["params"] = params;
    out["returns"] = f.returns ? Json(std::string(to_string(*f.returns))) : Json(nullptr);
  }
  return out;
}

DegreedMember member_from(const Json& j) {
  DegreedMember m;
  const std::string name = j.at("name").get<std::string>();
  const std::string owner = j.at("owner").get<std::string>();
  m.degree = Degree(parse_rational_text(j.at("degree").get<std::string>()));
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "property") {
    m.member = Member::property(name, owner, tag_from(j.at("type")), value_from(j.at("value")));
  } else if (kind == "method") {
    std::vector<Parameter> params;
    for (const auto& p : j.at("params")) {
      params.push_back({p.at("name").get<std::string>(), tag_from(p.at("type"))});
    }
    std::optional<TypeTag> returns;
    if (!j.at("returns").is_null()) returns = tag_from(j.at("returns"));
    m.member = Member::method(name, owner, std::move(params), returns);
  } else {
    throw std::invalid_argument("unknown member kind '" + kind + "'");
  }
  return m;
}

Json members_json(const MemberSet& set) {
  Json out = Json::array();
  for (const auto& m : set) out.push_back(member_json(m));
  return out;
}

MemberSet members_from(const Json& j) {
  MemberSet out;
  for (const auto& m : j) out.add(member_from(m));
  return out;
}

Json het_json(const HetClass& het) {
  Json out;
  out["kind"] = "heterogeneous";
  out["name"] = het.name;
  out["core"] = members_json(het.core);
  Json projections = Json::array();
  for (const auto& p : het.projections) {
    projections.push_back(
        {{"label", p.label}, {"depends_on", p.depends_on}, {"members", members_json(p.members)}});
  }
  out["projections"] = projections;
  Json participants = Json::array();
  for (const auto& p : het.participants) {
    participants.push_back({{"name", p.name}, {"entry", p.entry ? Json(*p.entry) : Json(nullptr)}});
  }
  out["participants"] = participants;
  return out;
}

HetClass het_from(const Json& j) {
  HetClass het;
  het.name = j.at("name").get<std::string>();
  het.core = members_from(j.at("core"));
  for (const auto& p : j.at("projections")) {
    het.projections.push_back({p.at("label").get<std::string>(),
                               p.at("depends_on").get<std::vector<std::string>>(),
                               members_from(p.at("members"))});
  }
  for (const auto& p : j.at("participants")) {
    Participant part{p.at("name").get<std::string>(), std::nullopt};
    if (!p.at("entry").is_null()) part.entry = p.at("entry").get<std::string>();
    het.participants.push_back(std::move(part));
  }
  return het;
}

Json class_json(const ClassEntry& c) {
  if (const auto* het = std::get_if<HetClass>(&c)) return het_json(*het);
  const auto& hom = std::get<HomClass>(c);
  Json out;
  out["kind"] = "homogeneous";
  out["name"] = hom.name;
  out["spec"] = members_json(hom.spec);
  out["sig"] = members_json(hom.sig);
  return out;
}

Json plan_json(const InheritancePlan& plan, const Network* net) {
  Json out;
  out["heir"] = plan.heir;
  out["chain"] = plan.chain;
  Octant octant = classify_plan(plan);
  if (net != nullptr) {
    try {
      octant = classify_plan(plan, *net);
    } catch (const std::exception&) {
    }
  }
  out["octant"] = to_string(octant);
  Json sources = Json::array();
  for (const auto& s : plan.sources) {
    Json items = Json::array();
    for (const auto& i : s.selection.items) {
      items.push_back({{"name", i.name}, {"degree", to_string(i.degree)}});
    }
    sources.push_back({{"name", s.name},
                       {"mode", s.selection.mode == Selection::Mode::All ? "all" : "listed"},
                       {"items", items}});
  }
  out["sources"] = sources;
  return out;
}

InheritancePlan plan_from(const Json& j) {
  InheritancePlan plan;
  plan.heir = j.at("heir").get<std::string>();
  plan.chain = j.at("chain").get<bool>();
  for (const auto& s : j.at("sources")) {
    PlanSource src;
    src.name = s.at("name").get<std::string>();
    const std::string mode = s.at("mode").get<std::string>();
    if (mode != "all" && mode != "listed") throw std::invalid_argument("bad selection mode");
    src.selection.mode = mode == "all" ? Selection::Mode::All : Selection::Mode::Listed;
    for (const auto& i : s.at("items")) {
      src.selection.items.push_back(
          {i.at("name").get<std::string>(),
           Degree(parse_rational_text(i.at("degree").get<std::string>()))});
    }
    plan.sources.push_back(std::move(src));
  }
  return plan;
}

Json network_json(const Network& net) {
  Json out;
  Json objects = Json::array();
  for (const auto& [name, obj] : net.objects) {
    Json assignments = Json::array();
    for (const auto& [member, value] : obj.assignments) {
      assignments.push_back({{"name", member}, {"value", value_json(value)}});
    }
    objects.push_back({{"name", name}, {"class", obj.class_ref}, {"assignments", assignments}});
  }
  out["objects"] = objects;
  Json classes = Json::array();
  for (const auto& [name, c] : net.classes) classes.push_back(class_json(c));
  out["classes"] = classes;
  Json relations = Json::array();
  for (const auto& r : net.relations) {
    relations.push_back({{"kind", to_string(r.kind)},
                         {"label", r.label},
                         {"from", r.from},
                         {"to", r.to},
                         {"degree", r.degree ? Json(to_string(*r.degree)) : Json(nullptr)}});
  }
  out["relations"] = relations;
  Json exploiters = Json::array();
  for (const auto& [name, fn] : net.exploiters) exploiters.push_back(name);
  out["exploiters"] = exploiters;
  Json modifiers = Json::array();
  for (const auto& [name, fn] : net.modifiers) modifiers.push_back(name);
  out["modifiers"] = modifiers;
  if (!net.plans.empty()) {
    Json plans = Json::array();
    for (const auto& p : net.plans) plans.push_back(plan_json(p, &net));
    out["plans"] = plans;
  }
  return out;
}

}  // namespace

std::string export_structured(const Network& net) { return network_json(net).dump(2) + "\n"; }

std::string export_structured(const HetClass& het) { return het_json(het).dump(2) + "\n"; }

std::string export_structured(const MemberSet& members) {
  return members_json(members).dump(2) + "\n";
}

std::string export_structured(const std::vector<Diagnostic>& diagnostics) {
  Json out = Json::array();
  for (const auto& d : diagnostics) {
    Json alternatives = Json::array();
    for (const auto& a : d.alternatives) {
      alternatives.push_back(
          {{"plan", plan_json(a.plan, nullptr)}, {"drop_own", a.drop_own}, {"note", a.note}});
    }
    out.push_back({{"kind", to_string(d.kind)},
                   {"plan", d.plan},
                   {"subjects", d.subjects},
                   {"members", d.members},
                   {"explanation", d.explanation},
                   {"suggestion", d.suggestion ? plan_json(*d.suggestion, nullptr) : Json(nullptr)},
                   {"alternatives", alternatives}});
  }
  return out.dump(2) + "\n";
}

Network import_network(std::string_view text) {
  try {
    const Json j = Json::parse(text);
    Network net;
    for (const auto& o : j.at("objects")) {
      ObjectInstance obj;
      obj.name = o.at("name").get<std::string>();
      obj.class_ref = o.at("class").get<std::string>();
      for (const auto& a : o.at("assignments")) {
        obj.assignments.emplace_back(a.at("name").get<std::string>(), value_from(a.at("value")));
      }
      net.objects.emplace(obj.name, std::move(obj));
    }
    for (const auto& c : j.at("classes")) {
      const std::string kind = c.at("kind").get<std::string>();
      if (kind == "heterogeneous") {
        HetClass het = het_from(c);
        net.classes.emplace(het.name, std::move(het));
      } else if (kind == "homogeneous") {
        HomClass hom;
        hom.name = c.at("name").get<std::string>();
        hom.spec = members_from(c.at("spec"));
        hom.sig = members_from(c.at("sig"));
        net.classes.emplace(hom.name, std::move(hom));
      } else {
        throw std::invalid_argument("unknown class kind '" + kind + "'");
      }
    }
    for (const auto& r : j.at("relations")) {
      auto kind = parse_relation_kind(r.at("kind").get<std::string>());
      if (!kind) throw std::invalid_argument("unknown relation kind");
      Relation rel{*kind, r.at("label").get<std::string>(), r.at("from").get<std::string>(),
                   r.at("to").get<std::string>(), std::nullopt};
      if (!r.at("degree").is_null()) {
        rel.degree = Degree(parse_rational_text(r.at("degree").get<std::string>()));
      }
      net.relations.push_back(std::move(rel));
    }
    if (j.contains("plans")) {
      for (const auto& p : j.at("plans")) net.plans.push_back(plan_from(p));
    }
    Network builtins;
    register_builtins(builtins);
    for (const auto& name : j.at("exploiters")) {
      auto it = builtins.exploiters.find(name.get<std::string>());
      if (it == builtins.exploiters.end()) throw std::invalid_argument("unknown exploiter");
      net.exploiters.insert(*it);
    }
    for (const auto& name : j.at("modifiers")) {
      auto it = builtins.modifiers.find(name.get<std::string>());
      if (it == builtins.modifiers.end()) throw std::invalid_argument("unknown modifier");
      net.modifiers.insert(*it);
    }
    return net;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed network document: ") + e.what());
  } catch (const InvariantError& e) {
    throw std::invalid_argument(std::string("invalid network document: ") + e.what());
  }
}

HetClass import_het(std::string_view text) {
  try {
    return het_from(Json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed class document: ") + e.what());
  } catch (const InvariantError& e) {
    throw std::invalid_argument(std::string("invalid class document: ") + e.what());
  }
}

namespace {

std::string dot_id(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string export_graph(const Network& net) {
  std::ostringstream out;
  out << "digraph oodn {\n";
  for (const auto& [name, c] : net.classes) {
    out << "  " << dot_id(name) << " [shape="
        << (std::holds_alternative<HetClass>(c) ? "box3d" : "box") << "];\n";
  }
  for (const auto& [name, obj] : net.objects) {
    out << "  " << dot_id(name) << " [shape=ellipse];\n";
  }
  for (const auto& plan : net.plans) {
    Octant octant = classify_plan(plan);
    try {
      octant = classify_plan(plan, net);
    } catch (const std::exception&) {
    }
    std::string below = plan.heir;
    for (const auto& src : plan.sources) {
      std::string label = to_string(octant);
      const std::string sel = format_selection(src.selection);
      if (!sel.empty()) label += " " + sel;
      out << "  " << dot_id(below) << " -> " << dot_id(src.name)
          << " [label=" << dot_id(label) << ", style=" << (octant.strength == Octant::Strength::Weak ? "dashed" : "solid")
          << "];\n";
      if (plan.chain) below = src.name;
    }
  }
  for (const auto& r : net.relations) {
    std::string label(to_string(r.kind));
    if (!r.label.empty()) label += " " + r.label;
    if (r.degree) label += " /" + to_string(*r.degree);
    out << "  " << dot_id(r.from) << " -> " << dot_id(r.to) << " [label=" << dot_id(label)
        << ", style=dotted];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace oodn
