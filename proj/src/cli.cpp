#include "oodn/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "oodn/diagnostics.hpp"
#include "oodn/dsl.hpp"
#include "oodn/export.hpp"
#include "oodn/inheritance.hpp"
#include "oodn/operations.hpp"

namespace oodn {

namespace {

struct Options {
  std::string format = "dsl";
  bool write = false;
  std::string required;
  std::string policy = "reject";
  std::string plan_filter;
  bool apply = false;
  std::string path;
  std::string target;
  std::string output;
};

// Signals an exit status with a message already written.
struct Exit {
  int code;
};

std::string_view conflict_kind(ConflictKind k) {
  switch (k) {
    case ConflictKind::UnknownClass: return "unknown-class";
    case ConflictKind::UnknownMember: return "unknown-member";
    case ConflictKind::MalformedPlan: return "malformed-plan";
    case ConflictKind::Exception: return "exception";
    case ConflictKind::Ambiguity: return "ambiguity";
  }
  return "?";
}

class Command {
 public:
  Command(const Options& o, std::ostream& out, std::ostream& err) : o_(o), out_(out), err_(err) {}

  int check() {
    const ParseResult r = load_result();
    for (const auto& w : to_strings(r.warnings)) err_ << o_.path << ": warning: " << w << "\n";
    if (!r.ok()) {
      report_errors(r);
      return kExitInvalid;
    }
    const Network& net = r.network;
    out_ << o_.path << ": ok (" << net.classes.size() << " classes, " << net.objects.size()
         << " objects, " << net.relations.size() << " relations, " << net.plans.size()
         << " plans)\n";
    return kExitOk;
  }

  int inherit_cmd() {
    Network net = load();
    const InheritancePlan plan = resolve_plan(net, o_.target);
    HetClass het;
    try {
      het = inherit(plan, net, {policy()});
    } catch (const InheritanceError& e) {
      const Conflict& c = e.conflict();
      err_ << "error: plan " << plan.heir << ": " << conflict_kind(c.kind) << ": "
           << c.explanation << "\n";
      if (e.repair()) err_ << "  suggestion: " << format_plan(*e.repair()) << "\n";
      return kExitInvalid;
    }
    if (o_.format == "structured") {
      out_ << export_structured(het);
    } else if (o_.format == "graph") {
      out_ << het_graph(het);
    } else {
      out_ << format_het(het);
    }
    return kExitOk;
  }

  int materialize_cmd() {
    if (o_.format == "graph") return usage("materialize supports --format dsl or structured");
    Network net = load();
    MemberSet members;
    try {
      members = materialize(net, o_.target, {policy()});
    } catch (const InheritanceError& e) {
      err_ << "error: " << o_.target << ": " << e.conflict().explanation << "\n";
      return kExitInvalid;
    } catch (const std::out_of_range& e) {
      err_ << "error: " << e.what() << "\n";
      return kExitInvalid;
    }
    if (o_.format == "structured") {
      out_ << export_structured(members);
    } else {
      for (const auto& m : members) out_ << format_member(m, o_.target) << "\n";
    }
    return kExitOk;
  }

  int diagnose() {
    Network net = load();
    const auto required = required_set();
    Network scope = net;
    if (!o_.plan_filter.empty()) {
      const InheritancePlan* p = net.plan_for(o_.plan_filter);
      if (p == nullptr) {
        err_ << "error: no plan for '" << o_.plan_filter << "'\n";
        return kExitInvalid;
      }
      scope.plans = {*p};
    }
    try {
      if (o_.apply) {
        const std::size_t rewrites = apply_suggestions(scope, required, policy());
        for (const auto& rewritten : scope.plans) {
          for (auto& p : net.plans) {
            if (p.heir == rewritten.heir) p = rewritten;
          }
        }
        const auto remaining = diagnose_all(scope, required, policy());
        const std::string text = serialize(net);
        if (o_.write) {
          std::ofstream f(o_.path, std::ios::binary | std::ios::trunc);
          if (!f) {
            err_ << "error: cannot write '" << o_.path << "'\n";
            return kExitUsage;
          }
          f << text;
        } else {
          out_ << text;
        }
        err_ << render_report(remaining);
        err_ << rewrites << " plan rewrite(s)\n";
        return remaining.empty() ? kExitOk : kExitDiagnostics;
      }
      const auto found = diagnose_all(scope, required, policy());
      if (o_.format == "structured") out_ << export_structured(found);
      err_ << render_report(found);
      return found.empty() ? kExitOk : kExitDiagnostics;
    } catch (const DiagnosticError& e) {
      err_ << "error: " << e.what() << "\n";
      return kExitInvalid;
    }
  }

  int classify() {
    Network net = load();
    if (o_.target.empty() && net.plans.size() != 1) {
      for (const auto& p : net.plans) out_ << p.heir << ": " << to_string(classify_plan(p, net)) << "\n";
      return kExitOk;
    }
    out_ << to_string(classify_plan(resolve_plan(net, o_.target), net)) << "\n";
    return kExitOk;
  }

  int export_cmd() {
    Network net = load();
    std::string text;
    if (o_.format == "structured") {
      text = export_structured(net);
    } else if (o_.format == "graph") {
      text = export_graph(net);
    } else {
      text = serialize(net);
    }
    if (o_.output.empty()) {
      out_ << text;
      return kExitOk;
    }
    std::ofstream f(o_.output, std::ios::binary | std::ios::trunc);
    if (!f) {
      err_ << "error: cannot write '" << o_.output << "'\n";
      return kExitUsage;
    }
    f << text;
    return kExitOk;
  }

 private:
  DegreePolicy policy() const { return *parse_degree_policy(o_.policy); }

  int usage(const std::string& message) {
    err_ << "error: " << message << "\n";
    return kExitUsage;
  }

  std::optional<std::set<std::string>> required_set() const {
    if (o_.required.empty()) return std::nullopt;
    std::set<std::string> out;
    std::stringstream in(o_.required);
    std::string item;
    while (std::getline(in, item, ',')) {
      item.erase(0, item.find_first_not_of(" \t"));
      item.erase(item.find_last_not_of(" \t") + 1);
      if (!item.empty()) out.insert(item);
    }
    return out;
  }

  ParseResult load_result() {
    std::ifstream f(o_.path, std::ios::binary);
    if (!f) {
      err_ << "error: cannot read '" << o_.path << "'\n";
      throw Exit{kExitUsage};
    }
    std::stringstream buf;
    buf << f.rdbuf();
    return parse(buf.str(), o_.path);
  }

  void report_errors(const ParseResult& r) {
    for (const auto& e : r.errors) err_ << e.message() << "\n";
  }

  Network load() {
    ParseResult r = load_result();
    if (!r.ok()) {
      report_errors(r);
      throw Exit{kExitInvalid};
    }
    register_builtins(r.network);
    return std::move(r.network);
  }

  InheritancePlan resolve_plan(const Network& net, const std::string& spec) {
    if (spec.empty()) {
      if (net.plans.size() == 1) return net.plans.front();
      err_ << "error: " << net.plans.size() << " plans declared; name one\n";
      throw Exit{kExitUsage};
    }
    if (spec.find("inherits") != std::string::npos) {
      try {
        return parse_plan(spec);
      } catch (const std::invalid_argument& e) {
        err_ << e.what() << "\n";
        throw Exit{kExitUsage};
      }
    }
    if (const InheritancePlan* p = net.plan_for(spec)) return *p;
    err_ << "error: no plan for '" << spec << "'\n";
    throw Exit{kExitInvalid};
  }

  static std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
      if (c == '"' || c == '\\') out += '\\';
      out += c;
    }
    return out + "\"";
  }

  static std::string member_names(const MemberSet& set) {
    std::string out;
    for (const auto& m : set) {
      if (!out.empty()) out += ", ";
      out += m.name();
      if (m.degree.is_weak()) out += "/" + to_string(m.degree);
    }
    return out;
  }

  // Regions of a heterogeneous class: the core, one node per projection,
  // edges along depends_on, and participants pointing at their entries.
  static std::string het_graph(const HetClass& het) {
    std::ostringstream g;
    g << "digraph " << quoted(het.name) << " {\n";
    g << "  \"core\" [shape=box, label=" << quoted("core: " + member_names(het.core)) << "];\n";
    for (const auto& p : het.projections) {
      g << "  " << quoted("pr:" + p.label) << " [shape=box, label="
        << quoted(p.label + ": " + member_names(p.members)) << "];\n";
    }
    for (const auto& part : het.participants) {
      g << "  " << quoted(part.name) << " [shape=ellipse];\n";
    }
    for (const auto& p : het.projections) {
      g << "  " << quoted("pr:" + p.label) << " -> \"core\";\n";
      for (const auto& d : p.depends_on) {
        g << "  " << quoted("pr:" + p.label) << " -> " << quoted("pr:" + d) << ";\n";
      }
    }
    for (const auto& part : het.participants) {
      g << "  " << quoted(part.name) << " -> "
        << (part.entry ? quoted("pr:" + *part.entry) : std::string("\"core\"")) << ";\n";
    }
    g << "}\n";
    return g.str();
  }

  const Options& o_;
  std::ostream& out_;
  std::ostream& err_;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Knowledge bases of object-oriented dynamic networks", "oodn"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"dsl", "structured", "graph"}));
  app.add_flag("--write", o.write, "Rewrite the input file in place");
  app.add_option("--required", o.required, "Comma-separated members the heir needs");
  app.add_option("--policy", o.policy, "Degree conflict policy")
      ->check(CLI::IsMember({"reject", "min", "max"}));
  app.add_option("--plan", o.plan_filter, "Restrict diagnosis to the plan of this heir");
  app.add_flag("--apply-suggestions", o.apply, "Apply suggested plans until none remain");

  auto* check = app.add_subcommand("check", "Parse and validate");
  auto* inherit = app.add_subcommand("inherit", "Execute a plan and print the result");
  auto* materialize = app.add_subcommand("materialize", "List a class's effective members");
  auto* diagnose = app.add_subcommand("diagnose", "Report exceptions, redundancy and ambiguity");
  auto* classify = app.add_subcommand("classify", "Print the inheritance type of a plan");
  auto* exporter = app.add_subcommand("export", "Render the whole network");
  for (auto* sub : {check, inherit, materialize, diagnose, classify, exporter}) {
    sub->add_option("path", o.path, "Knowledge base file")->required();
  }
  inherit->add_option("plan", o.target, "Heir of a declared plan, or an inline plan");
  classify->add_option("plan", o.target, "Heir of a declared plan, or an inline plan");
  materialize->add_option("class", o.target, "Class name")->required();
  exporter->add_option("-o,--output", o.output, "Write to this file instead of stdout");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  Command cmd(o, out, err);
  try {
    if (*check) return cmd.check();
    if (*inherit) return cmd.inherit_cmd();
    if (*materialize) return cmd.materialize_cmd();
    if (*diagnose) return cmd.diagnose();
    if (*classify) return cmd.classify();
    return cmd.export_cmd();
  } catch (const Exit& e) {
    return e.code;
  }
}

}  // namespace oodn
