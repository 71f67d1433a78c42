#include <doctest.h>

#include "oodn/inheritance.hpp"
#include "support.hpp"

using namespace oodn;

namespace {

HetClass run(const std::string& plan_text) {
  const Network net = fixtures::load(fixtures::with_plan(plan_text));
  return inherit(net.plans.at(0), net);
}

std::set<std::string> owners(const MemberSet& s) {
  std::set<std::string> out;
  for (const auto& m : s) out.insert(m.member.owner);
  return out;
}

std::vector<std::string> labels(const HetClass& het) {
  std::vector<std::string> out;
  for (const auto& p : het.projections) out.push_back(p.label);
  return out;
}

}  // namespace

TEST_CASE("chain A3 inherits A2 inherits A1") {
  const Network net = fixtures::load(fixtures::with_plan("A3 inherits A2 inherits A1;"));
  const HetClass t = inherit(net.plans[0], net);
  CHECK(oracle::names(t.core) == std::set<std::string>{"p1", "p2", "f1", "f2"});
  CHECK(owners(t.core) == std::set<std::string>{"A1"});
  REQUIRE(labels(t) == std::vector<std::string>{"A2", "A3"});
  CHECK(t.projections[0].members.size() == 3);
  CHECK(owners(t.projections[0].members) == std::set<std::string>{"A2"});
  CHECK(t.projections[0].depends_on.empty());
  CHECK(t.projections[1].members.size() == 2);
  CHECK(owners(t.projections[1].members) == std::set<std::string>{"A3"});
  CHECK(t.projections[1].depends_on == std::vector<std::string>{"A2"});

  CHECK(decompose(t, "A1") == t.core);
  CHECK(decompose(t, "A2").size() == 7);
  const MemberSet a3 = decompose(t, "A3");
  CHECK(a3.size() == 9);
  CHECK(oracle::pairs(a3) == oracle::union_of(net, net.plans[0]));
  std::size_t inherited = 0;
  for (const auto& m : a3) inherited += m.member.owner != "A3";
  CHECK(inherited == 7);

  CHECK(inherit_single({"A1", "A2", "A3"}, net) == t);
  CHECK(materialize(net, "A3") == a3);
}

TEST_CASE("parallel A3 inherits A1, A2") {
  const Network net = fixtures::load(fixtures::with_plan("A3 inherits A1, A2;"));
  const HetClass t = inherit(net.plans[0], net);
  CHECK(t.core.empty());
  REQUIRE(labels(t) == std::vector<std::string>{"A1", "A2", "heir<A3>"});
  CHECK(t.projections[0].members.size() == 4);
  CHECK(t.projections[1].members.size() == 3);
  CHECK(t.projections[2].members.size() == 2);
  CHECK(t.projections[2].depends_on == std::vector<std::string>{"A1", "A2"});
  CHECK(decompose(t, "A1").size() == 4);
  CHECK(decompose(t, "A2").size() == 3);
  CHECK(oracle::pairs(decompose(t, "A3")) == oracle::union_of(net, net.plans[0]));
  CHECK(materialize(net, "A3").size() == 9);
  CHECK(inherit_multiple({"A1", "A2"}, "A3", net) == t);
}

TEST_CASE("partial A2 inherits A1 (p1, f1)") {
  const HetClass t = run("A2 inherits A1 (p1, f1);");
  CHECK(oracle::pairs(t.core) ==
        std::set<std::pair<std::string, std::string>>{{"p1", "A1"}, {"f1", "A1"}});
  REQUIRE(labels(t) == std::vector<std::string>{"A1", "A2"});
  CHECK(oracle::pairs(t.projections[0].members) ==
        std::set<std::pair<std::string, std::string>>{{"p2", "A1"}, {"f2", "A1"}});
  CHECK(oracle::names(t.projections[1].members) == std::set<std::string>{"p3", "p4", "f3"});
  CHECK(owners(t.projections[1].members) == std::set<std::string>{"A2"});
  CHECK(oracle::names(decompose(t, "A1")) == std::set<std::string>{"p1", "p2", "f1", "f2"});
  CHECK(oracle::names(decompose(t, "A2")) == std::set<std::string>{"p1", "f1", "p3", "p4", "f3"});
}

TEST_CASE("weak A2 inherits A1 (p1/0.5)") {
  const HetClass t = run("A2 inherits A1 (p1/0.5);");
  CHECK(oracle::names(t.core) == std::set<std::string>{"p2", "f1", "f2"});
  REQUIRE(labels(t) == std::vector<std::string>{"A1", "A2"});
  const MemberSet& pr1 = t.projections[0].members;
  REQUIRE(pr1.size() == 1);
  CHECK(pr1[0].name() == "p1");
  CHECK(pr1[0].degree.value() == Rational(1));
  const MemberSet& pr2 = t.projections[1].members;
  REQUIRE(pr2.size() == 4);
  const DegreedMember* weak = pr2.find("p1");
  REQUIRE(weak != nullptr);
  CHECK(weak->degree.value() == Rational(1, 2));
  CHECK(weak->member.owner == "A1");
  CHECK(oracle::names(pr2) == std::set<std::string>{"p1", "p3", "p4", "f3"});
  for (const auto& m : t.core) CHECK(m.degree.is_strong());
}

TEST_CASE("compute_core against the brute-force oracle") {
  const Network net = fixtures::load(R"(
class X { prop a: int = 1; prop b: text = "k"; method m(x: int); prop c: real = 0.5 /0.5; }
class Y { prop a: int = 1; prop b: text = "other"; method m(x: int); prop c: real = 0.5 /0.5; }
class Z { prop a: int = 1; method m(x: int); prop c: real = 0.5; }
)");
  const std::vector<MemberSet> sets = {net.find_hom("X")->members(), net.find_hom("Y")->members(),
                                       net.find_hom("Z")->members()};
  const CoreSplit split = compute_core(sets);
  CHECK(oracle::names(split.core) == oracle::brute_core(sets));
  CHECK(oracle::names(split.core) == std::set<std::string>{"a", "m"});
  REQUIRE(split.remainders.size() == 3);
  CHECK(oracle::names(split.remainders[2]) == std::set<std::string>{"c"});
  for (std::size_t i = 0; i < sets.size(); ++i) {
    MemberSet rebuilt = split.core;
    for (const auto& m : split.remainders[i]) rebuilt.add(m);
    CHECK(oracle::fingerprints(rebuilt) == oracle::fingerprints(sets[i]));
  }
  CHECK_THROWS(compute_core({sets[0]}));
}

TEST_CASE("eight octants") {
  const Network net = fixtures::load(fixtures::kClasses);
  const std::vector<std::pair<std::string, std::string>> cases = {
      {"A2 inherits A1", "single/full/strong"},
      {"A2 inherits A1 (p1/0.5)", "single/full/weak"},
      {"A2 inherits A1 (p1, f1)", "single/partial/strong"},
      {"A2 inherits A1 (p1/0.5, f1)", "single/partial/weak"},
      {"A3 inherits A1, A2", "multiple/full/strong"},
      {"A3 inherits A1 (p1/0.5), A2", "multiple/full/weak"},
      {"A3 inherits A1 (p1), A2", "multiple/partial/strong"},
      {"A3 inherits A1 (p1/0.5, f1), A2 (p3)", "multiple/partial/weak"},
  };
  for (const auto& [text, octant] : cases) {
    CAPTURE(text);
    const InheritancePlan plan = parse_plan(text);
    CHECK(to_string(classify_plan(plan, net)) == octant);
    CHECK(oracle::expected_octant(net, plan) == octant);
    CHECK_NOTHROW(inherit(plan, net));
  }
  // Listing every member of the source is still full inheritance.
  const InheritancePlan everything = parse_plan("A2 inherits A1 (p1, p2, f1, f2)");
  CHECK(to_string(classify_plan(everything, net)) == "single/full/strong");
  CHECK(to_string(classify_plan(everything)) == "single/partial/strong");
}

TEST_CASE("partial multiple inheritance labels shared regions") {
  const Network net = fixtures::load(R"(
class S1 { prop a: int = 1; prop b: int = 2; }
class S2 { prop c: int = 3; }
class H { prop h: int = 4; }
H inherits S1 (a), S2;
)");
  const HetClass t = inherit(net.plans[0], net);
  CHECK(t.core.empty());
  const auto ls = labels(t);
  CHECK(std::find(ls.begin(), ls.end(), "S1+H") != ls.end());
  CHECK(oracle::names(decompose(t, "H")) == std::set<std::string>{"a", "c", "h"});
  CHECK(oracle::names(decompose(t, "S1")) == std::set<std::string>{"a", "b"});
  CHECK(oracle::names(decompose(t, "S2")) == std::set<std::string>{"c"});
  Network stored = net;
  HetClass named = t;
  named.name = "T";
  stored.classes["T"] = named;
  CHECK_FALSE(has_errors(validate_network(stored)));
}

TEST_CASE("degree policies for a member offered at two degrees") {
  const Network net = fixtures::load(R"(
class S1 { prop x: int = 1; }
class S2 { prop x: int = 1; }
class H { prop h: int = 0; }
H inherits S1 (x/0.5), S2;
)");
  const InheritancePlan& plan = net.plans[0];
  CHECK_THROWS_AS(inherit(plan, net), InheritanceError);
  try {
    inherit(plan, net);
  } catch (const InheritanceError& e) {
    CHECK(e.conflict().kind == ConflictKind::Ambiguity);
  }
  auto heir_x = [&](DegreePolicy p) {
    return decompose(inherit(plan, net, {p}), "H").find("x")->degree;
  };
  CHECK(heir_x(DegreePolicy::Min) == Degree(1, 2));
  CHECK(heir_x(DegreePolicy::Max) == Degree::one());
  CHECK(parse_degree_policy("max") == DegreePolicy::Max);
  CHECK_FALSE(parse_degree_policy("avg").has_value());
}

TEST_CASE("degrees multiply down a chain") {
  const Network net = fixtures::load(fixtures::with_plan("A3 inherits A2 (p3/0.5) inherits A1 (p1/0.5);"));
  const MemberSet a3 = materialize(net, "A3");
  CHECK(a3.find("p1")->degree == Degree(1, 2));
  CHECK(a3.find("p3")->degree == Degree(1, 2));
  CHECK(a3.find("p2")->degree == Degree::one());
  const Network twice = fixtures::load(R"(
class R { prop x: int = 1; }
class M { prop m: int = 2; }
class L { prop l: int = 3; }
L inherits M (x/0.5) inherits R (x/0.5);
)");
  CHECK(materialize(twice, "L").find("x")->degree == Degree(1, 4));
}

TEST_CASE("plans that cannot run") {
  const Network net = fixtures::load(fixtures::kClasses);
  auto kind_of = [&](const InheritancePlan& plan) {
    try {
      inherit(plan, net);
    } catch (const InheritanceError& e) {
      return std::optional<ConflictKind>(e.conflict().kind);
    }
    return std::optional<ConflictKind>();
  };
  CHECK(kind_of(parse_plan("A2 inherits Nowhere")) == ConflictKind::UnknownClass);
  CHECK(kind_of(parse_plan("Nowhere inherits A1")) == ConflictKind::UnknownClass);
  CHECK(kind_of(parse_plan("A2 inherits A1 (zz)")) == ConflictKind::UnknownMember);
  InheritancePlan empty{"A2", {{"A1", Selection::listed({})}}, true};
  CHECK(kind_of(empty) == ConflictKind::MalformedPlan);
  CHECK(kind_of(InheritancePlan{"A2", {}, true}) == ConflictKind::MalformedPlan);
  CHECK(kind_of(parse_plan("A3 inherits A1, A1")) == ConflictKind::MalformedPlan);
  InheritancePlan twice{"A3", {{"A1", Selection::listed({{"p1", Degree::one()}, {"p1", Degree::one()}})}}, true};
  CHECK(kind_of(twice) == ConflictKind::MalformedPlan);
  CHECK_THROWS_AS(parse_plan("A3 inherits A1 (p1, p1)"), std::invalid_argument);
  CHECK_FALSE(kind_of(parse_plan("A3 inherits A1")).has_value());
}

TEST_CASE("exception conflict carries a repair") {
  const Network net = fixtures::load(fixtures::file("penguin.oodn"));
  try {
    inherit(net.plans[0], net);
    FAIL("expected an exception conflict");
  } catch (const InheritanceError& e) {
    CHECK(e.conflict().kind == ConflictKind::Exception);
    CHECK(e.conflict().members == std::vector<std::string>{"fly"});
    REQUIRE(e.repair().has_value());
    CHECK_NOTHROW(inherit(*e.repair(), net));
    CHECK_FALSE(materialize([&] {
                  Network fixed = net;
                  fixed.plans[0] = *e.repair();
                  return fixed;
                }(), "Penguin").find("fly")->member.as_property().value ==
                PropertyValue(true));
  }
}

TEST_CASE("similar redeclaration collapses into the core") {
  const Network net = fixtures::load(R"(
class Base { prop x: int = 1; prop y: int = 2; }
class Heir { prop x: int = 1; }
Heir inherits Base;
)");
  const HetClass t = inherit(net.plans[0], net);
  CHECK(oracle::names(t.core) == std::set<std::string>{"x", "y"});
  CHECK(t.projections.empty());
  CHECK(materialize(net, "Heir").size() == 2);
}

TEST_CASE("without_member") {
  const Network net = fixtures::load(fixtures::with_plan("A3 inherits A1, A2;"));
  const InheritancePlan& plan = net.plans[0];
  const auto cut = without_member(plan, 0, "p1", net);
  REQUIRE(cut.has_value());
  CHECK(format_plan(*cut) == "A3 inherits A1 (p2, f1, f2), A2;");
  InheritancePlan single = parse_plan("A2 inherits A1 (p1)");
  CHECK_FALSE(without_member(single, 0, "p1", net).has_value());
  const auto drop = without_member(parse_plan("A3 inherits A1 (p1), A2"), 0, "p1", net);
  REQUIRE(drop.has_value());
  CHECK(format_plan(*drop) == "A3 inherits A2;");
}

TEST_CASE("materialize and decompose lookups") {
  Network net = fixtures::load(fixtures::kClasses);
  CHECK(materialize(net, "A1").size() == 4);
  CHECK_THROWS_AS(materialize(net, "Ghost"), std::out_of_range);
  const HetClass t = inherit(parse_plan("A3 inherits A2 inherits A1"), net);
  CHECK_THROWS_AS(decompose(t, "Ghost"), std::out_of_range);
  HetClass stored = t;
  stored.name = "T";
  for (auto& p : stored.participants) p.name = "T_" + p.name;
  net.classes["T"] = stored;
  CHECK(materialize(net, "T_A2").size() == 7);
}

TEST_CASE("rebuild_derived caches every runnable plan") {
  Network net = fixtures::load(fixtures::with_plan("A3 inherits A2 inherits A1;"));
  net.stale.insert("A3");
  CHECK(rebuild_derived(net).empty());
  REQUIRE(net.derived.count("A3") == 1);
  CHECK(net.derived["A3"] == inherit(net.plans[0], net));
  CHECK(net.stale.empty());
  Network bad = fixtures::load(fixtures::file("nixon.oodn"));
  CHECK(rebuild_derived(bad).size() == 1);
  CHECK(bad.derived.empty());
}
