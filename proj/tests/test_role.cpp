#include "doctest.h"
#include "lrbac/error.hpp"
#include "lrbac/role.hpp"

using namespace lrbac;

namespace {

Role r(const char* s) { return parse_role(s); }

}  // namespace

TEST_SUITE("role-algebra") {
  TEST_CASE("modifiers join and meet") {
    Role a = r("A"), b = r("B");
    CHECK(equiv(apply_modifier(RoleModifier::up(a), b), a | b));
    CHECK(equiv(apply_modifier(RoleModifier::dn(a), Role::top()), a));
    CHECK(equiv(apply_modifier(RoleModifier::dn(Role::bottom()), r("A | !B")), Role::bottom()));
  }

  TEST_CASE("equivalence") {
    CHECK(equiv(r("A | !A"), Role::top()));
    CHECK(equiv(r("a | amp(a)"), r("amp(a)")));
    CHECK(equiv(r("amp(a | b)"), r("amp(a) | amp(b)")));
    CHECK(equiv(r("amp(a & b)"), r("amp(a) & amp(b)")));
    CHECK(equiv(r("amp(0)"), Role::bottom()));
    CHECK_FALSE(equiv(r("A"), r("B")));
    CHECK_FALSE(equiv(r("amp(A)"), r("A")));
  }

  TEST_CASE("dominance") {
    CHECK(dominates(Role::top(), r("A | B")));
    CHECK(dominates(r("A | B"), r("A")));
    CHECK(dominates(r("A"), r("A & B")));
    CHECK(dominates(r("A & B"), Role::bottom()));
    CHECK_FALSE(dominates(r("A & B"), r("A")));
    CHECK(dominates(r("amp(a)"), r("a")));
    CHECK_FALSE(dominates(r("a"), r("amp(a)")));
  }

  TEST_CASE("relative complement") {
    CHECK(equiv(rminus(r("B"), Role::bottom()), r("B")));
    CHECK(equiv(rminus(r("A"), r("A")), Role::bottom()));
    CHECK(equiv(rminus(Role::top(), r("A")), r("!A")));
  }

  TEST_CASE("enumeration counts classes") {
    CHECK(enumerate_roles(RoleUniverse{}).size() == 2);
    CHECK(enumerate_roles(RoleUniverse::of_atoms({"A"})).size() == 4);
    CHECK(enumerate_roles(RoleUniverse::of_atoms({"A", "B"})).size() == 16);
    auto four = enumerate_roles(RoleUniverse::of_atoms({"A"}));
    for (std::size_t i = 0; i < four.size(); ++i) {
      for (std::size_t j = i + 1; j < four.size(); ++j) CHECK_FALSE(equiv(four[i], four[j]));
    }
  }

  TEST_CASE("amp generators enter the universe") {
    RoleUniverse u;
    u.add(r("amp(A) | B"));
    CHECK(u.atoms().size() == 2);
    CHECK(u.amp_generators().size() == 1);
    // Valuations with A set and amp(A) unset are excluded: 2^6 classes.
    CHECK(enumerate_roles(u).size() == 64);
  }

  TEST_CASE("roles outside the universe are rejected") {
    RoleUniverse u = RoleUniverse::of_atoms({"A"});
    CHECK_THROWS_AS(equiv(r("B"), r("A"), u), UniverseError);
  }

  TEST_CASE("parsing precedence") {
    CHECK(equiv(r("!A & B | C"), ((!r("A")) & r("B")) | r("C")));
    CHECK(equiv(r("A | B & C"), r("A") | (r("B") & r("C"))));
    CHECK(equiv(r("(A | B) & C"), (r("A") | r("B")) & r("C")));
    std::map<std::string, Role> aliases{{"Admin", r("(Alice & Bob) | AdminAtom")}};
    CHECK(equiv(parse_role("Admin", aliases), r("AdminAtom | Alice & Bob")));
    CHECK_THROWS_AS(parse_role("A |"), ParseError);
    CHECK_THROWS_AS(parse_role("A B"), ParseError);
  }

  TEST_CASE("canonical printing identifies equivalent roles") {
    CHECK(canonical_string(r("Bob & Alice | AdminAtom")) == canonical_string(r("AdminAtom | (Alice & Bob)")));
    CHECK(canonical_string(r("A & !A")) == "0");
    CHECK(canonical_string(r("A | !A")) == "1");
    CHECK(canonical_string(r("AdminAtom | Alice & Bob")) == "AdminAtom | Alice & Bob");
    CHECK(equiv(parse_role(canonical_string(r("!(A | B) | amp(A & C)"))), r("!(A | B) | amp(A & C)")));
  }
}
