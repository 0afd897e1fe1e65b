#include "catch_amalgamated.hpp"

#include <random>
#include <set>

#include <endomon/jk_group.hpp>

using namespace endomon;

namespace {

  Element el(JkGroup const& g, std::array<int, 8> const& e) {
    return g.make(e);
  }

  std::vector<GroupParams> families() {
    auto out = GroupParams::all_for(2);
    for (auto const& prm : GroupParams::all_for(3)) {
      out.push_back(prm);
    }
    return out;
  }

}  // namespace

TEST_CASE("admissible parameters") {
  CHECK(GroupParams::all_for(2).size() == 3);
  CHECK(GroupParams::all_for(3).size() == 4);
  CHECK(GroupParams::all_for(5).size() == 6);
  CHECK_THROWS_AS(GroupParams(3, 1, 2), std::invalid_argument);
  CHECK_THROWS_AS(GroupParams(3, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(GroupParams(7, 0, 1), std::invalid_argument);
  CHECK(GroupParams(2, 1, 1).is_exceptional());
  CHECK(GroupParams(3, 1, 0).is_exceptional());
  CHECK_FALSE(GroupParams(3, 1, 1).is_exceptional());
}

TEST_CASE("multiplication examples") {
  for (auto const& prm : GroupParams::all_for(2)) {
    JkGroup const g(prm);
    CHECK(g.multiply(g.generator(0), g.generator(0)) == el(g, {0, 0, 0, 0, 1, 0, 0, 0}));
  }
  JkGroup const g(GroupParams(3, 0, 1));
  auto const    a1 = g.generator(0);
  auto const    b1 = g.generator(2);
  CHECK(g.multiply(b1, a1) == el(g, {1, 0, 1, 0, 2, 0, 0, 0}));
  // b1 a1 = a1 b1 [a1,b1]^-1
  CHECK(g.multiply(b1, a1)
        == g.multiply(g.multiply(a1, b1), g.inverse(g.commutator(a1, b1))));
  CHECK(g.power(g.multiply(a1, b1), 2) == el(g, {2, 0, 2, 0, 2, 0, 0, 0}));
  CHECK(g.power_formula(g.multiply(a1, b1), 2) == el(g, {2, 0, 2, 0, 2, 0, 0, 0}));
  for (std::uint32_t x = 0; x < g.order(); x += 97) {
    auto const e = g.element_at(x);
    CHECK(g.multiply(e, g.identity()) == e);
    CHECK(g.multiply(g.identity(), e) == e);
  }
}

TEST_CASE("group has p^8 elements and is closed") {
  for (auto const& prm : families()) {
    JkGroup const g(prm);
    CAPTURE(prm.to_string());
    std::uint32_t const expect = prm.p == 2 ? 256 : 6561;
    REQUIRE(g.order() == expect);
    std::set<std::uint32_t> seen;
    for (auto const& e : g.elements()) {
      REQUIRE(g.is_valid(e));
      seen.insert(g.index(e));
    }
    REQUIRE(seen.size() == expect);
  }
}

TEST_CASE("associativity is exhaustive at p=2") {
  for (auto const& prm : GroupParams::all_for(2)) {
    JkGroup const g(prm);
    auto const    all = g.elements();
    std::uint64_t bad = 0;
    for (auto const& x : all) {
      for (auto const& y : all) {
        auto const xy = g.multiply(x, y);
        for (auto const& z : all) {
          bad += g.multiply(xy, z) != g.multiply(x, g.multiply(y, z));
        }
      }
    }
    CHECK(bad == 0);
  }
}

TEST_CASE("associativity on random triples at p=3 and p=5") {
  std::mt19937_64 rng(3);
  for (int p : {3, 5}) {
    for (auto const& prm : GroupParams::all_for(p)) {
      JkGroup const                                g(prm);
      std::uniform_int_distribution<std::uint32_t> pick(0, g.order() - 1);
      std::uint64_t                                bad = 0;
      for (int i = 0; i < 100000; ++i) {
        auto const x = g.element_at(pick(rng));
        auto const y = g.element_at(pick(rng));
        auto const z = g.element_at(pick(rng));
        bad += g.multiply(g.multiply(x, y), z) != g.multiply(x, g.multiply(y, z));
      }
      CHECK(bad == 0);
    }
  }
}

TEST_CASE("inverse agrees with linear search") {
  for (int p : {2, 3}) {
    JkGroup const g(GroupParams(p, 1, 0));
    auto const    all = g.elements();
    for (std::size_t gi : {std::size_t{0}, std::size_t{1}, std::size_t{2}, std::size_t{3}}) {
      auto const a = g.generator(gi);
      std::vector<Element> found;
      for (auto const& x : all) {
        if (g.multiply(a, x) == g.identity()) {
          found.push_back(x);
        }
      }
      REQUIRE(found.size() == 1);
      CHECK(g.inverse(a) == found.front());
    }
  }
  for (auto const& prm : families()) {
    JkGroup const g(prm);
    CHECK(g.inverse(g.identity()) == g.identity());
    for (auto const& x : g.elements()) {
      REQUIRE(g.multiply(x, g.inverse(x)) == g.identity());
      REQUIRE(g.multiply(g.inverse(x), x) == g.identity());
    }
  }
}

TEST_CASE("power formula matches iterated power") {
  for (auto const& prm : families()) {
    JkGroup const       g(prm);
    std::uint64_t const top = static_cast<std::uint64_t>(prm.p * prm.p);
    std::uint64_t       bad = 0;
    for (auto const& x : g.elements()) {
      Element acc = g.identity();
      for (std::uint64_t n = 0; n <= top; ++n) {
        bad += g.power_formula(x, n) != acc;
        bad += g.power(x, n) != acc;
        acc = g.multiply(acc, x);
      }
    }
    CHECK(bad == 0);
  }
  JkGroup const g(GroupParams(3, 1, 1));
  auto const    x = g.parse("1,1,1,1|0,0,0,0");
  CHECK(g.power_formula(x, 3) == el(g, {0, 0, 0, 0, 2, 1, 1, 2}));
  auto const z = g.parse("0,0,0,0|1,2,0,1");
  CHECK(g.power_formula(z, 5) == g.parse("0,0,0,0|2,1,0,2"));
}

TEST_CASE("power formula on random elements at p=5") {
  std::mt19937_64 rng(5);
  for (auto const& prm : GroupParams::all_for(5)) {
    JkGroup const                                g(prm);
    std::uniform_int_distribution<std::uint32_t> pick(0, g.order() - 1);
    for (int i = 0; i < 20000; ++i) {
      auto const          x = g.element_at(pick(rng));
      std::uint64_t const n = static_cast<std::uint64_t>(i % 26);
      REQUIRE(g.power_formula(x, n) == g.power(x, n));
    }
  }
}

TEST_CASE("orders") {
  JkGroup const g(GroupParams(3, 0, 1));
  auto const    a1 = g.generator(0);
  CHECK(g.power(a1, 9) == g.identity());
  CHECK(g.power(a1, 3) != g.identity());
  CHECK(g.element_order(g.identity()) == 1);
  for (auto const& l : {std::pair{0, 1}, std::pair{1, 1}, std::pair{2, 1}}) {
    JkGroup const h(GroupParams(3, l.first, l.second));
    std::uint32_t noncentral = 0;
    for (auto const& x : h.elements()) {
      if (!x.is_central()) {
        ++noncentral;
        REQUIRE(h.element_order(x) == 9);
      }
    }
    CHECK(noncentral == 6480);
  }
}

TEST_CASE("p-th power images") {
  JkGroup const g11(GroupParams(3, 1, 1));
  CHECK(g11.pth_power_image(FpVec4({1, 1, 1, 1}, 3)) == FpVec4({2, 1, 1, 2}, 3));
  CHECK(g11.pth_power_image(FpVec4(3)).is_zero());
  JkGroup const g10(GroupParams(3, 1, 0));
  CHECK(g10.pth_power_image(FpVec4({1, 2, 0, 0}, 3)).is_zero());
  CHECK(g10.power(g10.parse("1,2,0,0|0,0,0,0"), 3) == g10.identity());

  // bijective iff lambda2 != 0, for odd p
  for (int p : {3, 5}) {
    for (auto const& prm : GroupParams::all_for(p)) {
      JkGroup const                g(prm);
      std::set<FpVec4>             image;
      std::uint32_t const          n = static_cast<std::uint32_t>(p * p * p * p);
      for (std::uint32_t x = 0; x < n; ++x) {
        image.insert(g.pth_power_image(FpVec4::from_index(x, p)));
      }
      CHECK((image.size() == n) == (prm.lambda2 != 0));
    }
  }

  // pth_power is the central part of the actual p-th power of the representative
  for (auto const& prm : families()) {
    JkGroup const g(prm);
    int const     p = prm.p;
    for (std::uint32_t x = 0; x < static_cast<std::uint32_t>(p * p * p * p); ++x) {
      auto const v = FpVec4::from_index(x, p);
      REQUIRE(g.power(g.from_vector(v), static_cast<std::uint64_t>(p)) == g.central(g.pth_power(v)));
    }
  }
}

TEST_CASE("commutators") {
  JkGroup const g(GroupParams(3, 0, 1));
  CHECK(g.commutator(g.generator(0), g.generator(1)) == g.identity());
  CHECK(g.commutator(g.generator(2), g.generator(3)) == g.identity());
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      CHECK(g.commutator(g.generator(i), g.generator(2 + j)) == g.basis_commutator(2 * i + j));
    }
  }
  CHECK(g.commutator(g.generator(0), g.generator(2)) == el(g, {0, 0, 0, 0, 1, 0, 0, 0}));
}

TEST_CASE("commute criterion matches the group on every pair at p=3") {
  for (auto const& prm : GroupParams::all_for(3)) {
    JkGroup const g(prm);
    for (std::uint32_t x = 0; x < 81; ++x) {
      auto const v  = FpVec4::from_index(x, 3);
      auto const gv = g.from_vector(v);
      for (std::uint32_t y = 0; y < 81; ++y) {
        auto const w  = FpVec4::from_index(y, 3);
        bool const ok = g.commutator(gv, g.from_vector(w)) == g.identity();
        REQUIRE(g.commute_criterion(v, w) == ok);
        REQUIRE(g.central(g.commutator_vector(v, w)) == g.commutator(gv, g.from_vector(w)));
      }
    }
  }
  JkGroup const g(GroupParams(3, 0, 1));
  CHECK(g.commute_criterion(FpVec4({1, 2, 0, 1}, 3), FpVec4({1, 2, 0, 1}, 3)));
  CHECK_FALSE(g.commute_criterion(FpVec4({1, 0, 0, 0}, 3), FpVec4({0, 0, 1, 0}, 3)));
  CHECK(g.commute_criterion(FpVec4({1, 1, 0, 0}, 3), FpVec4({2, 2, 0, 0}, 3)));
}

TEST_CASE("center is the set of elements with zero generator part") {
  for (auto const& prm : families()) {
    JkGroup const g(prm);
    auto const    all = g.elements();
    std::vector<Element> brute;
    for (auto const& z : all) {
      bool central = true;
      for (std::size_t i = 0; i < 4 && central; ++i) {
        central = g.multiply(z, g.generator(i)) == g.multiply(g.generator(i), z);
      }
      if (central) {
        brute.push_back(z);
      }
    }
    auto const c = g.center();
    CHECK(c.members == brute);
    CHECK(c.size() == static_cast<std::size_t>(prm.p * prm.p * prm.p * prm.p));
    for (auto const& z : c.members) {
      CHECK(z.is_central());
      CHECK(g.power(z, static_cast<std::uint64_t>(prm.p)) == g.identity());
    }
    // derived subgroup generated by all commutators of generators
    std::vector<Element> comms;
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) {
        comms.push_back(g.commutator(g.generator(i), g.generator(j)));
      }
    }
    CHECK(g.generate(comms).members == c.members);
  }
}

TEST_CASE("omega1 sizes") {
  CHECK(JkGroup(GroupParams(3, 0, 1)).omega1().size() == 81);
  CHECK(JkGroup(GroupParams(3, 1, 0)).omega1().size() == 243);
  JkGroup const g(GroupParams(2, 1, 1));
  auto const    o = g.omega1();
  CHECK(o.size() == 32);
  auto gens = g.center().members;
  gens.push_back(g.parse("1,1,0,1|0,0,0,0"));
  CHECK(g.generate(gens).members == o.members);
  CHECK(g.is_subgroup(o));
}

TEST_CASE("parse and print") {
  JkGroup const g(GroupParams(3, 2, 1));
  for (std::uint32_t x = 0; x < g.order(); x += 37) {
    auto const e = g.element_at(x);
    CHECK(g.parse(to_string(e)) == e);
  }
  CHECK(to_string(g.parse("1,0,2,0|0,1,0,2")) == "1,0,2,0|0,1,0,2");
  CHECK_THROWS_AS(g.parse("1,0,2|0,1,0,2"), std::invalid_argument);
  CHECK_THROWS_AS(g.parse("1,0,2,0|0,1,0,3"), std::invalid_argument);
  CHECK_THROWS_AS(g.parse("x"), std::invalid_argument);
  CHECK_THROWS_AS(g.parse(""), std::invalid_argument);
}
