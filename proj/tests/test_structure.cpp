#include "catch_amalgamated.hpp"

#include <random>
#include <set>

#include <endomon/structure.hpp>

using namespace endomon;

namespace {

  Endo y_map(JkGroup const& g) {
    Element const y = g.multiply(g.generator(0), g.inverse(g.generator(1)));
    return make_endo(g, {y, y, y, y});
  }

  // ker and image of a high power of e
  std::pair<std::vector<Element>, std::vector<Element>> stable_kernel_image(JkGroup const& g, Endo const& e) {
    Endo const            en = power(g, e, 64);
    Evaluator const       ev(g, en);
    std::vector<Element>  ker;
    std::set<Element>     img;
    for (auto const& x : g.elements()) {
      auto const y = ev(x);
      if (y == g.identity()) {
        ker.push_back(x);
      }
      img.insert(y);
    }
    return {ker, {img.begin(), img.end()}};
  }

}  // namespace

TEST_CASE("omega1 against the center") {
  auto const r01 = omega1_report(GroupParams(3, 0, 1));
  CHECK(r01.leq_center);
  CHECK(r01.omega1_size == 81);
  CHECK_FALSE(r01.witness.has_value());

  auto const r10 = omega1_report(GroupParams(3, 1, 0));
  CHECK_FALSE(r10.leq_center);
  CHECK(r10.omega1_size == 243);
  REQUIRE(r10.witness.has_value());
  JkGroup const g10(GroupParams(3, 1, 0));
  // witness lies in <center, a1 a2^-1>
  auto const y = g10.multiply(g10.generator(0), g10.inverse(g10.generator(1)));
  auto       gens = g10.center().members;
  gens.push_back(y);
  CHECK(g10.generate(gens).contains(*r10.witness));

  auto const r11 = omega1_report(GroupParams(2, 1, 1));
  CHECK_FALSE(r11.leq_center);
  CHECK(r11.omega1_size == 32);
  CHECK(r11.is_subgroup);

  for (int p : {2, 3}) {
    for (auto const& prm : GroupParams::all_for(p)) {
      CAPTURE(prm.to_string());
      CHECK(omega1_leq_center(prm) == !prm.is_exceptional());
      auto const r = omega1_report(prm);
      CHECK(r.is_subgroup);
      if (prm.lambda2 == 0) {
        CHECK(r.omega1_size == static_cast<std::size_t>(p * p * p * p * p));
      }
    }
  }
  CHECK(omega1_report(GroupParams(2, 1, 0)).omega1_size == 32);
  CHECK(omega1_report(GroupParams(2, 0, 1)).omega1_size == 16);
}

TEST_CASE("nil and per examples") {
  for (auto const& prm : GroupParams::all_for(2)) {
    JkGroup const g(prm);
    auto const    id = nil_per_split(g, identity_endo(g));
    CHECK(id.ok());
    CHECK(id.nil == std::vector<Element>{g.identity()});
    CHECK(id.per.size() == g.order());
    auto const z = nil_per_split(g, zero_endo(g));
    CHECK(z.ok());
    CHECK(z.nil.size() == g.order());
    CHECK(z.per == std::vector<Element>{g.identity()});
    CHECK(nilpotency_index(g, zero_endo(g)) == 1);
    CHECK_FALSE(nilpotency_index(g, identity_endo(g)).has_value());
  }
  JkGroup const g(GroupParams(2, 1, 0));
  auto const    s = nil_per_split(g, y_map(g));
  CHECK(s.ok());
  CHECK(s.nil.size() == 256);
  CHECK(s.per == std::vector<Element>{g.identity()});
  CHECK(nilpotency_index(g, y_map(g)) == 2);
  JkGroup const g3(GroupParams(3, 1, 0));
  CHECK(nilpotency_index(g3, y_map(g3)) == 2);
}

TEST_CASE("nil and per agree with kernel and image of a high power") {
  std::mt19937_64 rng(4);
  for (auto const& prm : GroupParams::all_for(2)) {
    JkGroup const g(prm);
    auto const    nm = enumerate_normalized(g).endos;
    for (int i = 0; i < 40; ++i) {
      auto const e          = random_endo(g, nm, rng);
      auto const s          = nil_per_split(g, e);
      auto const [ker, img] = stable_kernel_image(g, e);
      REQUIRE(s.nil == ker);
      REQUIRE(s.per == img);
      REQUIRE(s.ok());
    }
  }
}

TEST_CASE("split invariants on random endomorphisms") {
  for (auto const& prm : GroupParams::all_for(2)) {
    auto const r = survey_nil_per(prm, 300, 8, 2);
    CHECK(r.ok());
    CHECK(r.samples == 300);
  }
  for (auto const& prm : GroupParams::all_for(3)) {
    auto const r = survey_nil_per(prm, 20, 8, 2);
    CHECK(r.ok());
  }
  // end-commutative: every endomorphism is an automorphism or nilpotent
  auto const r = survey_nil_per(GroupParams(3, 0, 1), 20, 9, 2);
  CHECK(r.automorphisms + r.nilpotent == r.samples);
}

TEST_CASE("image invariance") {
  JkGroup const g(GroupParams(2, 1, 0));
  auto const    y = image_fully_invariant(g, y_map(g));
  CHECK_FALSE(y.invariant);
  CHECK(y.exhaustive);
  CHECK(y.witness.has_value());

  // image = center
  auto const c = image_fully_invariant(g, as_endo(g, CentralHom(FpMat4::identity(2))));
  CHECK(c.invariant);
  CHECK(c.exhaustive);
  CHECK(c.tested == 17u * 65536u);

  JkGroup const g01(GroupParams(2, 0, 1));
  std::mt19937_64 rng(6);
  for (int i = 0; i < 3; ++i) {
    auto const f = random_central_hom(2, rng);
    CHECK(image_fully_invariant(g01, as_endo(g01, f)).invariant);
    CHECK(image_fully_invariant(g01, star(g01, f)).invariant);
  }

  JkGroup const g3(GroupParams(3, 0, 1));
  auto const    r3 = image_fully_invariant(g3, as_endo(g3, CentralHom(FpMat4::identity(3))));
  CHECK(r3.invariant);
  CHECK_FALSE(r3.exhaustive);
}

TEST_CASE("stars fix the center, non-automorphisms kill it") {
  std::mt19937_64 rng(7);
  for (int p : {2, 3}) {
    for (auto const& prm : GroupParams::all_for(p)) {
      if (prm.is_exceptional()) {
        continue;
      }
      JkGroup const g(prm);
      auto const    nm = enumerate_normalized(g).endos;
      for (int i = 0; i < 50; ++i) {
        auto const e = random_endo(g, nm, rng);
        for (std::size_t k = 0; k < 4; ++k) {
          auto const z = g.basis_commutator(k);
          if (is_automorphism(g, e)) {
            CHECK(apply(g, e, z) == z);
          } else {
            CHECK(apply(g, e, z) == g.identity());
          }
        }
      }
    }
  }
}
