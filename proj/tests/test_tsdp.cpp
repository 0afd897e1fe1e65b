#include "catch_amalgamated.hpp"

#include <random>

#include <endomon/tsdp.hpp>

using namespace endomon;

namespace {

  AuditOptions quick() {
    AuditOptions o;
    o.exhaustive_limit = 100'000;
    o.samples          = 20'000;
    o.seed             = 42;
    return o;
  }

  FpMat4 rand_mat(int p, std::mt19937_64& rng) {
    return random_central_hom(p, rng).mat;
  }

}  // namespace

TEST_CASE("S_p operation") {
  FpVec4 const y({1, 2, 0, 1}, 3);
  for (int a = 0; a < 3; ++a) {
    CHECK(sp_op(FpVec4({a, a, 1, 2}, 3), y).is_zero());
  }
  CHECK(sp_op(FpVec4({2, 1, 0, 0}, 3), FpVec4({1, 1, 1, 1}, 3)) == FpVec4({1, 1, 1, 1}, 3));
  CHECK_THROWS(sp_op(FpVec4(2), FpVec4(3)));

  // brute force over all 16^3 triples at p=2
  std::uint64_t bad = 0;
  for (std::uint32_t a = 0; a < 16; ++a) {
    for (std::uint32_t b = 0; b < 16; ++b) {
      for (std::uint32_t c = 0; c < 16; ++c) {
        auto const x = FpVec4::from_index(a, 2);
        auto const y2 = FpVec4::from_index(b, 2);
        auto const z = FpVec4::from_index(c, 2);
        bad += sp_op(sp_op(x, y2), z) != sp_op(x, sp_op(y2, z));
      }
    }
  }
  CHECK(bad == 0);
  auto const t2 = audit_sp_associativity(2, {});
  CHECK(t2.ok());
  CHECK(t2.exhaustive);
  CHECK(t2.checks == 4096);
  CHECK(audit_sp_associativity(3, {}).ok());
  AuditOptions sampled;
  sampled.samples = 200'000;
  auto const t5 = audit_sp_associativity(5, sampled);
  CHECK(t5.ok());
  CHECK_FALSE(t5.exhaustive);
}

TEST_CASE("adjoined identity is not a vector") {
  auto const one = Sp1Element::adjoined_identity(3);
  auto const z   = Sp1Element::vector(FpVec4(3));
  auto const x   = Sp1Element::vector(FpVec4({1, 0, 2, 2}, 3));
  CHECK(sp1_op(one, x) == x);
  CHECK(sp1_op(x, one) == x);
  CHECK(sp1_op(z, x) == z);
  CHECK(sp1_op(x, z) == z);
  CHECK_FALSE(one == z);
  CHECK_THROWS_AS(one.vec(), std::logic_error);
  CHECK(to_string(one) == "1");
  CHECK(to_string(x) == "(1,0,2,2)");
  CHECK(sp1_monoid(3).order == 82);
}

TEST_CASE("commutative model") {
  std::mt19937_64 rng(1);
  for (int p : {2, 3}) {
    auto const m = build_commutative_model(p, quick());
    CHECK(m.construction_audit().ok());
    for (int i = 0; i < 2000; ++i) {
      FpMat4 const a = rand_mat(p, rng);
      FpMat4 const b = rand_mat(p, rng);
      CHECK(m.product({a, 1}, {b, 1}) == std::pair{a + b, 1});
      CHECK(m.product({a, 0}, {b, 0}) == std::pair{FpMat4(p), 0});
      CHECK(m.product({a, 1}, {b, 0}) == std::pair{b, 0});
      CHECK(m.product({a, 0}, {b, 1}) == std::pair{a, 0});
      CHECK(m.product({a, i % 2}, m.identity()) == std::pair{a, i % 2});
      CHECK(m.product(m.identity(), {a, i % 2}) == std::pair{a, i % 2});
      auto const x = m.sample(rng);
      auto const y = m.sample(rng);
      CHECK(m.product(x, y) == m.product(y, x));
    }
    CHECK(m.identity() == std::pair{FpMat4(p), 1});
    CHECK(m.audit_product(20'000, 3).ok());
  }
}

TEST_CASE("exceptional model") {
  std::mt19937_64 rng(2);
  for (int p : {2, 3}) {
    auto const m = build_exceptional_model(p, quick());
    CHECK(m.construction_audit().ok());
    CHECK(m.audit_product(20'000, 4).ok());
    for (int i = 0; i < 500; ++i) {
      FpMat4 const mat = rand_mat(p, rng);
      auto const   x   = m.m2().sample(rng);
      FpMat4 const r   = exceptional_right_action(mat, x);
      if (x.is_identity()) {
        CHECK(r == mat);
        CHECK(exceptional_left_action(x, mat) == mat);
        continue;
      }
      for (std::size_t j = 0; j < 4; ++j) {
        CHECK(r.column(j) == (mat.column(0) - mat.column(1)).scaled(x.vec()[j]));
      }
      CHECK(exceptional_left_action(x, mat).is_zero());
    }
  }
}

TEST_CASE("actions that break the axioms are rejected") {
  FiniteMonoid<int> bits{"{0,1}", 1, [](int a, int b) { return a * b; }, 2, {0, 1}, {}};
  bits.sample = [](std::mt19937_64& rng) { return static_cast<int>(rng() & 1u); };
  // the right action ignores the identity
  CHECK_THROWS_AS(CommutativeModel(matrix_additive_monoid(3), bits,
                                   [](int b, FpMat4 const& m) { return m.scaled(b); },
                                   [](FpMat4 const& m, int) { return m.scaled(2); }, quick()),
                  AxiomViolation);
  // right action through the transpose is not additive-compatible with the left one
  auto const left  = [](Sp1Element const& s, FpMat4 const& m) { return exceptional_right_action(m, s); };
  auto const right = [](FpMat4 const& m, Sp1Element const& s) { return exceptional_right_action(m, s); };
  CHECK_THROWS_AS(ExceptionalModel(matrix_additive_monoid(3), sp1_monoid(3), left, right, quick()),
                  AxiomViolation);
}

TEST_CASE("alpha examples") {
  for (int p : {2, 3}) {
    JkGroup const g(GroupParams(p, 1, 0));
    auto const    id = alpha(g, identity_endo(g));
    CHECK(id.first.is_zero());
    CHECK(id.second.is_identity());

    std::mt19937_64 rng(5);
    auto const      f = random_central_hom(p, rng);
    auto const      s = alpha(g, star(g, f));
    CHECK(s.first == f.mat);
    CHECK(s.second.is_identity());

    Element const y   = g.multiply(g.generator(0), g.inverse(g.generator(1)));
    auto const    phi = make_endo(g, {y, y, y, y});
    auto const    a   = alpha(g, phi);
    CHECK(a.first.is_zero());
    REQUIRE_FALSE(a.second.is_identity());
    CHECK(a.second.vec() == FpVec4({1, 1, 1, 1}, p));

    for (auto const& e : {identity_endo(g), phi, star(g, f), sum(g, phi, f)}) {
      CHECK(alpha_inverse(g, alpha(g, e)) == e);
    }
  }
  CHECK_THROWS_AS(alpha(JkGroup(GroupParams(2, 1, 1)), identity_endo(JkGroup(GroupParams(2, 1, 1)))),
                  std::invalid_argument);
}

TEST_CASE("alpha is a monoid isomorphism") {
  auto const r2 = verify_alpha_isomorphism(2, 50'000, 7, true);
  CHECK(r2.ok());
  CHECK(r2.exhaustive_pairs > 0);
  CHECK(r2.failures == 0);
  auto const r3 = verify_alpha_isomorphism(3, 10'000, 7, false);
  CHECK(r3.ok());
  CHECK(r3.sampled_pairs == 10'000);
}

TEST_CASE("commutative coordinates are an isomorphism") {
  for (auto const& prm : {GroupParams(2, 0, 1), GroupParams(3, 0, 1), GroupParams(3, 2, 1)}) {
    auto const r = verify_commutative_model(prm, 20'000, 9, prm.p == 2);
    CHECK(r.ok());
  }
  JkGroup const g(GroupParams(2, 0, 1));
  CHECK(commutative_coordinates(g, identity_endo(g)) == std::pair{FpMat4(2), 1});
  CHECK(commutative_coordinates(g, zero_endo(g)) == std::pair{FpMat4(2), 0});
}

TEST_CASE("lambda=(1,1), p=2 is a semidirect product over a section") {
  auto const sm = build_section_model(quick());
  CHECK(sm.section.size() == 23);
  CHECK(sm.model.construction_audit().ok());
  for (auto const& s : sm.section) {
    auto const c = section_coordinates(sm, s);
    CHECK(c.first.is_zero());
    CHECK(c.second == s);
  }
  auto const r = verify_section_model(20'000, 11);
  CHECK(r.ok());
  CHECK(r.failures == 0);
}
