#include "catch_amalgamated.hpp"

#include <random>
#include <set>

#include <endomon/census.hpp>
#include <endomon/endo.hpp>

using namespace endomon;

namespace {

  Element y_elem(JkGroup const& g) {
    return g.multiply(g.generator(0), g.inverse(g.generator(1)));
  }

  Endo all_to(JkGroup const& g, Element const& x) {
    return make_endo(g, {x, x, x, x});
  }

  std::size_t image_size(JkGroup const& g, Endo const& e) {
    Evaluator const         ev(g, e);
    std::set<std::uint32_t> img;
    for (auto const& x : g.elements()) {
      img.insert(g.index(ev(x)));
    }
    return img.size();
  }

}  // namespace

TEST_CASE("validate examples") {
  for (int p : {2, 3}) {
    JkGroup const g(GroupParams(p, 1, 0));
    CHECK(validate(g, identity_endo(g).images()));
    CHECK(validate(g, {y_elem(g), y_elem(g), y_elem(g), y_elem(g)}));
  }
  JkGroup const g(GroupParams(3, 0, 1));
  auto const    one = g.identity();
  CHECK_FALSE(validate(g, {g.generator(1), one, one, one}));
  // the failing relation: a2^3 = [a1,b2] but [a2, 1] = 1
  CHECK(g.power(g.generator(1), 3) == g.basis_commutator(1));
  CHECK_THROWS_AS(make_endo(g, {g.generator(1), one, one, one}), std::invalid_argument);
  CHECK(validate(g, zero_endo(g).images()));
}

TEST_CASE("validity only sees generator parts") {
  std::mt19937_64 rng(17);
  for (int p : {2, 3}) {
    for (auto const& prm : GroupParams::all_for(p)) {
      JkGroup const                                g(prm);
      std::uniform_int_distribution<std::uint32_t> pick(0, g.order() - 1);
      for (int i = 0; i < 20000; ++i) {
        GenImages             im;
        std::array<FpVec4, 4> v{FpVec4(p), FpVec4(p), FpVec4(p), FpVec4(p)};
        for (std::size_t j = 0; j < 4; ++j) {
          im[j] = g.element_at(pick(rng));
          v[j]  = g.generator_part(im[j]);
        }
        REQUIRE(validate(g, im) == validate_vectors(g, v));
      }
    }
  }
}

TEST_CASE("evaluation examples") {
  JkGroup const g(GroupParams(2, 1, 0));
  auto const    phi = all_to(g, y_elem(g));
  auto const    a1b1 = g.multiply(g.generator(0), g.generator(2));
  CHECK(apply(g, phi, a1b1) == g.power(y_elem(g), 2));
  for (auto const& x : g.elements()) {
    CHECK(apply(g, identity_endo(g), x) == x);
    CHECK(apply(g, zero_endo(g), x) == g.identity());
  }
  // phi(y) = y y^-1, so phi o phi kills every generator
  CHECK(compose(g, phi, phi) == zero_endo(g));
  CHECK(compose(g, identity_endo(g), phi) == phi);
  CHECK(compose(g, phi, identity_endo(g)) == phi);
  CHECK(sum(g, phi, CentralHom::zero(2)) == phi);
  CHECK_THROWS_AS(sum(g, phi, phi), std::invalid_argument);
}

TEST_CASE("endomorphisms are homomorphisms") {
  std::mt19937_64 rng(19);
  for (auto const& prm : GroupParams::all_for(2)) {
    JkGroup const g(prm);
    auto const    reps = enumerate_normalized(g).endos;
    auto const    all  = g.elements();
    for (auto const& r : reps) {
      for (int s = 0; s < 2; ++s) {
        Endo const      e = s == 0 ? r : sum(g, r, random_central_hom(2, rng));
        Evaluator const ev(g, e);
        std::uint64_t   bad = 0;
        for (auto const& x : all) {
          auto const ex = ev(x);
          for (auto const& y : all) {
            bad += ev(g.multiply(x, y)) != g.multiply(ex, ev(y));
          }
        }
        REQUIRE(bad == 0);
      }
    }
  }
  for (auto const& prm : GroupParams::all_for(3)) {
    JkGroup const                                g(prm);
    auto const                                   reps = enumerate_normalized(g).endos;
    std::uniform_int_distribution<std::uint32_t> pick(0, g.order() - 1);
    for (std::size_t k = 0; k < reps.size(); k += 9) {
      Endo const      e = sum(g, reps[k], random_central_hom(3, rng));
      Evaluator const ev(g, e);
      for (int i = 0; i < 5000; ++i) {
        auto const x = g.element_at(pick(rng));
        auto const y = g.element_at(pick(rng));
        REQUIRE(ev(g.multiply(x, y)) == g.multiply(ev(x), ev(y)));
      }
    }
  }
}

TEST_CASE("star map") {
  std::mt19937_64 rng(23);
  for (int p : {2, 3}) {
    for (auto const& prm : GroupParams::all_for(p)) {
      JkGroup const g(prm);
      CHECK(star(g, CentralHom::zero(p)) == identity_endo(g));
      auto const elem = elementary_central_homs(p);
      // f*(a1) = a1 [a1,b1] for f : a1 -> [a1,b1]
      CHECK(star(g, elem[0]).image(0) == g.multiply(g.generator(0), g.basis_commutator(0)));
      for (auto const& f : elem) {
        for (auto const& h : elem) {
          REQUIRE(compose(g, star(g, f), star(g, h)) == star(g, f + h));
        }
      }
      for (int i = 0; i < 1000; ++i) {
        auto const f = random_central_hom(p, rng);
        auto const h = random_central_hom(p, rng);
        auto const s = star(g, f);
        REQUIRE(compose(g, s, star(g, h)) == star(g, f + h));
        REQUIRE(compose(g, s, star(g, -f)) == identity_endo(g));
        REQUIRE(power(g, s, static_cast<std::uint64_t>(p)) == identity_endo(g));
        REQUIRE(is_automorphism(g, s));
        // f* o c = c = c o f* for central-valued c
        auto const c = as_endo(g, h);
        REQUIRE(compose(g, s, c) == c);
        REQUIRE(compose(g, c, s) == c);
        REQUIRE(compose(g, c, as_endo(g, f)) == zero_endo(g));
        // stars fix the center pointwise
        auto const z = g.central(FpVec4::from_index(static_cast<std::uint32_t>(i % (p * p * p * p)), p));
        REQUIRE(apply(g, s, z) == z);
      }
    }
  }
}

TEST_CASE("normalization") {
  std::mt19937_64 rng(29);
  for (int p : {2, 3}) {
    JkGroup const g(GroupParams(p, 1, 0));
    for (int i = 0; i < 200; ++i) {
      auto const f          = random_central_hom(p, rng);
      auto const [norm, c]  = normalize(g, star(g, f));
      CHECK(norm == identity_endo(g));
      CHECK(c == f);
    }
    auto const [zn, zc] = normalize(g, zero_endo(g));
    CHECK(zn == zero_endo(g));
    CHECK(zc.mat.is_zero());
  }
  // Normalize is a bijection onto reps x central homs.
  for (auto const& prm : GroupParams::all_for(2)) {
    JkGroup const g(prm);
    auto const    reps = enumerate_normalized(g).endos;
    for (auto const& r : reps) {
      REQUIRE(is_normalized(r));
      std::set<Endo> seen;
      for (std::uint64_t x = 0; x < (1u << 16); ++x) {
        CentralHom const f(FpMat4::from_index(x, 2));
        Endo const       e = sum(g, r, f);
        REQUIRE(validate(g, e.images()));
        auto const [n, c] = normalize(g, e);
        REQUIRE(n == r);
        REQUIRE(c == f);
        REQUIRE(sum(g, n, c) == e);
        seen.insert(e);
      }
      REQUIRE(seen.size() == (1u << 16));
    }
  }
}

TEST_CASE("automorphisms are exactly the stars") {
  for (int p : {2, 3}) {
    for (auto const& prm : GroupParams::all_for(p)) {
      JkGroup const g(prm);
      auto const    reps = enumerate_normalized(g).endos;
      std::size_t   autos = 0;
      for (auto const& r : reps) {
        if (is_automorphism(g, r)) {
          ++autos;
          CHECK(r == identity_endo(g));
        }
        if (p == 2) {
          CHECK(is_automorphism(g, r) == (image_size(g, r) == g.order()));
        }
      }
      // one class, p^16 automorphisms
      CHECK(autos == 1);
      CHECK(autos * class_size(p) == (p == 2 ? 65536u : 43046721u));
    }
  }
  JkGroup const g(GroupParams(2, 1, 1));
  CHECK_FALSE(is_automorphism(g, zero_endo(g)));
  CHECK(image_size(g, zero_endo(g)) == 1);
}

TEST_CASE("parse endomorphisms") {
  JkGroup const g(GroupParams(2, 0, 1));
  auto const    id = parse_endo(g, "1,0,0,0|0,0,0,0;0,1,0,0|0,0,0,0;0,0,1,0|0,0,0,0;0,0,0,1|0,0,0,0");
  CHECK(id == identity_endo(g));
  CHECK(parse_endo(g, to_string(id)) == id);
  CHECK_THROWS_AS(parse_endo(g, "1,0,0,0|0,0,0,0;0,1,0,0|0,0,0,0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_endo(g, "1,0,0,0|0,0,0,0;1,0,0,0|0,0,0,0;0,0,1,0|0,0,0,0;0,0,0,1|0,0,0,0"),
                  std::invalid_argument);
  auto const f = parse_central_hom(3, "1000020000000001");
  CHECK(f.mat(0, 0) == 1);
  CHECK(f.mat(1, 1) == 2);
  CHECK(f.mat(3, 3) == 1);
  CHECK(to_string(f) == f.mat.to_string());
  CHECK_THROWS_AS(parse_central_hom(3, "100002000000000"), std::invalid_argument);
  CHECK_THROWS_AS(parse_central_hom(2, "1000020000000001"), std::invalid_argument);
}
