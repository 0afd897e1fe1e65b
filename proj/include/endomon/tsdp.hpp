// endomon - exact endomorphism monoids of small p-groups
//
// Two-sided semidirect products M1 x M2 with
//
//   (m1, m2) (m1', m2') = (m1 m2' + m2 m1', m2 m2')
//
// for an additive monoid M1 and a monoid M2 acting on it from both sides
// by monoid endomorphisms, the two actions commuting. Instances audit
// their axioms on construction.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "census.hpp"
#include "endo.hpp"
#include "fp.hpp"
#include "jk_group.hpp"

namespace endomon {

  ////////////////////////////////////////////////////////////////////////
  // Finite monoids
  ////////////////////////////////////////////////////////////////////////

  template <typename T>
  struct FiniteMonoid {
    std::string                           name;
    T                                     identity;
    std::function<T(T const&, T const&)>  op;
    std::uint64_t                         order = 0;
    std::vector<T>                        elements;   // empty when too large to list
    std::function<T(std::mt19937_64&)>    sample;

    bool listed() const noexcept { return !elements.empty(); }
  };

  struct AxiomTally {
    std::string                name;
    std::uint64_t              checks   = 0;
    std::uint64_t              failures = 0;
    bool                       exhaustive = false;
    std::optional<std::string> counterexample;

    bool ok() const noexcept { return failures == 0; }
  };

  struct AuditOptions {
    std::uint64_t exhaustive_limit = 10'000'000;   // work units
    std::uint64_t samples          = 100'000;
    std::uint64_t seed             = 1;
  };

  struct AuditReport {
    std::vector<AxiomTally> axioms;

    bool ok() const noexcept {
      for (auto const& a : axioms) {
        if (!a.ok()) {
          return false;
        }
      }
      return true;
    }
  };

  class AxiomViolation : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  namespace detail {
    // Runs `check` over all k-tuples when listed and affordable, else over
    // `samples` random k-tuples.
    template <typename T, typename Check>
    AxiomTally tally_tuples(std::string name, FiniteMonoid<T> const& m, int arity,
                            AuditOptions const& opt, Check&& check) {
      AxiomTally t;
      t.name            = std::move(name);
      std::uint64_t n   = m.elements.size();
      std::uint64_t work = 1;
      for (int i = 0; i < arity; ++i) {
        work *= n;
      }
      auto record = [&](bool ok, auto&& describe) {
        ++t.checks;
        if (!ok) {
          ++t.failures;
          if (!t.counterexample) {
            t.counterexample = describe();
          }
        }
      };
      if (m.listed() && work <= opt.exhaustive_limit) {
        t.exhaustive = true;
        std::vector<std::size_t> ix(static_cast<std::size_t>(arity), 0);
        for (std::uint64_t w = 0; w < work; ++w) {
          std::uint64_t rest = w;
          for (int i = arity; i-- > 0;) {
            ix[static_cast<std::size_t>(i)] = static_cast<std::size_t>(rest % n);
            rest /= n;
          }
          std::vector<T> args;
          for (auto i : ix) {
            args.push_back(m.elements[i]);
          }
          record(check(args), [&] { return "tuple #" + std::to_string(w); });
        }
      } else {
        std::mt19937_64 rng(opt.seed);
        for (std::uint64_t s = 0; s < opt.samples; ++s) {
          std::vector<T> args;
          for (int i = 0; i < arity; ++i) {
            args.push_back(m.sample(rng));
          }
          record(check(args), [&] { return "sample #" + std::to_string(s); });
        }
      }
      return t;
    }
  }  // namespace detail

  template <typename T>
  AuditReport audit_monoid(FiniteMonoid<T> const& m, AuditOptions const& opt = {}) {
    AuditReport r;
    r.axioms.push_back(detail::tally_tuples(m.name + ": two-sided identity", m, 1, opt, [&](auto const& a) {
      return m.op(m.identity, a[0]) == a[0] && m.op(a[0], m.identity) == a[0];
    }));
    r.axioms.push_back(detail::tally_tuples(m.name + ": associativity", m, 3, opt, [&](auto const& a) {
      return m.op(m.op(a[0], a[1]), a[2]) == m.op(a[0], m.op(a[1], a[2]));
    }));
    return r;
  }

  ////////////////////////////////////////////////////////////////////////
  // Two-sided semidirect product
  ////////////////////////////////////////////////////////////////////////

  template <typename A, typename B>
  class Tsdp {
   public:
    using value_type   = std::pair<A, B>;
    using left_action  = std::function<A(B const&, A const&)>;   // m2 m1
    using right_action = std::function<A(A const&, B const&)>;   // m1 m2

    Tsdp(FiniteMonoid<A> m1, FiniteMonoid<B> m2, left_action left, right_action right,
         AuditOptions const& opt = {})
        : _m1(std::move(m1)), _m2(std::move(m2)), _left(std::move(left)), _right(std::move(right)) {
      _audit = audit(opt);
      if (!_audit.ok()) {
        for (auto const& a : _audit.axioms) {
          if (!a.ok()) {
            throw AxiomViolation("two-sided semidirect product axiom failed: " + a.name
                                 + (a.counterexample ? " at " + *a.counterexample : ""));
          }
        }
      }
    }

    FiniteMonoid<A> const& m1() const noexcept { return _m1; }
    FiniteMonoid<B> const& m2() const noexcept { return _m2; }
    AuditReport const&     construction_audit() const noexcept { return _audit; }

    A left(B const& b, A const& a) const { return _left(b, a); }
    A right(A const& a, B const& b) const { return _right(a, b); }

    value_type identity() const { return {_m1.identity, _m2.identity}; }

    value_type product(value_type const& x, value_type const& y) const {
      return {_m1.op(_right(x.first, y.second), _left(x.second, y.first)), _m2.op(x.second, y.second)};
    }

    value_type sample(std::mt19937_64& rng) const { return {_m1.sample(rng), _m2.sample(rng)}; }

    std::uint64_t order() const noexcept { return _m1.order * _m2.order; }

    // Monoid axioms of both factors, the action laws, and compatibility
    // (m2 m1) m2' = m2 (m1 m2').
    AuditReport audit(AuditOptions const& opt) const {
      AuditReport r = audit_monoid(_m1, opt);
      for (auto& a : audit_monoid(_m2, opt).axioms) {
        r.axioms.push_back(std::move(a));
      }
      r.axioms.push_back(tally_actions("left action: identity acts trivially, zero fixed", 1, 1, opt,
                                       [&](auto const& a, auto const& b) {
                                         return _left(_m2.identity, a[0]) == a[0]
                                                && _left(b[0], _m1.identity) == _m1.identity;
                                       }));
      r.axioms.push_back(tally_actions("left action: additive", 2, 1, opt, [&](auto const& a, auto const& b) {
        return _left(b[0], _m1.op(a[0], a[1])) == _m1.op(_left(b[0], a[0]), _left(b[0], a[1]));
      }));
      r.axioms.push_back(tally_actions("left action: monoid homomorphism", 1, 2, opt,
                                       [&](auto const& a, auto const& b) {
                                         return _left(_m2.op(b[0], b[1]), a[0]) == _left(b[0], _left(b[1], a[0]));
                                       }));
      r.axioms.push_back(tally_actions("right action: identity acts trivially, zero fixed", 1, 1, opt,
                                       [&](auto const& a, auto const& b) {
                                         return _right(a[0], _m2.identity) == a[0]
                                                && _right(_m1.identity, b[0]) == _m1.identity;
                                       }));
      r.axioms.push_back(tally_actions("right action: additive", 2, 1, opt, [&](auto const& a, auto const& b) {
        return _right(_m1.op(a[0], a[1]), b[0]) == _m1.op(_right(a[0], b[0]), _right(a[1], b[0]));
      }));
      r.axioms.push_back(tally_actions("right action: compatible with product", 1, 2, opt,
                                       [&](auto const& a, auto const& b) {
                                         return _right(a[0], _m2.op(b[0], b[1])) == _right(_right(a[0], b[0]), b[1]);
                                       }));
      r.axioms.push_back(tally_actions("actions commute", 1, 2, opt, [&](auto const& a, auto const& b) {
        return _right(_left(b[0], a[0]), b[1]) == _left(b[0], _right(a[0], b[1]));
      }));
      return r;
    }

    // Identity and associativity of the product itself, on random triples.
    AuditReport audit_product(std::uint64_t samples, std::uint64_t seed) const {
      AxiomTally id{"product: identity (0,1)", 0, 0, false, std::nullopt};
      AxiomTally as{"product: associativity", 0, 0, false, std::nullopt};
      std::mt19937_64 rng(seed);
      auto const      e = identity();
      for (std::uint64_t s = 0; s < samples; ++s) {
        auto x = sample(rng);
        auto y = sample(rng);
        auto z = sample(rng);
        ++id.checks;
        if (!(product(x, e) == x && product(e, x) == x)) {
          ++id.failures;
        }
        ++as.checks;
        if (!(product(product(x, y), z) == product(x, product(y, z)))) {
          ++as.failures;
          if (!as.counterexample) {
            as.counterexample = "sample #" + std::to_string(s);
          }
        }
      }
      AuditReport r;
      r.axioms = {id, as};
      return r;
    }

   private:
    template <typename Check>
    AxiomTally tally_actions(std::string name, int n1, int n2, AuditOptions const& opt, Check&& check) const {
      AxiomTally    t;
      t.name             = std::move(name);
      std::uint64_t work = 1;
      for (int i = 0; i < n1; ++i) {
        work *= _m1.elements.size();
      }
      for (int i = 0; i < n2; ++i) {
        work *= _m2.elements.size();
      }
      auto record = [&](bool ok, std::string const& where) {
        ++t.checks;
        if (!ok) {
          ++t.failures;
          if (!t.counterexample) {
            t.counterexample = where;
          }
        }
      };
      if (_m1.listed() && _m2.listed() && work <= opt.exhaustive_limit) {
        t.exhaustive = true;
        for (std::uint64_t w = 0; w < work; ++w) {
          std::uint64_t  rest = w;
          std::vector<A> a;
          std::vector<B> b;
          for (int i = 0; i < n2; ++i) {
            b.push_back(_m2.elements[rest % _m2.elements.size()]);
            rest /= _m2.elements.size();
          }
          for (int i = 0; i < n1; ++i) {
            a.push_back(_m1.elements[rest % _m1.elements.size()]);
            rest /= _m1.elements.size();
          }
          record(check(a, b), "tuple #" + std::to_string(w));
        }
      } else {
        std::mt19937_64 rng(opt.seed);
        for (std::uint64_t s = 0; s < opt.samples; ++s) {
          std::vector<A> a;
          std::vector<B> b;
          for (int i = 0; i < n1; ++i) {
            a.push_back(_m1.sample(rng));
          }
          for (int i = 0; i < n2; ++i) {
            b.push_back(_m2.sample(rng));
          }
          record(check(a, b), "sample #" + std::to_string(s));
        }
      }
      return t;
    }

    FiniteMonoid<A> _m1;
    FiniteMonoid<B> _m2;
    left_action     _left;
    right_action    _right;
    AuditReport     _audit;
  };

  ////////////////////////////////////////////////////////////////////////
  // S_p and S_p^1
  ////////////////////////////////////////////////////////////////////////

  // x . y = (x1 - x2) y
  inline FpVec4 sp_op(FpVec4 const& x, FpVec4 const& y) {
    detail::check_same_modulus(x.modulus(), y.modulus());
    return y.scaled(x[0] - x[1]);
  }

  // S_p with an identity adjoined. The adjoined identity is its own
  // symbol: the zero vector is absorbing, not neutral.
  class Sp1Element {
   public:
    static Sp1Element adjoined_identity(int p) { return Sp1Element(true, FpVec4(p)); }
    static Sp1Element vector(FpVec4 const& v) { return Sp1Element(false, v); }

    bool          is_identity() const noexcept { return _identity; }
    FpVec4 const& vec() const {
      if (_identity) {
        throw std::logic_error("the adjoined identity has no vector");
      }
      return _v;
    }
    int modulus() const noexcept { return _v.modulus(); }

    bool operator==(Sp1Element const&) const = default;

   private:
    Sp1Element(bool id, FpVec4 v) : _identity(id), _v(std::move(v)) {}
    bool   _identity;
    FpVec4 _v;
  };

  inline std::string to_string(Sp1Element const& s) {
    if (s.is_identity()) {
      return "1";
    }
    std::string out = "(";
    for (std::size_t i = 0; i < 4; ++i) {
      out += (i ? "," : "") + std::to_string(s.vec()[i]);
    }
    return out + ")";
  }

  inline Sp1Element sp1_op(Sp1Element const& x, Sp1Element const& y) {
    if (x.is_identity()) {
      return y;
    }
    if (y.is_identity()) {
      return x;
    }
    return Sp1Element::vector(sp_op(x.vec(), y.vec()));
  }

  inline std::uint64_t pow_u64(std::uint64_t b, int e) {
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) {
      r *= b;
    }
    return r;
  }

  inline FiniteMonoid<Sp1Element> sp1_monoid(int p) {
    FiniteMonoid<Sp1Element> m{"S_p^1", Sp1Element::adjoined_identity(p), sp1_op,
                               pow_u64(static_cast<std::uint64_t>(p), 4) + 1, {}, {}};
    m.elements.push_back(Sp1Element::adjoined_identity(p));
    for (std::uint32_t x = 0; x < pow_u64(static_cast<std::uint64_t>(p), 4); ++x) {
      m.elements.push_back(Sp1Element::vector(FpVec4::from_index(x, p)));
    }
    auto const elems = m.elements;
    m.sample         = [elems](std::mt19937_64& rng) {
      std::uniform_int_distribution<std::size_t> d(0, elems.size() - 1);
      return elems[d(rng)];
    };
    return m;
  }

  // S_p itself (no identity) as a semigroup check: associativity only.
  inline AxiomTally audit_sp_associativity(int p, AuditOptions const& opt) {
    FiniteMonoid<FpVec4> s{"S_p", FpVec4(p), sp_op, pow_u64(static_cast<std::uint64_t>(p), 4), {}, {}};
    for (std::uint32_t x = 0; x < s.order; ++x) {
      s.elements.push_back(FpVec4::from_index(x, p));
    }
    s.sample = [p](std::mt19937_64& rng) {
      std::uniform_int_distribution<std::uint32_t> d(0, static_cast<std::uint32_t>(p * p * p * p - 1));
      return FpVec4::from_index(d(rng), p);
    };
    return detail::tally_tuples("S_p: associativity", s, 3, opt, [&](auto const& a) {
      return sp_op(sp_op(a[0], a[1]), a[2]) == sp_op(a[0], sp_op(a[1], a[2]));
    });
  }

  ////////////////////////////////////////////////////////////////////////
  // The two models
  ////////////////////////////////////////////////////////////////////////

  inline FiniteMonoid<FpMat4> matrix_additive_monoid(int p) {
    FiniteMonoid<FpMat4> m{"Mat4(F_p)", FpMat4(p), [](FpMat4 const& a, FpMat4 const& b) { return a + b; },
                           pow_u64(static_cast<std::uint64_t>(p), 16), {}, {}};
    if (p == 2) {
      for (std::uint64_t x = 0; x < m.order; ++x) {
        m.elements.push_back(FpMat4::from_index(x, p));
      }
    }
    m.sample = [p](std::mt19937_64& rng) { return random_central_hom(p, rng).mat; };
    return m;
  }

  using CommutativeModel = Tsdp<FpMat4, int>;
  using ExceptionalModel = Tsdp<FpMat4, Sp1Element>;

  // Mat4(F_p) x {0,1}, both actions scalar multiplication.
  inline CommutativeModel build_commutative_model(int p, AuditOptions const& opt = {}) {
    require_supported_prime(p);
    FiniteMonoid<int> bits{"{0,1}", 1, [](int a, int b) { return a * b; }, 2, {0, 1}, {}};
    bits.sample = [](std::mt19937_64& rng) { return static_cast<int>(rng() & 1u); };
    return CommutativeModel(
        matrix_additive_monoid(p), bits, [](int b, FpMat4 const& m) { return m.scaled(b); },
        [](FpMat4 const& m, int b) { return m.scaled(b); }, opt);
  }

  // Right action of x on M: column j becomes x_j (col1(M) - col2(M)).
  inline FpMat4 exceptional_right_action(FpMat4 const& m, Sp1Element const& s) {
    if (s.is_identity()) {
      return m;
    }
    FpVec4 const diff = m.column(0) - m.column(1);
    FpMat4       out(m.modulus());
    for (std::size_t j = 0; j < 4; ++j) {
      out.set_column(j, diff.scaled(s.vec()[j]));
    }
    return out;
  }

  // Non-identity elements act as zero from the left.
  inline FpMat4 exceptional_left_action(Sp1Element const& s, FpMat4 const& m) {
    return s.is_identity() ? m : FpMat4(m.modulus());
  }

  // Mat4(F_p) x S_p^1.
  inline ExceptionalModel build_exceptional_model(int p, AuditOptions const& opt = {}) {
    require_supported_prime(p);
    return ExceptionalModel(matrix_additive_monoid(p), sp1_monoid(p), exceptional_left_action,
                            exceptional_right_action, opt);
  }

  ////////////////////////////////////////////////////////////////////////
  // alpha: End(G_(1,0)^(p)) -> Mat4(F_p) x S_p^1
  ////////////////////////////////////////////////////////////////////////

  // Normalized parts are taken relative to exact powers of y = a1 a2^-1
  // (not to the zero-commutator representatives), so that composites of
  // normalized parts stay normalized.
  inline std::pair<FpMat4, Sp1Element> alpha(JkGroup const& g, Endo const& e) {
    auto const& prm = g.params();
    if (!(prm.lambda1 == 1 && prm.lambda2 == 0)) {
      throw std::invalid_argument("alpha is defined for lambda = (1,0)");
    }
    int const p         = g.p();
    auto const [n, c]   = normalize(g, e);
    if (n == identity_endo(g)) {
      return {c.mat, Sp1Element::adjoined_identity(p)};
    }
    Element const y = g.multiply(g.generator(0), g.inverse(g.generator(1)));
    FpVec4        x(p);
    FpMat4        m(p);
    for (std::size_t j = 0; j < 4; ++j) {
      auto const v = g.generator_part(e.image(j));
      if (mod_p(v[0] + v[1], p) != 0 || v[2] != 0 || v[3] != 0) {
        throw std::domain_error("endomorphism is neither in the identity class nor maps into <a1 a2^-1>Z");
      }
      x.set(j, v[0]);
      Element const exact = g.power(y, static_cast<std::uint64_t>(v[0]));
      m.set_column(j, g.central_part(g.multiply(g.inverse(exact), e.image(j))));
    }
    return {m, Sp1Element::vector(x)};
  }

  inline Endo alpha_inverse(JkGroup const& g, std::pair<FpMat4, Sp1Element> const& t) {
    if (t.second.is_identity()) {
      return star(g, CentralHom(t.first));
    }
    Element const y = g.multiply(g.generator(0), g.inverse(g.generator(1)));
    GenImages     im;
    for (std::size_t j = 0; j < 4; ++j) {
      im[j] = g.power(y, static_cast<std::uint64_t>(t.second.vec()[j]));
    }
    return sum(g, make_endo(g, im), CentralHom(t.first));
  }

  // End(G) -> Mat4(F_p) x {0,1} for the end-commutative groups.
  inline std::pair<FpMat4, int> commutative_coordinates(JkGroup const& g, Endo const& e) {
    auto const [n, c] = normalize(g, e);
    if (n == identity_endo(g)) {
      return {c.mat, 1};
    }
    if (!is_central_valued(n)) {
      throw std::domain_error("endomorphism is neither an automorphism nor central-valued");
    }
    return {c.mat, 0};
  }

  struct IsomorphismCheck {
    std::uint64_t              exhaustive_pairs = 0;
    std::uint64_t              sampled_pairs    = 0;
    std::uint64_t              failures         = 0;
    std::uint64_t              bijection_checks = 0;
    std::uint64_t              bijection_failures = 0;
    bool                       identity_ok      = false;
    std::optional<std::string> counterexample;

    bool ok() const noexcept { return failures == 0 && bijection_failures == 0 && identity_ok; }
  };

  namespace detail {
    // For every endomorphism list entry: normalized rep plus zero or one
    // elementary central shift.
    inline std::vector<Endo> shifted_representatives(JkGroup const& g, std::vector<Endo> const& normalized) {
      std::vector<Endo> out;
      auto const        shifts = elementary_central_homs(g.p());
      for (auto const& n : normalized) {
        out.push_back(n);
        for (auto const& f : shifts) {
          out.push_back(sum(g, n, f));
        }
      }
      return out;
    }

    template <typename Model, typename Coord>
    IsomorphismCheck check_isomorphism(JkGroup const& g, Model const& model, Coord&& coord,
                                       std::vector<Endo> const& normalized, bool exhaustive_shifts,
                                       std::uint64_t samples, std::uint64_t seed) {
      IsomorphismCheck r;
      r.identity_ok = coord(g, identity_endo(g)) == model.identity();
      auto test     = [&](Endo const& x, Endo const& y) -> bool {
        return coord(g, compose(g, x, y)) == model.product(coord(g, x), coord(g, y));
      };
      if (exhaustive_shifts) {
        auto const reps = shifted_representatives(g, normalized);
        for (auto const& x : reps) {
          for (auto const& y : reps) {
            ++r.exhaustive_pairs;
            if (!test(x, y)) {
              ++r.failures;
              if (!r.counterexample) {
                r.counterexample = to_string(x) + " o " + to_string(y);
              }
            }
          }
        }
      }
      std::mt19937_64 rng(seed);
      for (std::uint64_t s = 0; s < samples; ++s) {
        auto x = random_endo(g, normalized, rng);
        auto y = random_endo(g, normalized, rng);
        ++r.sampled_pairs;
        if (!test(x, y)) {
          ++r.failures;
          if (!r.counterexample) {
            r.counterexample = to_string(x) + " o " + to_string(y);
          }
        }
      }
      return r;
    }
  }  // namespace detail

  // alpha(x o y) = alpha(x) alpha(y) on shifted representatives (optional)
  // and on `samples` random pairs; alpha_inverse is a two-sided inverse on
  // the same material.
  inline IsomorphismCheck verify_alpha_isomorphism(int p, std::uint64_t samples, std::uint64_t seed,
                                                   bool exhaustive_shifts) {
    JkGroup const g(GroupParams(p, 1, 0));
    EnumerationOptions opt;
    opt.allow_p5 = true;
    auto const nm    = enumerate_normalized(g, opt).endos;
    AuditOptions ao;
    ao.samples       = 10'000;
    ao.seed          = seed;
    auto const model = build_exceptional_model(p, ao);
    auto r = detail::check_isomorphism(g, model, alpha, nm, exhaustive_shifts, samples, seed);

    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    auto            bij = [&](Endo const& e) {
      ++r.bijection_checks;
      if (alpha_inverse(g, alpha(g, e)) != e) {
        ++r.bijection_failures;
      }
    };
    for (auto const& e : detail::shifted_representatives(g, nm)) {
      bij(e);
    }
    for (std::uint64_t s = 0; s < std::min<std::uint64_t>(samples, 10'000); ++s) {
      auto t = model.sample(rng);
      ++r.bijection_checks;
      if (alpha(g, alpha_inverse(g, t)) != t) {
        ++r.bijection_failures;
      }
    }
    return r;
  }

  // End(G) = Mat4 x {0,1} via (mat(cent), is_automorphism).
  inline IsomorphismCheck verify_commutative_model(GroupParams const& prm, std::uint64_t samples,
                                                   std::uint64_t seed, bool exhaustive_shifts) {
    if (prm.is_exceptional()) {
      throw std::invalid_argument("commutative model applies to end-commutative parameters only");
    }
    JkGroup const g(prm);
    EnumerationOptions opt;
    opt.allow_p5 = true;
    auto const nm    = enumerate_normalized(g, opt).endos;
    AuditOptions ao;
    ao.samples       = 10'000;
    ao.seed          = seed;
    auto const model = build_commutative_model(prm.p, ao);
    auto r = detail::check_isomorphism(g, model, commutative_coordinates, nm, exhaustive_shifts, samples, seed);
    for (auto const& e : detail::shifted_representatives(g, nm)) {
      ++r.bijection_checks;
      auto const [m, b] = commutative_coordinates(g, e);
      Endo back = b == 1 ? star(g, CentralHom(m)) : as_endo(g, CentralHom(m));
      if (back != e) {
        ++r.bijection_failures;
      }
    }
    return r;
  }

  ////////////////////////////////////////////////////////////////////////
  // G_(1,1)^(2) through a section of the normalization classes
  ////////////////////////////////////////////////////////////////////////

  // M2 is a submonoid S of End(G) meeting every normalization class once
  // (taken from solve_full_section_system); it acts on Mat4(F_2) by
  // composition from both sides. e = s + F  |->  (F, s).
  struct SectionModel {
    JkGroup                       group;
    std::vector<Endo>             section;
    Tsdp<FpMat4, Endo>            model;
  };

  inline SectionModel build_section_model(AuditOptions const& opt = {}) {
    auto const sys = solve_full_section_system(opt.seed);
    if (!sys.consistent || !sys.witness_closed) {
      throw std::runtime_error("no submonoid meets every normalization class once");
    }
    JkGroup const g    = exceptional_group();
    auto const    reps = enumerate_normalized(g).endos;
    std::vector<Endo> sec;
    for (std::size_t i = 0; i < reps.size(); ++i) {
      sec.push_back(sum(g, reps[i], CentralHom(sys.witness[i])));
    }
    auto const one = std::find_if(sec.begin(), sec.end(), [&](Endo const& e) {
      return normalize(g, e).first == identity_endo(g);
    });
    FiniteMonoid<Endo> m2{"S", *one, [g](Endo const& a, Endo const& b) { return compose(g, a, b); },
                          sec.size(), sec, {}};
    m2.sample = [sec](std::mt19937_64& rng) {
      std::uniform_int_distribution<std::size_t> d(0, sec.size() - 1);
      return sec[d(rng)];
    };
    auto left = [g](Endo const& s, FpMat4 const& f) {
      return as_central_hom(g, compose(g, s, as_endo(g, CentralHom(f)))).mat;
    };
    auto right = [g](FpMat4 const& f, Endo const& s) {
      return as_central_hom(g, compose(g, as_endo(g, CentralHom(f)), s)).mat;
    };
    return SectionModel{g, sec, Tsdp<FpMat4, Endo>(matrix_additive_monoid(2), m2, left, right, opt)};
  }

  inline std::pair<FpMat4, Endo> section_coordinates(SectionModel const& sm, Endo const& e) {
    auto const& g    = sm.group;
    auto const  norm = normalize(g, e);
    for (auto const& s : sm.section) {
      auto const ns = normalize(g, s);
      if (ns.first == norm.first) {
        return {norm.second.mat - ns.second.mat, s};
      }
    }
    throw std::domain_error("endomorphism outside every normalization class");
  }

  // (F, s) |-> s + F is an isomorphism End(G) -> Mat4(F_2) x S.
  inline IsomorphismCheck verify_section_model(std::uint64_t samples, std::uint64_t seed) {
    AuditOptions ao;
    ao.samples          = 10'000;
    ao.seed             = seed;
    ao.exhaustive_limit = 100'000;
    auto const sm       = build_section_model(ao);
    auto const nm  = enumerate_normalized(sm.group).endos;
    auto       coord = [&](JkGroup const&, Endo const& e) { return section_coordinates(sm, e); };
    auto       r     = detail::check_isomorphism(sm.group, sm.model, coord, nm, true, samples, seed);
    for (auto const& e : detail::shifted_representatives(sm.group, nm)) {
      ++r.bijection_checks;
      auto const [f, s] = section_coordinates(sm, e);
      if (sum(sm.group, s, CentralHom(f)) != e) {
        ++r.bijection_failures;
      }
    }
    return r;
  }

}  // namespace endomon
