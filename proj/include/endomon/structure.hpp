// endomon - exact endomorphism monoids of small p-groups
//
// Structural consequences of end-commutativity on concrete instances:
// Omega_1 against the center, the Fitting-style split G = nil(e) per(e),
// and full invariance of endomorphism images.

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "census.hpp"
#include "endo.hpp"
#include "jk_group.hpp"
#include "parallel.hpp"

namespace endomon {

  struct Omega1Report {
    GroupParams            params;
    std::size_t            omega1_size = 0;
    bool                   is_subgroup = false;
    bool                   leq_center  = false;
    std::optional<Element> witness;   // non-central element of order p
  };

  inline Omega1Report omega1_report(GroupParams const& prm) {
    JkGroup const g(prm);
    auto const    om = g.omega1();
    Omega1Report  r;
    r.params      = prm;
    r.omega1_size = om.size();
    r.is_subgroup = g.is_subgroup(om);
    r.leq_center  = true;
    for (auto const& x : om.members) {
      if (!x.is_central()) {
        r.leq_center = false;
        r.witness    = x;
        break;
      }
    }
    return r;
  }

  inline bool omega1_leq_center(GroupParams const& prm) {
    return omega1_report(prm).leq_center;
  }

  namespace detail {
    // A set H containing 1 and closed under right multiplication by a
    // generating set of <H> is a subgroup; cost |H| * |gens|.
    inline bool closed_subset(JkGroup const& g, std::vector<char> const& in, std::vector<Element> const& members) {
      if (!in[g.index(g.identity())]) {
        return false;
      }
      std::vector<Element> gens;
      std::vector<char>    span(g.order(), 0);
      span[g.index(g.identity())] = 1;
      for (auto const& h : members) {
        if (!span[g.index(h)]) {
          gens.push_back(h);
          for (auto const& x : g.generate(gens).members) {
            span[g.index(x)] = 1;
          }
        }
      }
      for (auto const& h : members) {
        for (auto const& s : gens) {
          if (!in[g.index(g.multiply(h, s))]) {
            return false;
          }
        }
      }
      return true;
    }
  }  // namespace detail

  struct NilPerSplit {
    Endo                 endo;
    std::vector<Element> nil;
    std::vector<Element> per;
    bool nil_is_subgroup      = false;
    bool per_is_subgroup      = false;
    bool trivial_intersection = false;
    bool nil_normal           = false;
    bool product_is_group     = false;

    bool ok() const noexcept {
      return nil_is_subgroup && per_is_subgroup && trivial_intersection && nil_normal && product_is_group;
    }
  };

  // nil(e): eventually sent to 1; per(e): on a cycle of x -> e(x). Both read
  // off the functional graph of e on all |G| elements.
  inline NilPerSplit nil_per_split(JkGroup const& g, Endo const& e) {
    std::uint32_t const        n = g.order();
    Evaluator const            ev(g, e);
    std::vector<std::uint32_t> next(n);
    for (std::uint32_t x = 0; x < n; ++x) {
      next[x] = g.index(ev(g.element_at(x)));
    }
    std::uint32_t const one = g.index(g.identity());

    // nil: backwards reachability from the fixed point 1
    std::vector<std::vector<std::uint32_t>> preimages(n);
    for (std::uint32_t x = 0; x < n; ++x) {
      preimages[next[x]].push_back(x);
    }
    std::vector<char>          in_nil(n, 0);
    std::vector<std::uint32_t> stack{one};
    in_nil[one] = 1;
    while (!stack.empty()) {
      auto y = stack.back();
      stack.pop_back();
      for (auto x : preimages[y]) {
        if (!in_nil[x]) {
          in_nil[x] = 1;
          stack.push_back(x);
        }
      }
    }

    // per: iterate the image until it stops shrinking; what remains is the
    // union of the cycles
    std::vector<char> in_per(n, 1);
    std::size_t       size = n;
    while (true) {
      std::vector<char> img(n, 0);
      for (std::uint32_t x = 0; x < n; ++x) {
        if (in_per[x]) {
          img[next[x]] = 1;
        }
      }
      std::size_t s = 0;
      for (auto c : img) {
        s += static_cast<std::size_t>(c);
      }
      in_per.swap(img);
      if (s == size) {
        break;
      }
      size = s;
    }

    NilPerSplit r;
    r.endo = e;
    for (std::uint32_t x = 0; x < n; ++x) {
      if (in_nil[x]) r.nil.push_back(g.element_at(x));
      if (in_per[x]) r.per.push_back(g.element_at(x));
    }
    r.nil_is_subgroup = detail::closed_subset(g, in_nil, r.nil);
    r.per_is_subgroup = detail::closed_subset(g, in_per, r.per);

    r.trivial_intersection = true;
    for (std::uint32_t x = 0; x < n; ++x) {
      if (in_nil[x] && in_per[x] && x != one) {
        r.trivial_intersection = false;
      }
    }
    // conjugation by the four generators suffices for a subgroup
    r.nil_normal = r.nil_is_subgroup;
    for (std::size_t i = 0; i < 4 && r.nil_normal; ++i) {
      Element const s     = g.generator(i);
      Element const s_inv = g.inverse(s);
      for (auto const& h : r.nil) {
        if (!in_nil[g.index(g.multiply(g.multiply(s_inv, h), s))]) {
          r.nil_normal = false;
          break;
        }
      }
    }
    if (static_cast<std::uint64_t>(r.nil.size()) * r.per.size() == n) {
      std::vector<char> hit(n, 0);
      std::size_t       covered = 0;
      for (auto const& a : r.nil) {
        for (auto const& b : r.per) {
          auto ix = g.index(g.multiply(a, b));
          if (!hit[ix]) {
            hit[ix] = 1;
            ++covered;
          }
        }
      }
      r.product_is_group = covered == n;
    }
    return r;
  }

  // Smallest n >= 1 with e^n = 0, if e is nilpotent.
  inline std::optional<std::uint64_t> nilpotency_index(JkGroup const& g, Endo const& e) {
    Endo          cur = e;
    Endo const    zero = zero_endo(g);
    for (std::uint64_t n = 1; n <= 16; ++n) {
      if (cur == zero) {
        return n;
      }
      cur = compose(g, cur, e);
    }
    return std::nullopt;
  }

  struct NilPerSurvey {
    GroupParams   params;
    std::uint64_t samples  = 0;
    std::uint64_t failures = 0;
    std::uint64_t automorphisms = 0;   // per = G
    std::uint64_t nilpotent     = 0;   // nil = G
    std::optional<std::string> counterexample;

    bool ok() const noexcept { return failures == 0; }
  };

  inline NilPerSurvey survey_nil_per(GroupParams const& prm, std::uint64_t samples, std::uint64_t seed,
                                     unsigned threads = 1) {
    JkGroup const      g(prm);
    EnumerationOptions opt;
    opt.allow_p5 = true;
    opt.threads  = threads;
    auto const nm = enumerate_normalized(g, opt).endos;

    std::vector<Endo> endos;
    std::mt19937_64   rng(seed);
    for (std::uint64_t s = 0; s < samples; ++s) {
      endos.push_back(random_endo(g, nm, rng));
    }
    std::vector<NilPerSplit> splits(endos.size());
    parallel_for_chunks(endos.size(), threads, [&](std::size_t i) { splits[i] = nil_per_split(g, endos[i]); });

    NilPerSurvey r;
    r.params  = prm;
    r.samples = samples;
    for (auto const& s : splits) {
      if (!s.ok()) {
        ++r.failures;
        if (!r.counterexample) {
          r.counterexample = to_string(s.endo);
        }
      }
      r.automorphisms += s.per.size() == g.order() ? 1 : 0;
      r.nilpotent += s.nil.size() == g.order() ? 1 : 0;
    }
    return r;
  }

  struct InvarianceResult {
    bool                       invariant = false;
    std::uint64_t              tested    = 0;
    bool                       exhaustive = false;
    std::optional<std::string> witness;   // a psi moving im(e)
  };

  // psi(im e) <= im e for every tested psi. At p = 2 every endomorphism is
  // tested. Otherwise the class representatives, elementary central maps
  // and elementary star maps; this is a partial check when im(e) does not
  // contain the center.
  inline InvarianceResult image_fully_invariant(JkGroup const& g, Endo const& e) {
    std::vector<char> in_im(g.order(), 0);
    for (auto const& x : g.generate({e.images().begin(), e.images().end()}).members) {
      in_im[g.index(x)] = 1;
    }
    EnumerationOptions opt;
    opt.allow_p5  = true;
    auto const nm = enumerate_normalized(g, opt).endos;

    InvarianceResult r;
    r.invariant = true;
    auto test   = [&](Endo const& psi) {
      ++r.tested;
      auto const c = compose(g, psi, e);
      for (auto const& y : c.images()) {
        if (!in_im[g.index(y)]) {
          r.invariant = false;
          if (!r.witness) {
            r.witness = to_string(psi);
          }
          return;
        }
      }
    };
    if (g.p() == 2) {
      r.exhaustive = true;
      for (auto const& n : nm) {
        for (std::uint64_t x = 0; x < class_size(2); ++x) {
          test(sum(g, n, CentralHom(FpMat4::from_index(x, 2))));
          if (!r.invariant) {
            return r;
          }
        }
      }
      return r;
    }
    for (auto const& n : nm) {
      test(n);
    }
    for (auto const& f : elementary_central_homs(g.p())) {
      test(as_endo(g, f));
      test(star(g, f));
    }
    return r;
  }

}  // namespace endomon
