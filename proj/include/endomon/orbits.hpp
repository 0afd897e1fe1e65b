// endomon - exact endomorphism monoids of small p-groups
//
// Conjugation action of Aut(G) on End(G). Aut(G) = {star(f)} is abelian
// of order p^16, generated by the 16 elementary star maps, and
// star(f)^-1 = star(-f).

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "census.hpp"
#include "endo.hpp"
#include "fp.hpp"
#include "jk_group.hpp"
#include "parallel.hpp"

namespace endomon {

  inline Endo conjugate(JkGroup const& g, CentralHom const& f, Endo const& e) {
    return compose(g, compose(g, star(g, f), e), star(g, -f));
  }

  // Breadth-first closure under the elementary conjugations; sorted.
  inline std::vector<Endo> orbit_of(JkGroup const& g, Endo const& e) {
    std::vector<std::pair<Endo, Endo>> gens;
    for (auto const& f : elementary_central_homs(g.p())) {
      gens.emplace_back(star(g, f), star(g, -f));
    }
    std::set<Endo>   seen{e};
    std::deque<Endo> queue{e};
    while (!queue.empty()) {
      Endo const x = queue.front();
      queue.pop_front();
      for (auto const& [s, s_inv] : gens) {
        Endo y = compose(g, compose(g, s, x), s_inv);
        if (seen.insert(y).second) {
          queue.push_back(std::move(y));
        }
      }
    }
    return {seen.begin(), seen.end()};
  }

  inline std::uint64_t ipow(std::uint64_t b, unsigned e) {
    std::uint64_t r = 1;
    while (e-- > 0) {
      r *= b;
    }
    return r;
  }

  // 1 for automorphisms and central-valued maps, else p^(4 r) with r the
  // rank of the induced matrix on G / center. This assumes the normalized
  // part kills the center.
  inline std::uint64_t orbit_size_by_rank(JkGroup const& g, Endo const& e) {
    if (is_automorphism(g, e)) {
      return 1;
    }
    auto const r = rank(abelianization_matrix(g, e));
    return ipow(static_cast<std::uint64_t>(g.p()), 4u * static_cast<unsigned>(r));
  }

  // Matrix of e restricted to the center, in the commutator basis.
  inline FpMat4 center_action(JkGroup const& g, Endo const& e) {
    FpMat4 c(g.p());
    for (std::size_t k = 0; k < 4; ++k) {
      c.set_column(k, g.central_part(apply(g, e, g.basis_commutator(k))));
    }
    return c;
  }

  // Conjugating e by star(f) adds the central hom F A - C F (A on G/center,
  // C on the center), so the orbit size is p^(rank of F -> F A - C F).
  inline std::uint64_t orbit_size_linear(JkGroup const& g, Endo const& e) {
    int const    p = g.p();
    FpMat4 const a = abelianization_matrix(g, e);
    FpMat4 const c = center_action(g, e);
    // 16 x 16 matrix over F_p, one column per elementary F
    std::vector<std::array<int, 16>> cols;
    for (auto const& f : elementary_central_homs(p)) {
      FpMat4 const   img = f.mat * a - c * f.mat;
      std::array<int, 16> col{};
      for (std::size_t k = 0; k < 16; ++k) {
        col[k] = img(k / 4, k % 4);
      }
      cols.push_back(col);
    }
    unsigned rk = 0;
    for (std::size_t row = 0; row < 16 && rk < cols.size(); ++row) {
      auto pivot = std::find_if(cols.begin() + rk, cols.end(), [&](auto const& v) { return v[row] != 0; });
      if (pivot == cols.end()) {
        continue;
      }
      std::swap(*pivot, cols[rk]);
      int const inv = FpScalar(cols[rk][row], p).inverse().value();
      for (std::size_t q = 0; q < cols.size(); ++q) {
        if (q != rk && cols[q][row] != 0) {
          int const factor = mod_p(cols[q][row] * inv, p);
          for (std::size_t k = 0; k < 16; ++k) {
            cols[q][k] = mod_p(cols[q][k] - factor * cols[rk][k], p);
          }
        }
      }
      ++rk;
    }
    return ipow(static_cast<std::uint64_t>(p), rk);
  }

  enum class OrbitMethod { rank_formula, explicit_closure };

  inline char const* to_string(OrbitMethod m) {
    return m == OrbitMethod::rank_formula ? "rank-formula" : "explicit-closure";
  }

  struct OrbitCensus {
    GroupParams                             params;
    OrbitMethod                             method = OrbitMethod::rank_formula;
    std::map<std::uint64_t, std::uint64_t>  histogram;   // length -> count
    std::uint64_t                           total_orbits = 0;
    std::uint64_t                           mass = 0;    // sum of length * count
    std::uint64_t                           endomorphism_count = 0;

    bool mass_ok() const noexcept { return mass == endomorphism_count; }
  };

  // Conjugation commutes with adding a central hom (both sides of star(f)
  // fix central-valued maps), so orbit size is constant on a normalization
  // class and one representative per class suffices.
  inline OrbitCensus orbit_census(GroupParams const& prm, OrbitMethod method = OrbitMethod::rank_formula,
                                  unsigned threads = 1) {
    JkGroup const      g(prm);
    EnumerationOptions opt;
    opt.allow_p5      = true;
    opt.threads       = threads;
    auto const    nm  = enumerate_normalized(g, opt).endos;
    std::uint64_t const cls = class_size(prm.p);
    std::vector<std::uint64_t> sizes(nm.size(), 0);
    parallel_for_chunks(nm.size(), threads, [&](std::size_t i) {
      sizes[i] = method == OrbitMethod::rank_formula ? orbit_size_by_rank(g, nm[i]) : orbit_of(g, nm[i]).size();
    });
    OrbitCensus c;
    c.params             = prm;
    c.method             = method;
    c.endomorphism_count = cls * nm.size();
    for (auto s : sizes) {
      c.histogram[s] += cls / s;
    }
    for (auto const& [len, count] : c.histogram) {
      c.total_orbits += count;
      c.mass += len * count;
    }
    return c;
  }

  struct OrbitMismatch {
    std::string   endo;
    std::uint64_t by_rank   = 0;
    std::uint64_t explicit_ = 0;
  };

  struct OrbitSpotCheck {
    GroupParams                 params;
    std::uint64_t               samples = 0;
    std::uint64_t               agreements = 0;
    std::vector<OrbitMismatch>  mismatches;   // first few
    std::uint64_t               mismatch_count = 0;
    std::uint64_t               linear_disagreements = 0;   // closure vs orbit_size_linear

    bool ok() const noexcept { return mismatch_count == 0; }
  };

  // Random full endomorphisms (class + central shift): orbit closure
  // against the rank formula and against the linear count.
  inline OrbitSpotCheck spot_check_orbits(GroupParams const& prm, std::uint64_t samples, std::uint64_t seed) {
    JkGroup const      g(prm);
    EnumerationOptions opt;
    opt.allow_p5 = true;
    auto const nm = enumerate_normalized(g, opt).endos;
    OrbitSpotCheck r;
    r.params = prm;
    std::mt19937_64 rng(seed);
    for (std::uint64_t s = 0; s < samples; ++s) {
      Endo const    e        = random_endo(g, nm, rng);
      std::uint64_t closure  = orbit_of(g, e).size();
      std::uint64_t by_rank  = orbit_size_by_rank(g, e);
      ++r.samples;
      if (closure != orbit_size_linear(g, e)) {
        ++r.linear_disagreements;
      }
      if (closure == by_rank) {
        ++r.agreements;
      } else {
        ++r.mismatch_count;
        if (r.mismatches.size() < 8) {
          r.mismatches.push_back({to_string(e), by_rank, closure});
        }
      }
    }
    return r;
  }

}  // namespace endomon
