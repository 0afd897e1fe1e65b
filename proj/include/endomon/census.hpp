// endomon - exact endomorphism monoids of small p-groups
//
// Enumeration of normalized endomorphisms (generator images with zero
// commutator exponents) and the checks built on it: end-commutativity,
// non-commuting witnesses, the G_(1,0) classification and the
// exceptional table of G_(1,1)^(2).

#pragma once

#include <algorithm>
#include <array>
#include <bitset>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "endo.hpp"
#include "fp.hpp"
#include "jk_group.hpp"
#include "parallel.hpp"

namespace endomon {

  class BudgetExceeded : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  struct EnumerationOptions {
    bool          prune   = true;
    std::uint64_t budget  = 2'000'000'000;  // candidate states; 0 = unlimited
    unsigned      threads = 1;
    bool          allow_p5 = false;
  };

  struct EnumerationResult {
    std::vector<Endo> endos;             // lexicographic on image tuples
    std::uint64_t     candidates = 0;    // states examined
  };

  namespace detail {
    inline std::vector<FpVec4> all_vectors(int p) {
      std::vector<FpVec4> out;
      std::uint32_t const n = static_cast<std::uint32_t>(p * p * p * p);
      out.reserve(n);
      for (std::uint32_t x = 0; x < n; ++x) {
        out.push_back(FpVec4::from_index(x, p));
      }
      return out;
    }

    inline Endo endo_from_vectors(JkGroup const& g, std::array<FpVec4, 4> const& v) {
      return make_endo_unchecked(
          {g.from_vector(v[0]), g.from_vector(v[1]), g.from_vector(v[2]), g.from_vector(v[3])});
    }
  }  // namespace detail

  // All validated maps {a1,a2,b1,b2} -> {elements with zero commutator
  // exponents}. With pruning, images are chosen in the order g1, g3, g2,
  // g4 and each relation is tested as soon as its images are fixed:
  // g1^p = [g1,g3] after (g1,g3), [g1,g2] = 1 after g2, the rest after g4.
  inline EnumerationResult enumerate_normalized(JkGroup const& g, EnumerationOptions const& opt = {}) {
    int const p = g.p();
    if (p == 5 && !opt.allow_p5) {
      throw std::invalid_argument("p = 5 enumeration must be requested explicitly");
    }
    auto const               vecs = detail::all_vectors(p);
    std::size_t const        n    = vecs.size();
    auto const               l1   = g.params().lambda1;
    auto const               l2   = g.params().lambda2;
    std::atomic<std::uint64_t> visited{0};

    auto charge = [&](std::uint64_t k) {
      auto total = visited.fetch_add(k) + k;
      if (opt.budget != 0 && total > opt.budget) {
        throw BudgetExceeded("enumeration budget of " + std::to_string(opt.budget)
                             + " candidates exceeded for " + g.params().to_string());
      }
    };

    // Chunk by the image of a1.
    std::vector<std::vector<Endo>> found(n);
    std::vector<FpVec4>            pth;
    pth.reserve(n);
    for (auto const& v : vecs) {
      pth.push_back(g.pth_power(v));
    }

    parallel_for_chunks(n, opt.threads, [&](std::size_t i1) {
      auto const& v1 = vecs[i1];
      std::uint64_t local = 0;
      if (!opt.prune) {
        for (std::size_t i2 = 0; i2 < n; ++i2) {
          for (std::size_t i3 = 0; i3 < n; ++i3) {
            for (std::size_t i4 = 0; i4 < n; ++i4) {
              ++local;
              std::array<FpVec4, 4> v{v1, vecs[i2], vecs[i3], vecs[i4]};
              if (validate_vectors(g, v)) {
                found[i1].push_back(detail::endo_from_vectors(g, v));
              }
            }
          }
          charge(local);
          local = 0;
        }
        return;
      }
      for (std::size_t i3 = 0; i3 < n; ++i3) {
        auto const& v3 = vecs[i3];
        ++local;
        if (pth[i1] != g.commutator_vector(v1, v3)) {
          continue;
        }
        for (std::size_t i2 = 0; i2 < n; ++i2) {
          auto const& v2 = vecs[i2];
          ++local;
          if (!g.commute_criterion(v1, v2)) {
            continue;
          }
          for (std::size_t i4 = 0; i4 < n; ++i4) {
            auto const& v4 = vecs[i4];
            ++local;
            if (g.commute_criterion(v3, v4)
                && pth[i2] == g.commutator_vector(v1, v3.scaled(l1) + v4.scaled(l2))
                && pth[i3] == g.commutator_vector(v2, v3 + v4)
                && pth[i4] == g.commutator_vector(v2, v4)) {
              found[i1].push_back(detail::endo_from_vectors(g, {v1, v2, v3, v4}));
            }
          }
        }
      }
      charge(local);
    });

    EnumerationResult out;
    out.candidates = visited.load();
    for (auto& part : found) {
      out.endos.insert(out.endos.end(), part.begin(), part.end());
    }
    std::sort(out.endos.begin(), out.endos.end());
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Classification of normalization classes
  ////////////////////////////////////////////////////////////////////////

  enum class ClassKind { identity, central, abelian_image, exceptional };

  inline char const* to_string(ClassKind k) {
    switch (k) {
      case ClassKind::identity:
        return "identity";
      case ClassKind::central:
        return "central";
      case ClassKind::abelian_image:
        return "abelian_image";
      case ClassKind::exceptional:
        return "exceptional";
    }
    return "?";
  }

  // identity: the automorphism class. central: maps into the center.
  // abelian_image: non-central with abelian image. exceptional: the rest.
  inline ClassKind classify(JkGroup const& g, Endo const& normalized) {
    auto [norm, cent] = normalize(g, normalized);
    if (norm == identity_endo(g)) {
      return ClassKind::identity;
    }
    if (is_central_valued(norm)) {
      return ClassKind::central;
    }
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = i + 1; j < 4; ++j) {
        if (!g.commute_criterion(g.generator_part(norm.image(i)), g.generator_part(norm.image(j)))) {
          return ClassKind::exceptional;
        }
      }
    }
    return ClassKind::abelian_image;
  }

  struct ClassKindCounts {
    std::uint64_t identity      = 0;
    std::uint64_t central       = 0;
    std::uint64_t abelian_image = 0;
    std::uint64_t exceptional   = 0;

    std::uint64_t total() const noexcept { return identity + central + abelian_image + exceptional; }
  };

  inline ClassKindCounts count_kinds(JkGroup const& g, std::vector<Endo> const& normalized) {
    ClassKindCounts c;
    for (auto const& e : normalized) {
      switch (classify(g, e)) {
        case ClassKind::identity:
          ++c.identity;
          break;
        case ClassKind::central:
          ++c.central;
          break;
        case ClassKind::abelian_image:
          ++c.abelian_image;
          break;
        case ClassKind::exceptional:
          ++c.exceptional;
          break;
      }
    }
    return c;
  }

  // p^16, the size of every normalization class.
  inline std::uint64_t class_size(int p) {
    std::uint64_t n = 1;
    for (int i = 0; i < 16; ++i) {
      n *= static_cast<std::uint64_t>(p);
    }
    return n;
  }

  // Whether every normalized endomorphism that sends some generator into
  // the center sends all four there.
  inline bool central_generator_shortcut_holds(JkGroup const& g, std::vector<Endo> const& normalized) {
    for (auto const& e : normalized) {
      bool any = false;
      bool all = true;
      for (auto const& x : e.images()) {
        any = any || x.is_central();
        all = all && x.is_central();
      }
      if (any && !all) {
        return false;
      }
    }
    (void) g;
    return true;
  }

  struct CensusReport {
    GroupParams                          params;
    std::uint64_t                        normalized_count = 0;
    std::uint64_t                        endomorphism_count = 0;   // normalized_count * p^16
    ClassKindCounts                      kinds;
    std::uint64_t                        candidates = 0;
    bool                                 central_shortcut = false;
    std::optional<std::pair<Endo, Endo>> witnesses;
    double                               elapsed_seconds = 0;
  };

  inline std::optional<std::pair<Endo, Endo>> find_noncommuting_pair(JkGroup const& g,
                                                                     std::vector<Endo> const& normalized);

  inline CensusReport census(JkGroup const& g, EnumerationOptions const& opt = {}) {
    auto const   start = std::chrono::steady_clock::now();
    auto         res   = enumerate_normalized(g, opt);
    CensusReport r;
    r.params             = g.params();
    r.normalized_count   = res.endos.size();
    r.endomorphism_count = r.normalized_count * class_size(g.p());
    r.kinds              = count_kinds(g, res.endos);
    r.candidates         = res.candidates;
    r.central_shortcut   = central_generator_shortcut_holds(g, res.endos);
    r.witnesses          = find_noncommuting_pair(g, res.endos);
    r.elapsed_seconds
        = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
  }

  ////////////////////////////////////////////////////////////////////////
  // End-commutativity
  ////////////////////////////////////////////////////////////////////////

  template <typename Rng>
  Endo random_endo(JkGroup const& g, std::vector<Endo> const& normalized, Rng& rng) {
    std::uniform_int_distribution<std::size_t> pick(0, normalized.size() - 1);
    return sum(g, normalized[pick(rng)], random_central_hom(g.p(), rng));
  }

  inline bool commute(JkGroup const& g, Endo const& x, Endo const& y) {
    return compose(g, x, y) == compose(g, y, x);
  }

  // Searches normalized endomorphisms against star(f) for the 16
  // elementary f; the first pair found in that order is returned.
  inline std::optional<std::pair<Endo, Endo>> find_noncommuting_pair(JkGroup const& g,
                                                                     std::vector<Endo> const& normalized) {
    auto const stars = [&] {
      std::vector<Endo> out;
      for (auto const& f : elementary_central_homs(g.p())) {
        out.push_back(star(g, f));
      }
      return out;
    }();
    for (auto const& x : normalized) {
      for (auto const& s : stars) {
        if (!commute(g, x, s)) {
          return std::make_pair(x, s);
        }
      }
    }
    return std::nullopt;
  }

  struct Theorem1Result {
    bool          holds                  = false;
    std::uint64_t normalized_count       = 0;
    bool          only_identity_and_zero = false;
    std::uint64_t representative_pairs   = 0;
    std::uint64_t representative_failures = 0;
    std::uint64_t sampled_pairs          = 0;
    std::uint64_t sampled_failures       = 0;
  };

  // Requires a non-exceptional (p, lambda).
  inline Theorem1Result verify_theorem1(JkGroup const& g, std::uint64_t samples, std::uint64_t seed,
                                        unsigned threads = 1) {
    if (g.params().is_exceptional()) {
      throw std::invalid_argument("end-commutativity is only claimed for non-exceptional parameters, got "
                                  + g.params().to_string());
    }
    EnumerationOptions opt;
    opt.threads   = threads;
    opt.allow_p5  = true;
    auto const nm = enumerate_normalized(g, opt).endos;

    Theorem1Result r;
    r.normalized_count       = nm.size();
    r.only_identity_and_zero = std::all_of(nm.begin(), nm.end(), [&](Endo const& e) {
      return e == identity_endo(g) || is_central_valued(e);
    });
    for (auto const& x : nm) {
      for (auto const& y : nm) {
        ++r.representative_pairs;
        if (!commute(g, x, y)) {
          ++r.representative_failures;
        }
      }
    }
    r.sampled_pairs    = samples;
    r.sampled_failures = sampled_count(samples, seed, threads, [&](std::mt19937_64& rng, std::uint64_t k) {
      std::uint64_t bad = 0;
      for (std::uint64_t t = 0; t < k; ++t) {
        auto x = random_endo(g, nm, rng);
        auto y = random_endo(g, nm, rng);
        if (!commute(g, x, y)) {
          ++bad;
        }
      }
      return bad;
    });
    r.holds = r.only_identity_and_zero && r.representative_failures == 0 && r.sampled_failures == 0;
    return r;
  }

  ////////////////////////////////////////////////////////////////////////
  // Non-commuting witnesses
  ////////////////////////////////////////////////////////////////////////

  struct WitnessCheck {
    Endo    phi;
    Endo    star_f;
    Element phi_after_star;   // (phi o f*)(a1)
    Element star_after_phi;   // (f* o phi)(a1)
    Element central_factor;   // (phi o f*)(a1)^-1 (f* o phi)(a1)
    bool    disagrees_centrally = false;
  };

  // phi sends every generator to a1 a2^-1 (lambda = (1,0)) or to a1 a2 b2
  // (p = 2, lambda = (1,1)); f sends a1 to [a1,b1] and the rest to 1.
  inline WitnessCheck paper_witness(JkGroup const& g) {
    auto const& prm = g.params();
    Element     target;
    if (prm.lambda1 == 1 && prm.lambda2 == 0) {
      target = g.multiply(g.generator(0), g.inverse(g.generator(1)));
    } else if (prm.p == 2 && prm.lambda1 == 1 && prm.lambda2 == 1) {
      target = g.multiply(g.multiply(g.generator(0), g.generator(1)), g.generator(3));
    } else {
      throw std::invalid_argument("no witness pair for end-commutative " + prm.to_string());
    }
    FpMat4 m(g.p());
    m.set(0, 0, 1);
    WitnessCheck w{make_endo(g, {target, target, target, target}), star(g, CentralHom(m)), {}, {}, {}, false};
    w.phi_after_star = apply(g, compose(g, w.phi, w.star_f), g.generator(0));
    w.star_after_phi = apply(g, compose(g, w.star_f, w.phi), g.generator(0));
    w.central_factor = g.multiply(g.inverse(w.phi_after_star), w.star_after_phi);
    w.disagrees_centrally = w.central_factor != g.identity() && w.central_factor.is_central();
    return w;
  }

  ////////////////////////////////////////////////////////////////////////
  // G_(1,0)^(p)
  ////////////////////////////////////////////////////////////////////////

  struct ExceptionalTheoremResult {
    bool          holds            = false;
    std::uint64_t normalized_count = 0;
    std::uint64_t expected_count   = 0;   // p^4 + 1
    bool          matches_set      = false;
    bool          cyclic_maps_validate = false;
  };

  // Normalized endomorphisms of G_(1,0)^(p) are exactly the identity and
  // the p^4 maps into the coset representatives of <a1 a2^-1>.
  inline ExceptionalTheoremResult verify_exceptional_theorem(JkGroup const& g) {
    auto const& prm = g.params();
    if (!(prm.lambda1 == 1 && prm.lambda2 == 0)) {
      throw std::invalid_argument("classification applies to lambda = (1,0) only");
    }
    int const p = g.p();
    EnumerationOptions opt;
    opt.allow_p5 = true;
    auto const nm = enumerate_normalized(g, opt).endos;

    ExceptionalTheoremResult r;
    r.normalized_count = nm.size();
    r.expected_count   = static_cast<std::uint64_t>(p * p * p * p) + 1;

    Element const     y = g.multiply(g.generator(0), g.inverse(g.generator(1)));
    std::vector<Endo> expected{identity_endo(g)};
    r.cyclic_maps_validate = true;
    for (std::uint32_t x = 0; x < static_cast<std::uint32_t>(p * p * p * p); ++x) {
      auto const exps = FpVec4::from_index(x, p);
      GenImages  exact;
      GenImages  reps;
      for (std::size_t j = 0; j < 4; ++j) {
        exact[j] = g.power(y, static_cast<std::uint64_t>(exps[j]));
        reps[j]  = g.from_vector(g.generator_part(exact[j]));
      }
      r.cyclic_maps_validate = r.cyclic_maps_validate && validate(g, exact);
      expected.push_back(make_endo_unchecked(reps));
    }
    std::sort(expected.begin(), expected.end());
    r.matches_set = expected == nm;
    r.holds = r.matches_set && r.cyclic_maps_validate && r.normalized_count == r.expected_count;
    return r;
  }

  ////////////////////////////////////////////////////////////////////////
  // G_(1,1)^(2): the six exceptional classes
  ////////////////////////////////////////////////////////////////////////

  struct TableCell {
    int index = 0;   // 1..6
    int shift = 0;   // 0 (none), 1..3 for M1..M3
    bool operator==(TableCell const&) const = default;
  };

  using CompositionTable = std::array<std::array<TableCell, 6>, 6>;

  struct ExceptionalTable {
    std::array<Endo, 6> phis;
    FpMat4              m1{2};
    FpMat4              m2{2};
    FpMat4              m3{2};
    CompositionTable    comp{};   // comp[i][j] describes phi_{i+1} o phi_{j+1}
  };

  class TableMismatch : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // The printed composition table; row i, column j is phi_i o phi_j.
  inline CompositionTable published_composition_table() {
    return {{{{{5, 1}, {6, 2}, {2, 3}, {1, 3}, {4, 2}, {3, 1}}},
             {{{3, 0}, {4, 3}, {1, 0}, {2, 3}, {6, 1}, {5, 1}}},
             {{{6, 0}, {5, 3}, {4, 0}, {3, 3}, {2, 1}, {1, 1}}},
             {{{1, 1}, {2, 2}, {3, 3}, {4, 3}, {5, 2}, {6, 1}}},
             {{{4, 1}, {3, 2}, {6, 3}, {5, 3}, {1, 2}, {2, 1}}},
             {{{2, 0}, {1, 3}, {5, 0}, {6, 3}, {3, 1}, {4, 1}}}}};
  }

  inline JkGroup exceptional_group() {
    return JkGroup(GroupParams(2, 1, 1));
  }

  // The six extra normalized endomorphisms of G_(1,1)^(2); a1 and a2 share
  // an image, b2 goes to 1.
  inline std::array<Endo, 6> exceptional_phis(JkGroup const& g) {
    auto const x = g.from_vector(FpVec4({0, 1, 1, 1}, 2));   // a2 b1 b2
    auto const y = g.from_vector(FpVec4({1, 0, 0, 1}, 2));   // a1 b2
    auto const z = g.from_vector(FpVec4({1, 1, 1, 0}, 2));   // a1 a2 b1
    auto const one = g.identity();
    return {make_endo(g, {x, x, y, one}), make_endo(g, {x, x, z, one}),
            make_endo(g, {y, y, x, one}), make_endo(g, {y, y, z, one}),
            make_endo(g, {z, z, x, one}), make_endo(g, {z, z, y, one})};
  }

  // Columns in {0, (1,1,0,1)^t}: M1 has the last two columns zero, M2 only
  // the last, M3 = M1 + M2.
  inline std::array<FpMat4, 3> exceptional_shifts() {
    FpVec4 const v({1, 1, 0, 1}, 2);
    FpMat4       m1(2);
    FpMat4       m2(2);
    m1.set_column(0, v);
    m1.set_column(1, v);
    m2.set_column(0, v);
    m2.set_column(1, v);
    m2.set_column(2, v);
    return {m1, m2, m1 + m2};
  }

  // Computes every composite, locates it in the table and compares with
  // the printed cell. Throws TableMismatch naming the first bad cell.
  inline ExceptionalTable build_exceptional_table() {
    JkGroup const    g = exceptional_group();
    ExceptionalTable t;
    t.phis              = exceptional_phis(g);
    auto const shifts   = exceptional_shifts();
    t.m1                = shifts[0];
    t.m2                = shifts[1];
    t.m3                = shifts[2];
    auto const expected = published_composition_table();

    for (std::size_t i = 0; i < 6; ++i) {
      for (std::size_t j = 0; j < 6; ++j) {
        auto const [norm, cent] = normalize(g, compose(g, t.phis[i], t.phis[j]));
        auto const where        = std::find(t.phis.begin(), t.phis.end(), norm);
        std::string const cell  = "phi" + std::to_string(i + 1) + " o phi" + std::to_string(j + 1);
        if (where == t.phis.end()) {
          throw TableMismatch(cell + " is not a shift of any phi_k");
        }
        TableCell c{static_cast<int>(where - t.phis.begin()) + 1, -1};
        if (cent.mat.is_zero()) {
          c.shift = 0;
        } else {
          for (std::size_t s = 0; s < 3; ++s) {
            if (cent.mat == shifts[s]) {
              c.shift = static_cast<int>(s) + 1;
            }
          }
        }
        if (c.shift < 0) {
          throw TableMismatch(cell + " is shifted by " + cent.mat.to_string()
                              + ", which is none of 0, M1, M2, M3");
        }
        if (!(c == expected[i][j])) {
          throw TableMismatch(cell + ": computed phi" + std::to_string(c.index) + "+M"
                              + std::to_string(c.shift) + ", printed phi"
                              + std::to_string(expected[i][j].index) + "+M"
                              + std::to_string(expected[i][j].shift));
        }
        t.comp[i][j] = c;
      }
    }
    return t;
  }

  struct QuotientCheck {
    bool closed        = false;
    bool associative   = false;
    int  neutral       = 0;     // 1..6, 0 if none
    bool has_inverses  = false;
    bool nonabelian    = false;
    bool permutation_model = false;   // faithful action on three classes

    bool is_s3() const noexcept {
      return closed && associative && neutral != 0 && has_inverses && nonabelian;
    }
  };

  // The class-level table is a group of order 6; a nonabelian one is S3.
  // Additionally checks that each phi_i permutes the classes mod the
  // center of a1 b2, a1 a2 b1 and a2 b1 b2, faithfully and compatibly with
  // composition.
  inline QuotientCheck check_quotient(ExceptionalTable const& t) {
    QuotientCheck q;
    auto          op = [&](int a, int b) { return t.comp[a - 1][b - 1].index; };
    q.closed         = true;
    q.associative    = true;
    q.nonabelian     = false;
    for (int a = 1; a <= 6; ++a) {
      for (int b = 1; b <= 6; ++b) {
        q.closed     = q.closed && op(a, b) >= 1 && op(a, b) <= 6;
        q.nonabelian = q.nonabelian || op(a, b) != op(b, a);
        for (int c = 1; c <= 6; ++c) {
          q.associative = q.associative && op(op(a, b), c) == op(a, op(b, c));
        }
      }
    }
    for (int e = 1; e <= 6 && q.neutral == 0; ++e) {
      bool ok = true;
      for (int a = 1; a <= 6; ++a) {
        ok = ok && op(e, a) == a && op(a, e) == a;
      }
      if (ok) {
        q.neutral = e;
      }
    }
    q.has_inverses = q.neutral != 0;
    for (int a = 1; a <= 6 && q.has_inverses; ++a) {
      bool found = false;
      for (int b = 1; b <= 6; ++b) {
        found = found || (op(a, b) == q.neutral && op(b, a) == q.neutral);
      }
      q.has_inverses = found;
    }

    JkGroup const               g = exceptional_group();
    std::array<FpVec4, 3> const pts{FpVec4({1, 0, 0, 1}, 2), FpVec4({1, 1, 1, 0}, 2),
                                    FpVec4({0, 1, 1, 1}, 2)};
    std::array<std::array<int, 3>, 6> perm{};
    bool                              ok = true;
    for (std::size_t i = 0; i < 6; ++i) {
      for (std::size_t k = 0; k < 3; ++k) {
        auto image = g.generator_part(apply(g, t.phis[i], g.from_vector(pts[k])));
        auto where = std::find(pts.begin(), pts.end(), image);
        ok         = ok && where != pts.end();
        perm[i][k] = where == pts.end() ? -1 : static_cast<int>(where - pts.begin());
      }
      auto sorted = perm[i];
      std::sort(sorted.begin(), sorted.end());
      ok = ok && sorted == std::array<int, 3>{0, 1, 2};
    }
    for (std::size_t i = 0; ok && i < 6; ++i) {
      for (std::size_t j = i + 1; j < 6; ++j) {
        ok = ok && perm[i] != perm[j];
      }
    }
    for (std::size_t i = 0; ok && i < 6; ++i) {
      for (std::size_t j = 0; j < 6; ++j) {
        auto const& pc = perm[static_cast<std::size_t>(t.comp[i][j].index - 1)];
        for (std::size_t k = 0; k < 3; ++k) {
          ok = ok && pc[k] == perm[i][static_cast<std::size_t>(perm[j][k])];
        }
      }
    }
    q.permutation_model = ok;
    return q;
  }

  struct NoSectionResult {
    bool                         holds = false;
    std::array<std::uint64_t, 6> solutions{};          // per i, must be 0
    std::uint64_t                candidates_per_i = 0;  // 2^16
    std::uint64_t                control_solutions = 0; // with M3 replaced by 0
    bool                         column_contradiction = false;
    std::uint64_t                idempotent_lifts = 0; // f with (phi4+f)^2 = phi4+f
  };

  // For each i, no central hom f satisfies f = M3 + f o phi4, the
  // neutrality equation a closed set {phi_i + f_i} would impose.
  inline NoSectionResult verify_no_tsdp_section() {
    JkGroup const    g    = exceptional_group();
    auto const       phis = exceptional_phis(g);
    auto const       m3   = exceptional_shifts()[2];
    Endo const&      phi4 = phis[3];
    NoSectionResult  r;
    r.candidates_per_i = 1u << 16;

    // f o phi4 does not depend on i; tabulate it once per f.
    std::vector<FpMat4> f_after_phi4;
    f_after_phi4.reserve(r.candidates_per_i);
    for (std::uint64_t x = 0; x < r.candidates_per_i; ++x) {
      CentralHom f(FpMat4::from_index(x, 2));
      f_after_phi4.push_back(as_central_hom(g, compose(g, as_endo(g, f), phi4)).mat);
    }
    for (std::size_t i = 0; i < 6; ++i) {
      for (std::uint64_t x = 0; x < r.candidates_per_i; ++x) {
        if (FpMat4::from_index(x, 2) == m3 + f_after_phi4[x]) {
          ++r.solutions[i];
        }
      }
    }
    for (std::uint64_t x = 0; x < r.candidates_per_i; ++x) {
      if (FpMat4::from_index(x, 2) == f_after_phi4[x]) {
        ++r.control_solutions;
      }
      Endo lift = sum(g, phi4, CentralHom(FpMat4::from_index(x, 2)));
      if (compose(g, lift, lift) == lift) {
        ++r.idempotent_lifts;
      }
    }
    // Column equations c1 + c4 = c1, c1 + c4 = c2, c1 + c2 + c3 + v = c3
    // force c4 = 0, c1 = c2 and then v = 0.
    FpVec4 const v({1, 1, 0, 1}, 2);
    r.column_contradiction = !v.is_zero();

    r.holds = r.control_solutions > 0 && r.column_contradiction;
    for (auto s : r.solutions) {
      r.holds = r.holds && s == 0;
    }
    return r;
  }

  // Closure of a family of lifts {rep_i + F_i}, one per normalization class,
  // solved exactly over F_2. The cent part of (rep_i + F_i) o (rep_j + F_j)
  // is affine in (F_i, F_j); its coefficients are read off from
  // compositions at basis points and the affine model is rechecked on
  // random points. The equations F_k = cent(...), k the class of the
  // composite, form one linear system in 16 n unknowns.
  struct SectionSystemResult {
    std::size_t   classes   = 0;
    std::size_t   equations = 0;
    std::size_t   unknowns  = 0;
    std::size_t   rank      = 0;
    bool          consistent = false;
    bool          affine_ok  = false;   // the model matched direct composition
    std::uint64_t affine_checks = 0;
    std::vector<FpMat4> witness;        // one solution (free unknowns 0), if consistent
    bool          witness_closed = false;   // rechecked by composing
  };

  inline constexpr std::size_t max_section_classes = 31;

  // reps must be normalized and closed under composition up to normalization.
  inline SectionSystemResult solve_section_system(JkGroup const& g, std::vector<Endo> const& reps,
                                                  std::uint64_t seed = 1) {
    if (g.p() != 2 || reps.empty() || reps.size() > max_section_classes) {
      throw std::invalid_argument("section system needs p = 2 and 1..31 classes");
    }
    std::size_t const   n = reps.size();
    SectionSystemResult r;
    r.classes  = n;
    r.unknowns = 16 * n;

    auto cent_of = [&](std::size_t i, FpMat4 const& fi, std::size_t j, FpMat4 const& fj) {
      return normalize(g, compose(g, sum(g, reps[i], CentralHom(fi)), sum(g, reps[j], CentralHom(fj))));
    };
    FpMat4 const zero(2);

    using Row = std::bitset<16 * max_section_classes + 1>;
    std::size_t const rhs = r.unknowns;
    std::vector<Row>  rows;
    std::mt19937_64   rng(seed);
    r.affine_ok = true;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        auto const [norm, base] = cent_of(i, zero, j, zero);
        auto const where        = std::find(reps.begin(), reps.end(), norm);
        if (where == reps.end()) {
          throw std::invalid_argument("class representatives are not closed under composition");
        }
        auto const          k = static_cast<std::size_t>(where - reps.begin());
        std::vector<FpMat4> lcoef, rcoef;
        for (std::size_t b = 0; b < 16; ++b) {
          FpMat4 const e = FpMat4::elementary(b / 4, b % 4, 2);
          lcoef.push_back(cent_of(i, e, j, zero).second.mat - base.mat);
          rcoef.push_back(cent_of(i, zero, j, e).second.mat - base.mat);
        }
        for (int s = 0; s < 4; ++s) {
          FpMat4 const x    = random_central_hom(2, rng).mat;
          FpMat4 const y    = i == j ? x : random_central_hom(2, rng).mat;
          FpMat4       pred = base.mat;
          for (std::size_t b = 0; b < 16; ++b) {
            pred = pred + lcoef[b].scaled(x(b / 4, b % 4)) + rcoef[b].scaled(y(b / 4, b % 4));
          }
          ++r.affine_checks;
          r.affine_ok = r.affine_ok && pred == cent_of(i, x, j, y).second.mat;
        }
        for (std::size_t e = 0; e < 16; ++e) {
          Row row;
          for (std::size_t b = 0; b < 16; ++b) {
            if (lcoef[b](e / 4, e % 4)) row.flip(16 * i + b);
            if (rcoef[b](e / 4, e % 4)) row.flip(16 * j + b);
          }
          row.flip(16 * k + e);
          if (base.mat(e / 4, e % 4)) row.flip(rhs);
          rows.push_back(row);
        }
      }
    }
    r.equations = rows.size();

    std::size_t rank = 0;
    for (std::size_t col = 0; col < r.unknowns && rank < rows.size(); ++col) {
      auto pivot = std::find_if(rows.begin() + static_cast<std::ptrdiff_t>(rank), rows.end(),
                                [&](Row const& x) { return x.test(col); });
      if (pivot == rows.end()) {
        continue;
      }
      std::swap(*pivot, rows[rank]);
      for (std::size_t q = 0; q < rows.size(); ++q) {
        if (q != rank && rows[q].test(col)) {
          rows[q] ^= rows[rank];
        }
      }
      ++rank;
    }
    r.rank       = rank;
    r.consistent = std::none_of(rows.begin() + static_cast<std::ptrdiff_t>(rank), rows.end(),
                                [&](Row const& x) { return x.test(rhs); });
    if (!r.consistent) {
      return r;
    }
    r.witness.assign(n, FpMat4(2));
    for (std::size_t q = 0; q < rank; ++q) {
      std::size_t col = 0;
      while (!rows[q].test(col)) {
        ++col;
      }
      if (rows[q].test(rhs)) {
        r.witness[col / 16].set((col % 16) / 4, col % 4, 1);
      }
    }
    std::vector<Endo> lifts;
    for (std::size_t i = 0; i < n; ++i) {
      lifts.push_back(sum(g, reps[i], CentralHom(r.witness[i])));
    }
    r.witness_closed = true;
    for (auto const& x : lifts) {
      for (auto const& y : lifts) {
        r.witness_closed = r.witness_closed && std::find(lifts.begin(), lifts.end(), compose(g, x, y)) != lifts.end();
      }
    }
    return r;
  }

  // The six phi_i alone.
  inline SectionSystemResult solve_phi_section_system(std::uint64_t seed = 1) {
    JkGroup const g    = exceptional_group();
    auto const    phis = exceptional_phis(g);
    return solve_section_system(g, std::vector<Endo>(phis.begin(), phis.end()), seed);
  }

  // All 23 normalization classes: a submonoid meeting every class once.
  inline SectionSystemResult solve_full_section_system(std::uint64_t seed = 1) {
    JkGroup const g = exceptional_group();
    return solve_section_system(g, enumerate_normalized(g).endos, seed);
  }

}  // namespace endomon
