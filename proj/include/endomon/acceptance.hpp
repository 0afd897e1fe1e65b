// endomon - exact endomorphism monoids of small p-groups
//
// The twelve acceptance checks, shared by the acceptance test binary and
// `endomon verify all`.

#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "census.hpp"
#include "orbits.hpp"
#include "parallel.hpp"
#include "report.hpp"
#include "structure.hpp"
#include "tsdp.hpp"

namespace endomon::acceptance {

  enum class Status { pass, fail, skipped };

  inline char const* to_string(Status s) {
    switch (s) {
      case Status::pass:
        return "PASS";
      case Status::fail:
        return "FAIL";
      case Status::skipped:
        return "SKIP";
    }
    return "?";
  }

  struct Options {
    bool          p2      = true;
    bool          p3      = true;
    std::uint64_t seed    = 20140101;
    unsigned      threads = 1;

    bool wants(int p) const noexcept { return (p == 2 && p2) || (p == 3 && p3); }
    std::vector<int> primes() const {
      std::vector<int> out;
      if (p2) out.push_back(2);
      if (p3) out.push_back(3);
      return out;
    }
  };

  struct Result {
    int         id = 0;
    std::string title;
    Status      status = Status::fail;
    std::string detail;
    double      seconds = 0;
    Json        data;
  };

  inline Json to_json(Result const& r) {
    return Json{{"id", r.id},
                {"title", r.title},
                {"status", to_string(r.status)},
                {"detail", r.detail},
                {"seconds", r.seconds},
                {"data", r.data}};
  }

  namespace detail {
    inline Status verdict(bool ok) { return ok ? Status::pass : Status::fail; }

    inline std::string label(GroupParams const& prm) {
      return "(" + std::to_string(prm.p) + ",(" + std::to_string(prm.lambda1) + ","
             + std::to_string(prm.lambda2) + "))";
    }
  }  // namespace detail

  // 1. |G| = p^8; associativity on all triples at p = 2, on 10^6 random
  // triples at p = 3.
  inline Result group_correctness(Options const& opt) {
    Result r{1, "group order and associativity", Status::pass, "", 0, Json::object()};
    bool   ok = true;
    for (int p : opt.primes()) {
      for (auto const& prm : GroupParams::all_for(p)) {
        JkGroup const g(prm);
        auto const    elems = g.elements();
        bool const    order_ok = g.order() == elems.size()
                              && elems.size() == static_cast<std::size_t>(p * p * p * p * p * p * p * p);
        std::uint64_t triples = 0;
        std::uint64_t bad     = 0;
        if (p == 2) {
          std::vector<std::uint64_t> fails(elems.size(), 0);
          parallel_for_chunks(elems.size(), opt.threads, [&](std::size_t a) {
            for (auto const& b : elems) {
              Element const ab = g.multiply(elems[a], b);
              for (auto const& c : elems) {
                if (g.multiply(ab, c) != g.multiply(elems[a], g.multiply(b, c))) {
                  ++fails[a];
                }
              }
            }
          });
          for (auto f : fails) bad += f;
          triples = static_cast<std::uint64_t>(elems.size()) * elems.size() * elems.size();
        } else {
          triples = 1'000'000;
          bad     = sampled_count(triples, opt.seed, opt.threads, [&](std::mt19937_64& rng, std::uint64_t n) {
            std::uniform_int_distribution<std::uint32_t> d(0, g.order() - 1);
            std::uint64_t                                 f = 0;
            for (std::uint64_t t = 0; t < n; ++t) {
              auto a = g.element_at(d(rng)), b = g.element_at(d(rng)), c = g.element_at(d(rng));
              f += g.multiply(g.multiply(a, b), c) != g.multiply(a, g.multiply(b, c)) ? 1 : 0;
            }
            return f;
          });
        }
        ok = ok && order_ok && bad == 0;
        r.data[detail::label(prm)] = {{"order", g.order()}, {"triples", triples}, {"failures", bad}};
      }
    }
    r.status = detail::verdict(ok);
    r.detail = ok ? "all orders p^8, no associativity failures" : "order or associativity failure";
    return r;
  }

  // 2. Closed-form powers against repeated multiplication.
  inline Result power_formula(Options const& opt) {
    Result r{2, "power formula", Status::pass, "", 0, Json::object()};
    bool   ok = true;
    for (int p : opt.primes()) {
      for (auto const& prm : GroupParams::all_for(p)) {
        JkGroup const g(prm);
        std::uint64_t checks = 0, bad = 0;
        for (auto const& x : g.elements()) {
          Element acc = g.identity();
          for (std::uint64_t n = 0; n <= static_cast<std::uint64_t>(p * p); ++n) {
            ++checks;
            bad += (g.power_formula(x, n) != acc || g.power(x, n) != acc) ? 1 : 0;
            acc = g.multiply(acc, x);
          }
        }
        ok = ok && bad == 0;
        r.data[detail::label(prm)] = {{"checks", checks}, {"failures", bad}};
      }
    }
    r.status = detail::verdict(ok);
    r.detail = ok ? "closed form equals iterated product everywhere" : "power mismatch";
    return r;
  }

  // 3. Non-central elements have order p^2 in the end-commutative p = 3 groups.
  inline Result order_lemma(Options const& opt) {
    Result r{3, "non-central elements have order p^2", Status::skipped, "needs p = 3", 0, Json::object()};
    if (!opt.wants(3)) {
      return r;
    }
    bool ok = true;
    for (auto const& prm : {GroupParams(3, 0, 1), GroupParams(3, 1, 1), GroupParams(3, 2, 1)}) {
      JkGroup const g(prm);
      std::uint64_t noncentral = 0, order9 = 0;
      for (auto const& x : g.elements()) {
        if (!x.is_central()) {
          ++noncentral;
          order9 += g.element_order(x) == 9 ? 1 : 0;
        }
      }
      ok = ok && noncentral == 6480 && order9 == 6480;
      r.data[detail::label(prm)] = {{"noncentral", noncentral}, {"order_9", order9}};
    }
    r.status = detail::verdict(ok);
    r.detail = ok ? "6480 of 6480 non-central elements have order 9 in each group" : "order mismatch";
    return r;
  }

  // 4. End-commutative families: census {id, 0}, |End| = 2 p^16, commuting.
  inline Result theorem1(Options const& opt) {
    Result r{4, "end-commutative families", Status::pass, "", 0, Json::object()};
    std::vector<GroupParams> fams;
    if (opt.p2) fams.emplace_back(2, 0, 1);
    if (opt.p3) {
      fams.emplace_back(3, 0, 1);
      fams.emplace_back(3, 1, 1);
      fams.emplace_back(3, 2, 1);
    }
    bool ok = true;
    for (auto const& prm : fams) {
      JkGroup const g(prm);
      EnumerationOptions eo;
      eo.threads   = opt.threads;
      auto const t0 = std::chrono::steady_clock::now();
      auto const c  = census(g, eo);
      double const secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      auto const t = verify_theorem1(g, 1'000'000, opt.seed, opt.threads);
      bool const fam_ok = c.normalized_count == 2 && c.endomorphism_count == 2 * class_size(prm.p) && t.holds
                          && secs < 600;
      ok = ok && fam_ok;
      Json d = endomon::to_json(t);
      d["endomorphism_count"] = c.endomorphism_count;
      d["candidates"]         = c.candidates;
      d["census_seconds"]     = secs;
      r.data[detail::label(prm)] = d;
    }
    r.status = detail::verdict(ok);
    r.detail = ok ? "2 classes, 2p^16 endomorphisms, 10^6 random pairs commute per family" : "census or commutation failure";
    return r;
  }

  // 5. Non-commuting pairs and the corrected witness pair.
  inline Result theorem2(Options const& opt) {
    Result r{5, "non-commuting witnesses", Status::pass, "", 0, Json::object()};
    std::vector<GroupParams> fams;
    if (opt.p2) {
      fams.emplace_back(2, 1, 0);
      fams.emplace_back(2, 1, 1);
    }
    if (opt.p3) fams.emplace_back(3, 1, 0);
    bool ok = true;
    for (auto const& prm : fams) {
      JkGroup const g(prm);
      auto const    nm   = enumerate_normalized(g).endos;
      auto const    pair = find_noncommuting_pair(g, nm);
      auto const    w    = paper_witness(g);
      ok = ok && pair.has_value() && w.disagrees_centrally && !commute(g, w.phi, w.star_f);
      Json d{{"pair_found", pair.has_value()}, {"witness", endomon::to_json(w)}};
      r.data[detail::label(prm)] = d;
    }
    r.status = detail::verdict(ok);
    r.detail = ok ? "pairs found; witness composites differ at a1 by [a1,b1]" : "missing witness";
    return r;
  }

  // 6. lambda = (1,0): p^4 + 1 classes, all non-identity ones into <a1 a2^-1>.
  inline Result exceptional_theorem(Options const& opt) {
    Result r{6, "lambda = (1,0) classification", Status::pass, "", 0, Json::object()};
    bool   ok = true;
    for (int p : opt.primes()) {
      JkGroup const g(GroupParams(p, 1, 0));
      auto const    t = verify_exceptional_theorem(g);
      ok = ok && t.holds;
      r.data[detail::label(g.params())] = endomon::to_json(t);
    }
    r.status = detail::verdict(ok);
    r.detail = ok ? "p^4 + 1 classes, matching the cyclic description" : "classification mismatch";
    return r;
  }

  // 7. The 23 classes of G_(1,1)^(2), the composition table, S3, no-section.
  inline Result exceptional_tables(Options const& opt) {
    Result r{7, "G_(1,1)^(2) tables", Status::skipped, "needs p = 2", 0, Json::object()};
    if (!opt.p2) {
      return r;
    }
    auto const    t0 = std::chrono::steady_clock::now();
    JkGroup const g  = exceptional_group();
    auto const    nm = enumerate_normalized(g).endos;
    bool          ok = nm.size() == 23;
    r.data["normalized_count"] = nm.size();
    try {
      auto const t = build_exceptional_table();
      bool       phis_ok = true;
      for (auto const& e : t.phis) {
        phis_ok = phis_ok && validate(g, e.images()) && std::find(nm.begin(), nm.end(), e) != nm.end();
      }
      FpVec4 const v({1, 1, 0, 1}, 2);
      bool         cols_ok = t.m3 == t.m1 + t.m2;
      for (auto const& m : {t.m1, t.m2, t.m3}) {
        for (std::size_t j = 0; j < 4; ++j) {
          cols_ok = cols_ok && (m.column(j).is_zero() || m.column(j) == v);
        }
      }
      auto const q  = check_quotient(t);
      auto const ns = verify_no_tsdp_section();
      ok = ok && phis_ok && cols_ok && q.is_s3() && q.neutral == 4 && q.permutation_model && ns.holds;
      r.data["table"]      = endomon::to_json(t);
      r.data["quotient"]   = endomon::to_json(q);
      r.data["no_section"] = endomon::to_json(ns);
    } catch (TableMismatch const& e) {
      ok              = false;
      r.data["error"] = e.what();
    }
    double const secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ok       = ok && secs < 60;
    r.status = detail::verdict(ok);
    r.detail = ok ? "23 classes, 36/36 cells, S3 with phi4 neutral, no solution of f = M3 + f o phi4"
                  : "table check failed";
    return r;
  }

  // 8. alpha and the commutative model.
  inline Result alpha_isomorphism(Options const& opt) {
    Result r{8, "monoid isomorphisms to the two-sided semidirect products", Status::pass, "", 0, Json::object()};
    bool   ok = true;
    for (int p : opt.primes()) {
      auto const a = verify_alpha_isomorphism(p, p == 2 ? 1'000'000 : 100'000, opt.seed, p == 2);
      auto const c = verify_commutative_model(GroupParams(p, 0, 1), p == 2 ? 1'000'000 : 100'000, opt.seed, p == 2);
      ok = ok && a.ok() && c.ok();
      r.data["alpha p=" + std::to_string(p)]       = endomon::to_json(a);
      r.data["commutative p=" + std::to_string(p)] = endomon::to_json(c);
    }
    r.status = detail::verdict(ok);
    r.detail = ok ? "homomorphism and bijection checks without failures" : "isomorphism check failed";
    return r;
  }

  // 9. Orbit censuses by the rank formula, confirmed by explicit closure.
  inline Result orbit_censuses(Options const& opt) {
    Result r{9, "conjugation orbit censuses", Status::pass, "", 0, Json::object()};
    struct Expect {
      GroupParams                            prm;
      std::map<std::uint64_t, std::uint64_t> hist;
      std::uint64_t                          total;
    };
    std::vector<Expect> ex;
    if (opt.p2) {
      ex.push_back({GroupParams(2, 1, 0), {{1, 131072}, {16, 61440}}, 192512});
      ex.push_back({GroupParams(2, 1, 1), {{1, 131072}, {16, 61440}, {256, 1536}}, 194048});
    }
    if (opt.p3) {
      std::uint64_t const c = class_size(3);
      ex.push_back({GroupParams(3, 1, 0), {{1, 2 * c}, {81, 80 * (c / 81)}}, 3 * c - c / 81});
    }
    bool        ok = true;
    std::string why;
    for (auto const& e : ex) {
      auto const census = orbit_census(e.prm, OrbitMethod::rank_formula, opt.threads);
      auto const spot   = spot_check_orbits(e.prm, e.prm.p == 2 ? 100 : 20, opt.seed);
      auto const closed = orbit_census(e.prm, OrbitMethod::explicit_closure, opt.threads);
      bool const census_ok = census.histogram == e.hist && census.total_orbits == e.total && census.mass_ok();
      ok = ok && census_ok && spot.ok();
      if (!census_ok) {
        why += " census " + detail::label(e.prm) + " gave " + std::to_string(census.total_orbits) + ";";
      }
      if (!spot.ok()) {
        why += " explicit closure disagrees with the rank formula on " + std::to_string(spot.mismatch_count) + "/"
               + std::to_string(spot.samples) + " endomorphisms of " + detail::label(e.prm)
               + " (closure census total " + std::to_string(closed.total_orbits) + ");";
      }
      r.data[detail::label(e.prm)] = {{"expected_total", e.total},
                                      {"rank_formula", endomon::to_json(census)},
                                      {"explicit_closure", endomon::to_json(closed)},
                                      {"spot_check", endomon::to_json(spot)}};
    }
    if (!why.empty()) {
      why = why.substr(1, why.size() - 2);
    }
    r.status = detail::verdict(ok);
    r.detail = ok ? "histograms match; closure confirms the formula on every sample" : why;
    return r;
  }

  // 10. Axioms of the monoids and actions behind both products.
  inline Result tsdp_axioms(Options const& opt) {
    Result r{10, "two-sided semidirect product axioms", Status::pass, "", 0, Json::object()};
    bool   ok = true;
    for (int p : opt.primes()) {
      AuditOptions ao;
      ao.seed    = opt.seed;
      ao.samples = 100'000;
      std::string const tag = "p=" + std::to_string(p);
      try {
        auto const cm = build_commutative_model(p, ao);
        auto const em = build_exceptional_model(p, ao);
        auto const sp = audit_sp_associativity(p, ao);
        auto const pc = cm.audit_product(1'000'000, opt.seed);
        auto const pe = em.audit_product(1'000'000, opt.seed + 1);
        ok = ok && cm.construction_audit().ok() && em.construction_audit().ok() && sp.ok() && pc.ok() && pe.ok()
             && (p != 2 || sp.exhaustive);
        r.data["commutative " + tag]         = endomon::to_json(cm.construction_audit());
        r.data["exceptional " + tag]         = endomon::to_json(em.construction_audit());
        r.data["S_p " + tag]                 = endomon::to_json(sp);
        r.data["commutative product " + tag] = endomon::to_json(pc);
        r.data["exceptional product " + tag] = endomon::to_json(pe);
      } catch (AxiomViolation const& e) {
        ok                          = false;
        r.data["error " + tag]      = e.what();
      }
    }
    r.status = detail::verdict(ok);
    r.detail = ok ? "identity, associativity and action compatibility hold" : "axiom failure";
    return r;
  }

  // 11. G = nil(e) per(e) for random endomorphisms.
  inline Result nil_per(Options const& opt) {
    Result r{11, "nil/per split", Status::pass, "", 0, Json::object()};
    bool   ok = true;
    for (int p : opt.primes()) {
      for (auto const& prm : GroupParams::all_for(p)) {
        auto const s = survey_nil_per(prm, p == 2 ? 1000 : 100, opt.seed, opt.threads);
        ok = ok && s.ok();
        r.data[detail::label(prm)] = endomon::to_json(s);
      }
    }
    r.status = detail::verdict(ok);
    r.detail = ok ? "trivial intersection, normality and product = G for every sample" : "split failure";
    return r;
  }

  // 12. Omega_1 <= center exactly for the end-commutative families.
  inline Result omega1_dichotomy(Options const& opt) {
    Result r{12, "Omega_1 against the center", Status::pass, "", 0, Json::object()};
    bool   ok = true;
    for (int p : opt.primes()) {
      for (auto const& prm : GroupParams::all_for(p)) {
        auto const o = omega1_report(prm);
        bool       fam_ok = o.is_subgroup && o.leq_center == !prm.is_exceptional();
        if (prm.lambda1 == 1 && prm.lambda2 == 0) {
          fam_ok = fam_ok && o.omega1_size == static_cast<std::size_t>(p * p * p * p * p);
        } else if (prm.is_exceptional()) {
          fam_ok = fam_ok && o.omega1_size == 32;
        }
        ok = ok && fam_ok;
        r.data[detail::label(prm)] = endomon::to_json(o);
      }
    }
    r.status = detail::verdict(ok);
    r.detail = ok ? "contained in the center exactly for the end-commutative families" : "dichotomy broken";
    return r;
  }

  using Check = std::function<Result(Options const&)>;

  inline std::vector<Check> all_checks() {
    return {group_correctness, power_formula,     order_lemma,    theorem1,     theorem2, exceptional_theorem,
            exceptional_tables, alpha_isomorphism, orbit_censuses, tsdp_axioms, nil_per,  omega1_dichotomy};
  }

  inline Result timed(Check const& c, Options const& opt) {
    auto const t0 = std::chrono::steady_clock::now();
    Result     r  = c(opt);
    r.seconds     = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
  }

  // Findings beyond the twelve checks: exact closure systems for lifts of
  // the classes of G_(1,1)^(2) and the resulting product decomposition.
  inline Json supplementary(Options const& opt) {
    Json j = Json::object();
    if (!opt.p2) {
      return j;
    }
    j["phi_lift_closure"]  = endomon::to_json(solve_phi_section_system(opt.seed));
    j["full_section"]      = endomon::to_json(solve_full_section_system(opt.seed));
    j["section_model"]     = endomon::to_json(verify_section_model(100'000, opt.seed));
    JkGroup const g        = exceptional_group();
    Json          sizes    = Json::array();
    for (auto const& e : exceptional_phis(g)) {
      sizes.push_back({{"by_rank", orbit_size_by_rank(g, e)},
                       {"closure", orbit_of(g, e).size()},
                       {"linear", orbit_size_linear(g, e)}});
    }
    j["phi_orbit_sizes"] = sizes;
    return j;
  }

}  // namespace endomon::acceptance
