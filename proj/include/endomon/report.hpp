// endomon - exact endomorphism monoids of small p-groups
//
// Serialization of results: JSON (stable key order), CSV histograms and
// markdown tables.

#pragma once

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "census.hpp"
#include "orbits.hpp"
#include "structure.hpp"
#include "tsdp.hpp"

namespace endomon {

  using Json = nlohmann::ordered_json;

  inline constexpr int schema_version = 1;

  inline Json envelope(std::string const& command) {
    Json j;
    j["schema_version"] = schema_version;
    j["command"]        = command;
    return j;
  }

  inline Json to_json(GroupParams const& prm) {
    return Json{{"p", prm.p}, {"lambda", {prm.lambda1, prm.lambda2}}};
  }

  inline Json to_json(FpVec4 const& v) {
    return Json(v.to_array());
  }

  // rows of the matrix
  inline Json to_json(FpMat4 const& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < 4; ++i) {
      rows.push_back({m(i, 0), m(i, 1), m(i, 2), m(i, 3)});
    }
    return rows;
  }

  inline Json to_json(Element const& e) {
    return to_string(e);
  }

  inline Json to_json(Endo const& e) {
    Json j = Json::array();
    for (auto const& x : e.images()) {
      j.push_back(to_string(x));
    }
    return j;
  }

  inline Json to_json(Sp1Element const& s) {
    return s.is_identity() ? Json("1") : to_json(s.vec());
  }

  inline Json to_json(ClassKindCounts const& c) {
    return Json{{"identity", c.identity},
                {"central", c.central},
                {"abelian_image", c.abelian_image},
                {"exceptional", c.exceptional}};
  }

  inline Json to_json(CensusReport const& r) {
    Json j;
    j["params"]             = to_json(r.params);
    j["normalized_count"]   = r.normalized_count;
    j["endomorphism_count"] = r.endomorphism_count;
    j["kinds"]              = to_json(r.kinds);
    j["candidates"]         = r.candidates;
    j["central_shortcut"]   = r.central_shortcut;
    if (r.witnesses) {
      j["noncommuting_pair"] = {to_json(r.witnesses->first), to_json(r.witnesses->second)};
    } else {
      j["noncommuting_pair"] = nullptr;
    }
    return j;
  }

  inline Json to_json(Theorem1Result const& r) {
    return Json{{"holds", r.holds},
                {"normalized_count", r.normalized_count},
                {"only_identity_and_zero", r.only_identity_and_zero},
                {"representative_pairs", r.representative_pairs},
                {"representative_failures", r.representative_failures},
                {"sampled_pairs", r.sampled_pairs},
                {"sampled_failures", r.sampled_failures}};
  }

  inline Json to_json(WitnessCheck const& w) {
    return Json{{"phi", to_json(w.phi)},
                {"star_f", to_json(w.star_f)},
                {"phi_after_star_at_a1", to_string(w.phi_after_star)},
                {"star_after_phi_at_a1", to_string(w.star_after_phi)},
                {"central_factor", to_string(w.central_factor)},
                {"disagrees_centrally", w.disagrees_centrally}};
  }

  inline Json to_json(ExceptionalTheoremResult const& r) {
    return Json{{"holds", r.holds},
                {"normalized_count", r.normalized_count},
                {"expected_count", r.expected_count},
                {"matches_set", r.matches_set},
                {"cyclic_maps_validate", r.cyclic_maps_validate}};
  }

  inline std::string cell_string(TableCell const& c) {
    std::string s = "phi" + std::to_string(c.index);
    if (c.shift != 0) {
      s += "+M" + std::to_string(c.shift);
    }
    return s;
  }

  inline Json to_json(ExceptionalTable const& t) {
    Json j;
    Json phis = Json::array();
    for (auto const& e : t.phis) {
      phis.push_back(to_json(e));
    }
    j["phis"] = phis;
    j["m1"]   = to_json(t.m1);
    j["m2"]   = to_json(t.m2);
    j["m3"]   = to_json(t.m3);
    Json comp = Json::array();
    for (auto const& row : t.comp) {
      Json r = Json::array();
      for (auto const& c : row) {
        r.push_back(cell_string(c));
      }
      comp.push_back(r);
    }
    j["composition"] = comp;
    return j;
  }

  inline Json to_json(QuotientCheck const& q) {
    return Json{{"closed", q.closed},
                {"associative", q.associative},
                {"neutral", q.neutral},
                {"has_inverses", q.has_inverses},
                {"nonabelian", q.nonabelian},
                {"permutation_model", q.permutation_model},
                {"is_s3", q.is_s3()}};
  }

  inline Json to_json(NoSectionResult const& r) {
    return Json{{"holds", r.holds},
                {"solutions_per_i", r.solutions},
                {"candidates_per_i", r.candidates_per_i},
                {"control_solutions", r.control_solutions},
                {"column_contradiction", r.column_contradiction},
                {"idempotent_lifts_of_phi4", r.idempotent_lifts}};
  }

  inline Json to_json(SectionSystemResult const& r) {
    Json j{{"classes", r.classes},
           {"equations", r.equations},
           {"unknowns", r.unknowns},
           {"rank", r.rank},
           {"consistent", r.consistent},
           {"affine_model_ok", r.affine_ok},
           {"affine_checks", r.affine_checks}};
    if (r.consistent) {
      j["solution_count_log2"] = r.unknowns - r.rank;
      Json w = Json::array();
      for (auto const& m : r.witness) {
        w.push_back(m.to_string());
      }
      j["witness"]        = w;
      j["witness_closed"] = r.witness_closed;
    }
    return j;
  }

  inline Json to_json(AxiomTally const& a) {
    Json j{{"axiom", a.name},
           {"checks", a.checks},
           {"failures", a.failures},
           {"exhaustive", a.exhaustive}};
    if (a.counterexample) {
      j["counterexample"] = *a.counterexample;
    }
    return j;
  }

  inline Json to_json(AuditReport const& r) {
    Json j = Json::array();
    for (auto const& a : r.axioms) {
      j.push_back(to_json(a));
    }
    return j;
  }

  inline Json to_json(IsomorphismCheck const& r) {
    Json j{{"ok", r.ok()},
           {"exhaustive_pairs", r.exhaustive_pairs},
           {"sampled_pairs", r.sampled_pairs},
           {"failures", r.failures},
           {"bijection_checks", r.bijection_checks},
           {"bijection_failures", r.bijection_failures},
           {"identity_ok", r.identity_ok}};
    if (r.counterexample) {
      j["counterexample"] = *r.counterexample;
    }
    return j;
  }

  inline Json to_json(OrbitCensus const& c) {
    Json hist = Json::array();
    for (auto const& [len, count] : c.histogram) {
      hist.push_back({{"length", len}, {"count", count}});
    }
    return Json{{"params", to_json(c.params)},
                {"method", to_string(c.method)},
                {"histogram", hist},
                {"total_orbits", c.total_orbits},
                {"mass", c.mass},
                {"endomorphism_count", c.endomorphism_count}};
  }

  inline Json to_json(OrbitSpotCheck const& r) {
    Json mm = Json::array();
    for (auto const& m : r.mismatches) {
      mm.push_back({{"endo", m.endo}, {"by_rank", m.by_rank}, {"explicit", m.explicit_}});
    }
    return Json{{"params", to_json(r.params)},
                {"samples", r.samples},
                {"agreements", r.agreements},
                {"mismatch_count", r.mismatch_count},
                {"linear_disagreements", r.linear_disagreements},
                {"mismatches", mm}};
  }

  inline Json to_json(Omega1Report const& r) {
    Json j{{"params", to_json(r.params)},
           {"omega1_size", r.omega1_size},
           {"is_subgroup", r.is_subgroup},
           {"leq_center", r.leq_center}};
    j["witness"] = r.witness ? Json(to_string(*r.witness)) : Json(nullptr);
    return j;
  }

  inline Json to_json(NilPerSplit const& s) {
    return Json{{"endo", to_json(s.endo)},
                {"nil_size", s.nil.size()},
                {"per_size", s.per.size()},
                {"nil_is_subgroup", s.nil_is_subgroup},
                {"per_is_subgroup", s.per_is_subgroup},
                {"trivial_intersection", s.trivial_intersection},
                {"nil_normal", s.nil_normal},
                {"product_is_group", s.product_is_group}};
  }

  inline Json to_json(NilPerSurvey const& r) {
    Json j{{"params", to_json(r.params)},
           {"samples", r.samples},
           {"failures", r.failures},
           {"automorphisms", r.automorphisms},
           {"nilpotent", r.nilpotent}};
    if (r.counterexample) {
      j["counterexample"] = *r.counterexample;
    }
    return j;
  }

  inline Json to_json(InvarianceResult const& r) {
    Json j{{"invariant", r.invariant}, {"tested", r.tested}, {"exhaustive", r.exhaustive}};
    j["witness"] = r.witness ? Json(*r.witness) : Json(nullptr);
    return j;
  }

  ////////////////////////////////////////////////////////////////////////
  // CSV and markdown
  ////////////////////////////////////////////////////////////////////////

  inline std::string histogram_csv(OrbitCensus const& c) {
    std::ostringstream out;
    out << "length,count\n";
    for (auto const& [len, count] : c.histogram) {
      out << len << ',' << count << '\n';
    }
    return out.str();
  }

  inline std::string histogram_markdown(OrbitCensus const& c) {
    std::ostringstream out;
    out << "| orbit length | orbits |\n|---:|---:|\n";
    for (auto const& [len, count] : c.histogram) {
      out << "| " << len << " | " << count << " |\n";
    }
    out << "| **total** | " << c.total_orbits << " |\n";
    return out.str();
  }

  inline std::string census_markdown(CensusReport const& r) {
    std::ostringstream out;
    out << "| p | lambda | normalized | identity | central | abelian image | exceptional | |End(G)| |\n"
        << "|---|---|---:|---:|---:|---:|---:|---:|\n"
        << "| " << r.params.p << " | (" << r.params.lambda1 << "," << r.params.lambda2 << ") | "
        << r.normalized_count << " | " << r.kinds.identity << " | " << r.kinds.central << " | "
        << r.kinds.abelian_image << " | " << r.kinds.exceptional << " | " << r.endomorphism_count << " |\n";
    return out.str();
  }

  // The phi_i by their generator images, then the composition table.
  inline std::string exceptional_tables_markdown(ExceptionalTable const& t) {
    JkGroup const      g = exceptional_group();
    std::ostringstream out;
    char const*        names[4] = {"a1", "a2", "b1", "b2"};
    out << "| | a1 | a2 | b1 | b2 |\n|---|---|---|---|---|\n";
    for (std::size_t i = 0; i < 6; ++i) {
      out << "| phi" << i + 1;
      for (std::size_t j = 0; j < 4; ++j) {
        auto const v = g.generator_part(t.phis[i].image(j));
        std::string word;
        for (std::size_t k = 0; k < 4; ++k) {
          if (v[k] != 0) {
            word += names[k];
          }
        }
        out << " | " << (word.empty() ? "1" : word);
      }
      out << " |\n";
    }
    out << "\n| o |";
    for (std::size_t j = 0; j < 6; ++j) {
      out << " phi" << j + 1 << " |";
    }
    out << "\n|---|---|---|---|---|---|---|\n";
    for (std::size_t i = 0; i < 6; ++i) {
      out << "| phi" << i + 1 << " |";
      for (std::size_t j = 0; j < 6; ++j) {
        out << ' ' << cell_string(t.comp[i][j]) << " |";
      }
      out << '\n';
    }
    return out.str();
  }

}  // namespace endomon
