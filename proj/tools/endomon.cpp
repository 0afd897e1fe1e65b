// endomon command line front end.
//
//   endomon <group|endo|census|tsdp|orbits|structure|verify> <action> [options]
//
// Exit status: 0 all requested checks passed, 1 a check failed, 2 bad
// configuration.

#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "endomon/acceptance.hpp"
#include "endomon/census.hpp"
#include "endomon/orbits.hpp"
#include "endomon/report.hpp"
#include "endomon/structure.hpp"
#include "endomon/tsdp.hpp"

using namespace endomon;

namespace {

  struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
  };

  struct Config {
    int                      p        = 2;
    std::string              lambda   = "1,0";
    std::uint64_t            seed     = 1;
    std::optional<std::uint64_t> samples;
    std::string              format   = "json";
    unsigned                 threads  = default_thread_count();
    bool                     allow_p5 = false;
    std::vector<std::string> elements;
    std::uint64_t            n = 0;
    std::vector<std::string> endos;
    std::string              central;
    std::string              method = "rank";
    bool                     p_given = false;
  };

  struct Outcome {
    Json        report;
    bool        pass = true;
    std::string csv;        // empty: format not offered
    std::string markdown;
  };

  void check_prime(Config const& c) {
    if (!is_supported_prime(c.p)) {
      throw ConfigError("unsupported prime " + std::to_string(c.p) + " (use 2, 3 or 5)");
    }
    if (c.p == 5 && !c.allow_p5) {
      throw ConfigError("p = 5 needs --allow-p5");
    }
  }

  GroupParams params_of(Config const& c) {
    check_prime(c);
    auto const comma = c.lambda.find(',');
    if (comma == std::string::npos) {
      throw ConfigError("--lambda expects \"l1,l2\"");
    }
    int l1 = 0, l2 = 0;
    try {
      std::size_t used = 0;
      l1 = std::stoi(c.lambda.substr(0, comma), &used);
      if (used != comma) throw std::invalid_argument("lambda");
      auto const rest = c.lambda.substr(comma + 1);
      l2 = std::stoi(rest, &used);
      if (used != rest.size()) throw std::invalid_argument("lambda");
    } catch (std::exception const&) {
      throw ConfigError("--lambda expects two integers \"l1,l2\"");
    }
    if (!GroupParams::is_admissible(c.p, l1, l2)) {
      throw ConfigError("lambda = (" + c.lambda + ") is not admissible for p = " + std::to_string(c.p));
    }
    return GroupParams(c.p, l1, l2);
  }

  EnumerationOptions enum_options(Config const& c) {
    EnumerationOptions o;
    o.threads  = c.threads;
    o.allow_p5 = c.allow_p5;
    return o;
  }

  Element parse_element(JkGroup const& g, std::string const& s) {
    try {
      return g.parse(s);
    } catch (std::invalid_argument const& e) {
      throw ConfigError(std::string("bad element: ") + e.what());
    }
  }

  std::vector<Element> need_elements(JkGroup const& g, Config const& c, std::size_t k) {
    if (c.elements.size() != k) {
      throw ConfigError("expected " + std::to_string(k) + " --element option(s)");
    }
    std::vector<Element> out;
    for (auto const& s : c.elements) {
      out.push_back(parse_element(g, s));
    }
    return out;
  }

  GenImages parse_images(JkGroup const& g, std::string const& text) {
    GenImages   im;
    std::size_t n = 0, start = 0;
    while (true) {
      auto stop = text.find(';', start);
      if (n == 4) throw ConfigError("an endomorphism is four ';'-separated elements");
      im[n++] = parse_element(g, text.substr(start, stop == std::string::npos ? std::string::npos : stop - start));
      if (stop == std::string::npos) break;
      start = stop + 1;
    }
    if (n != 4) throw ConfigError("an endomorphism is four ';'-separated elements");
    return im;
  }

  Endo need_endo(JkGroup const& g, std::string const& text) {
    auto e = try_make_endo(g, parse_images(g, text));
    if (!e) {
      throw ConfigError("generator images violate the defining relations: " + text);
    }
    return *e;
  }

  std::uint64_t samples_or(Config const& c, std::uint64_t fallback) {
    return c.samples.value_or(fallback);
  }

  // Published counts where known.
  std::optional<std::uint64_t> expected_normalized(GroupParams const& prm) {
    if (prm.lambda1 == 1 && prm.lambda2 == 0) {
      return static_cast<std::uint64_t>(prm.p) * prm.p * prm.p * prm.p + 1;
    }
    if (prm.is_exceptional()) {
      return 23;
    }
    return 2;
  }

  std::optional<std::uint64_t> expected_orbits(GroupParams const& prm) {
    std::uint64_t const c = class_size(prm.p);
    if (prm.lambda1 == 1 && prm.lambda2 == 0) {
      return 3 * c - c / static_cast<std::uint64_t>(prm.p * prm.p * prm.p * prm.p);
    }
    if (prm.is_exceptional()) {
      return 194048;
    }
    return 2 * c;
  }

  ////////////////////////////////////////////////////////////////////////
  // group
  ////////////////////////////////////////////////////////////////////////

  Outcome group_cmd(std::string const& action, Config const& c) {
    auto const    prm = params_of(c);
    JkGroup const g(prm);
    Outcome       o;
    o.report           = envelope("group " + action);
    o.report["params"] = to_json(prm);
    if (action == "info") {
      auto const om = omega1_report(prm);
      o.report["order"]          = g.order();
      o.report["center_order"]   = g.center().size();
      o.report["omega1_order"]   = om.omega1_size;
      o.report["end_commutative"] = !prm.is_exceptional();
    } else if (action == "mul") {
      auto const xs = need_elements(g, c, 2);
      o.report["result"] = to_string(g.multiply(xs[0], xs[1]));
    } else if (action == "pow") {
      auto const xs      = need_elements(g, c, 1);
      o.report["n"]      = c.n;
      o.report["result"] = to_string(g.power(xs[0], c.n));
    } else if (action == "order") {
      auto const xs      = need_elements(g, c, 1);
      o.report["element"] = to_string(xs[0]);
      o.report["order"]   = g.element_order(xs[0]);
      o.report["central"] = xs[0].is_central();
    }
    return o;
  }

  ////////////////////////////////////////////////////////////////////////
  // endo
  ////////////////////////////////////////////////////////////////////////

  Outcome endo_cmd(std::string const& action, Config const& c) {
    auto const    prm = params_of(c);
    JkGroup const g(prm);
    Outcome       o;
    o.report           = envelope("endo " + action);
    o.report["params"] = to_json(prm);
    if (action == "validate") {
      if (c.endos.size() != 1) throw ConfigError("validate takes one --endo");
      auto const im   = parse_images(g, c.endos[0]);
      bool const ok   = validate(g, im);
      o.report["valid"] = ok;
      if (ok) {
        auto const e = make_endo_unchecked(im);
        o.report["automorphism"] = is_automorphism(g, e);
        o.report["class_kind"]   = to_string(classify(g, e));
      }
      o.pass = ok;
    } else if (action == "compose") {
      if (c.endos.size() != 2) throw ConfigError("compose takes two --endo (result is first o second)");
      auto const x = need_endo(g, c.endos[0]);
      auto const y = need_endo(g, c.endos[1]);
      o.report["result"] = to_json(compose(g, x, y));
    } else if (action == "star") {
      CentralHom f = CentralHom::zero(prm.p);
      try {
        f = parse_central_hom(prm.p, c.central);
      } catch (std::invalid_argument const& e) {
        throw ConfigError(e.what());
      }
      auto const s = star(g, f);
      o.report["central"]      = c.central;
      o.report["result"]       = to_json(s);
      o.report["automorphism"] = is_automorphism(g, s);
    }
    return o;
  }

  ////////////////////////////////////////////////////////////////////////
  // census
  ////////////////////////////////////////////////////////////////////////

  Outcome census_cmd(std::string const& action, Config const& c) {
    Outcome o;
    o.report = envelope("census " + action);
    if (action == "tables" || action == "no-section") {
      if (action == "tables") {
        auto const t = build_exceptional_table();
        auto const q = check_quotient(t);
        o.report["params"]   = to_json(exceptional_group().params());
        o.report["table"]    = to_json(t);
        o.report["quotient"] = to_json(q);
        o.pass               = q.is_s3() && q.neutral == 4;
        o.markdown           = exceptional_tables_markdown(t);
      } else {
        auto const ns = verify_no_tsdp_section();
        o.report["params"]     = to_json(exceptional_group().params());
        o.report["no_section"] = to_json(ns);
        o.report["lift_closure"] = {{"phi_classes", to_json(solve_phi_section_system(c.seed))},
                                    {"all_classes", to_json(solve_full_section_system(c.seed))}};
        o.pass = ns.holds;
      }
      return o;
    }
    auto const    prm = params_of(c);
    JkGroup const g(prm);
    o.report["params"] = to_json(prm);
    if (action == "normalized") {
      auto const r   = census(g, enum_options(c));
      auto const exp = expected_normalized(prm);
      o.report["census"] = to_json(r);
      o.report["normalized_count"] = r.normalized_count;
      o.report["expected_normalized_count"] = exp ? Json(*exp) : Json(nullptr);
      o.pass     = !exp || *exp == r.normalized_count;
      o.markdown = census_markdown(r);
    } else if (action == "theorem1") {
      if (prm.is_exceptional()) throw ConfigError("theorem1 applies to end-commutative parameters");
      auto const r = verify_theorem1(g, samples_or(c, 1'000'000), c.seed, c.threads);
      o.report["result"] = to_json(r);
      o.pass             = r.holds;
    } else if (action == "theorem2") {
      if (!prm.is_exceptional()) throw ConfigError("theorem2 applies to lambda = (1,0) or p = 2, lambda = (1,1)");
      EnumerationOptions eo = enum_options(c);
      auto const pair = find_noncommuting_pair(g, enumerate_normalized(g, eo).endos);
      auto const w    = paper_witness(g);
      o.report["noncommuting_pair"] = pair ? Json{to_json(pair->first), to_json(pair->second)} : Json(nullptr);
      o.report["witness"]           = to_json(w);
      o.pass = pair.has_value() && w.disagrees_centrally;
    } else if (action == "exceptional") {
      if (!(prm.lambda1 == 1 && prm.lambda2 == 0)) throw ConfigError("exceptional applies to lambda = (1,0)");
      auto const r = verify_exceptional_theorem(g);
      o.report["result"] = to_json(r);
      o.pass             = r.holds;
    }
    return o;
  }

  ////////////////////////////////////////////////////////////////////////
  // tsdp
  ////////////////////////////////////////////////////////////////////////

  Outcome tsdp_cmd(std::string const& action, Config const& c) {
    Outcome o;
    o.report = envelope("tsdp " + action);
    if (action == "axioms") {
      check_prime(c);
      AuditOptions ao;
      ao.seed     = c.seed;
      auto const cm = build_commutative_model(c.p, ao);
      auto const em = build_exceptional_model(c.p, ao);
      auto const sp = audit_sp_associativity(c.p, ao);
      auto const n  = samples_or(c, 1'000'000);
      auto const pc = cm.audit_product(n, c.seed);
      auto const pe = em.audit_product(n, c.seed + 1);
      o.report["p"]                   = c.p;
      o.report["commutative"]         = to_json(cm.construction_audit());
      o.report["exceptional"]         = to_json(em.construction_audit());
      o.report["S_p"]                 = to_json(sp);
      o.report["commutative_product"] = to_json(pc);
      o.report["exceptional_product"] = to_json(pe);
      o.pass = cm.construction_audit().ok() && em.construction_audit().ok() && sp.ok() && pc.ok() && pe.ok();
      return o;
    }
    auto const prm = params_of(c);
    o.report["params"] = to_json(prm);
    if (action == "alpha") {
      if (!(prm.lambda1 == 1 && prm.lambda2 == 0)) throw ConfigError("alpha is defined for lambda = (1,0)");
      auto const r = verify_alpha_isomorphism(prm.p, samples_or(c, prm.p == 2 ? 1'000'000 : 100'000), c.seed,
                                              prm.p == 2);
      o.report["result"] = to_json(r);
      o.pass             = r.ok();
    } else if (action == "model") {
      auto const n = samples_or(c, 100'000);
      if (!prm.is_exceptional()) {
        auto const r = verify_commutative_model(prm, n, c.seed, prm.p == 2);
        o.report["model"]  = "Mat4(F_p) x {0,1}";
        o.report["result"] = to_json(r);
        o.pass             = r.ok();
      } else if (prm.lambda1 == 1 && prm.lambda2 == 0) {
        auto const r = verify_alpha_isomorphism(prm.p, n, c.seed, prm.p == 2);
        o.report["model"]  = "Mat4(F_p) x S_p^1";
        o.report["result"] = to_json(r);
        o.pass             = r.ok();
      } else {
        auto const r = verify_section_model(n, c.seed);
        o.report["model"]  = "Mat4(F_2) x S, S a 23-element section of the normalization classes";
        o.report["result"] = to_json(r);
        o.pass             = r.ok();
      }
    }
    return o;
  }

  ////////////////////////////////////////////////////////////////////////
  // orbits
  ////////////////////////////////////////////////////////////////////////

  Outcome orbits_cmd(std::string const& action, Config const& c) {
    auto const prm = params_of(c);
    Outcome    o;
    o.report           = envelope("orbits " + action);
    o.report["params"] = to_json(prm);
    if (action == "census") {
      OrbitMethod m;
      if (c.method == "rank") {
        m = OrbitMethod::rank_formula;
      } else if (c.method == "closure") {
        m = OrbitMethod::explicit_closure;
      } else {
        throw ConfigError("--method is rank or closure");
      }
      auto const r   = orbit_census(prm, m, c.threads);
      auto const exp = expected_orbits(prm);
      o.report["census"]               = to_json(r);
      o.report["total_orbits"]         = r.total_orbits;
      o.report["expected_total_orbits"] = exp ? Json(*exp) : Json(nullptr);
      o.pass     = r.mass_ok() && (!exp || *exp == r.total_orbits);
      o.csv      = histogram_csv(r);
      o.markdown = histogram_markdown(r);
    } else if (action == "spot-check") {
      auto const r = spot_check_orbits(prm, samples_or(c, prm.p == 2 ? 100 : 20), c.seed);
      o.report["result"] = to_json(r);
      o.pass             = r.ok();
    }
    return o;
  }

  ////////////////////////////////////////////////////////////////////////
  // structure
  ////////////////////////////////////////////////////////////////////////

  Outcome structure_cmd(std::string const& action, Config const& c) {
    auto const    prm = params_of(c);
    JkGroup const g(prm);
    Outcome       o;
    o.report           = envelope("structure " + action);
    o.report["params"] = to_json(prm);
    if (action == "omega1") {
      auto const r = omega1_report(prm);
      o.report["result"]              = to_json(r);
      o.report["expected_leq_center"] = !prm.is_exceptional();
      o.pass                          = r.leq_center == !prm.is_exceptional();
    } else if (action == "nilper") {
      if (!c.endos.empty()) {
        auto const s = nil_per_split(g, need_endo(g, c.endos.at(0)));
        o.report["result"] = to_json(s);
        auto const k       = nilpotency_index(g, s.endo);
        o.report["nilpotency_index"] = k ? Json(*k) : Json(nullptr);
        o.pass = s.ok();
      } else {
        auto const r = survey_nil_per(prm, samples_or(c, prm.p == 2 ? 1000 : 100), c.seed, c.threads);
        o.report["result"] = to_json(r);
        o.pass             = r.ok();
      }
    } else if (action == "invariance") {
      if (c.endos.size() != 1) throw ConfigError("invariance takes one --endo");
      auto const r = image_fully_invariant(g, need_endo(g, c.endos[0]));
      o.report["result"] = to_json(r);
      // only the end-commutative groups make a prediction
      o.pass = prm.is_exceptional() || r.invariant;
    }
    return o;
  }

  ////////////////////////////////////////////////////////////////////////
  // verify
  ////////////////////////////////////////////////////////////////////////

  Outcome verify_cmd(Config const& c) {
    acceptance::Options opt;
    if (c.p_given) {
      if (c.p != 2 && c.p != 3) throw ConfigError("verify all runs at p = 2 or p = 3");
      opt.p2 = c.p == 2;
      opt.p3 = c.p == 3;
    }
    opt.seed    = c.seed;
    opt.threads = c.threads;
    Outcome o;
    o.report = envelope("verify all");
    Json results = Json::array();
    for (auto const& check : acceptance::all_checks()) {
      auto const r = acceptance::timed(check, opt);
      std::cerr << acceptance::to_string(r.status) << "  [" << r.id << "] " << r.title << ": " << r.detail << '\n';
      o.pass = o.pass && r.status != acceptance::Status::fail;
      results.push_back(acceptance::to_json(r));
    }
    o.report["criteria"]      = results;
    o.report["supplementary"] = acceptance::supplementary(opt);
    return o;
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"endomon: endomorphism monoids of the groups G_lambda^(p) of order p^8"};
  app.require_subcommand(1);
  Config cfg;

  auto common = [&](CLI::App* sub, bool group_flags = true) {
    if (group_flags) {
      sub->add_option("--p", cfg.p, "prime (2, 3; 5 with --allow-p5)")
          ->each([&](std::string const&) { cfg.p_given = true; });
      sub->add_option("--lambda", cfg.lambda, "lambda as \"l1,l2\"");
      sub->add_flag("--allow-p5", cfg.allow_p5, "permit p = 5");
    }
    sub->add_option("--seed", cfg.seed, "seed for sampled checks");
    sub->add_option("--samples", cfg.samples, "sample budget for sampled checks");
    sub->add_option("--format", cfg.format, "json, csv or markdown")->check(CLI::IsMember({"json", "csv", "markdown"}));
    sub->add_option("--threads", cfg.threads, "worker threads (ENDOMON_THREADS)")->check(CLI::PositiveNumber);
  };

  std::string                                      action;
  std::map<std::string, std::vector<std::string>> const actions{
      {"group", {"info", "mul", "pow", "order"}},
      {"endo", {"validate", "compose", "star"}},
      {"census", {"normalized", "theorem1", "theorem2", "exceptional", "tables", "no-section"}},
      {"tsdp", {"axioms", "alpha", "model"}},
      {"orbits", {"census", "spot-check"}},
      {"structure", {"omega1", "nilper", "invariance"}},
      {"verify", {"all"}}};
  std::map<std::string, CLI::App*> subs;
  for (auto const& [name, acts] : actions) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("action", action, "action")->required()->check(CLI::IsMember(acts));
    common(sub);
    subs[name] = sub;
  }
  subs["group"]->add_option("--element", cfg.elements, "element \"k1,k2,l1,l2|r1,r2,r3,r4\" (repeat for mul)");
  subs["group"]->add_option("--n", cfg.n, "exponent for pow");
  subs["endo"]->add_option("--endo", cfg.endos, "four ';'-separated generator images (repeat for compose)");
  subs["endo"]->add_option("--central", cfg.central, "16 row-major digits of a central hom");
  subs["structure"]->add_option("--endo", cfg.endos, "four ';'-separated generator images");
  subs["orbits"]->add_option("--method", cfg.method, "rank or closure");

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const& e) {
    return app.exit(e);
  } catch (CLI::CallForAllHelp const& e) {
    return app.exit(e);
  } catch (CLI::ParseError const& e) {
    app.exit(e);
    return 2;
  }

  try {
    Outcome     out;
    std::string cmd;
    for (auto const& [name, sub] : subs) {
      if (sub->parsed()) cmd = name;
    }
    if (cmd == "group") out = group_cmd(action, cfg);
    else if (cmd == "endo") out = endo_cmd(action, cfg);
    else if (cmd == "census") out = census_cmd(action, cfg);
    else if (cmd == "tsdp") out = tsdp_cmd(action, cfg);
    else if (cmd == "orbits") out = orbits_cmd(action, cfg);
    else if (cmd == "structure") out = structure_cmd(action, cfg);
    else out = verify_cmd(cfg);

    out.report["pass"] = out.pass;
    if (cfg.format == "json") {
      std::cout << out.report.dump(2) << '\n';
    } else if (cfg.format == "csv") {
      if (out.csv.empty()) throw ConfigError("csv output is offered for orbit histograms only");
      std::cout << out.csv;
    } else {
      if (out.markdown.empty()) throw ConfigError("markdown output is offered for censuses, tables and histograms");
      std::cout << out.markdown;
    }
    return out.pass ? 0 : 1;
  } catch (ConfigError const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (std::invalid_argument const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (std::domain_error const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
