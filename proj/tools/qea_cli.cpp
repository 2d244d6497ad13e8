// Command-line front end: batch verification of algebras, states, Galois
// connections, tense structures and representations, with text and JSON
// reports. Exit codes: 0 certified, 1 violated, 2 inapplicable, 3 usage or
// parse error.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "qea/qea.hpp"
#include "qea/representation.hpp"

namespace {

using namespace qea;

struct Global {
  long long cap = 0;      // 0 = defaults
  int grid = 8;
  std::string json_path;
  unsigned seed = 1;
  std::vector<VerificationReport> reports;
  nlohmann::json extra = nlohmann::json::object();

  int finish() {
    int code = 0;
    for (const auto& r : reports) {
      std::cout << r.text();
      code = std::max(code, verdict_exit_code(r.verdict));
    }
    if (!json_path.empty()) {
      nlohmann::json out;
      out["reports"] = nlohmann::json::array();
      for (const auto& r : reports) out["reports"].push_back(report_to_json(r));
      if (!extra.empty()) out["data"] = extra;
      std::ofstream f(json_path);
      f << out.dump(2) << "\n";
    }
    return code;
  }
};

struct LoadedAlgebra {
  RawAlgebra raw;
  std::optional<FiniteEffectAlgebra> base;       // set when effect axioms pass
  std::optional<FiniteQEffectAlgebra> q;         // set when q/d maps are total
  ValidationReport effect_report, q_report;
};

std::optional<LoadedAlgebra> load_algebra(const std::string& target, std::vector<ParseError>& errors) {
  LoadedAlgebra out;
  if (std::filesystem::exists(target)) {
    std::ifstream in(target);
    std::stringstream buf;
    buf << in.rdbuf();
    auto raw = parse_algebra_text(buf.str(), target, errors);
    if (!raw) return std::nullopt;
    if (raw->name.empty()) raw->name = file_stem(target);
    out.raw = *raw;
  } else if (auto b = bundled_algebra(target)) {
    out.raw = to_raw(*b);
    out.raw.name = target;
  } else {
    errors.push_back({target, 0, "no such file or bundled algebra"});
    return std::nullopt;
  }
  out.effect_report = validate_effect_axioms(out.raw);
  if (out.effect_report.pass()) {
    out.base = finalize_effect_algebra(out.raw);
    if (out.raw.has_q()) {
      try {
        out.q = finalize_q_algebra(out.raw);
        out.q_report = validate_q_axioms(*out.q);
      } catch (const InvalidAlgebra& e) {
        out.q_report = e.report;
      }
    }
  }
  return out;
}

VerificationReport validation_to_report(const std::string& subject, const ValidationReport& er,
                                        const ValidationReport* qr) {
  VerificationReport rep;
  rep.subject = subject;
  for (const auto& v : er.structural) rep.witnesses.push_back(v.witness);
  if (!er.structural_ok()) {
    rep.add("structure", false, er.structural.front().witness);
    return rep;
  }
  for (const char* ax : {"E1", "E2", "E3", "E4", "order"}) {
    std::string first;
    bool ok = true;
    for (const auto& v : er.violations)
      if (v.axiom == ax) {
        ok = false;
        if (first.empty()) first = v.witness;
        rep.witnesses.push_back("(" + v.axiom + ") " + v.witness);
      }
    rep.add(std::string("(") + ax + ")", ok, first);
  }
  if (!er.e2_exhaustive) rep.add("(E2) scan mode", true, "sampled above cubic cap");
  if (qr) {
    for (const char* ax : {"Q1", "Q2", "Q3", "Q4", "Q5"}) {
      std::string first;
      bool ok = true;
      for (const auto& v : qr->violations)
        if (v.axiom == ax) {
          ok = false;
          if (first.empty()) first = v.witness;
          rep.witnesses.push_back("(" + v.axiom + ") " + v.witness);
        }
      rep.add(std::string("(") + ax + ")", ok, first);
    }
    if (!qr->q5_exhaustive) rep.add("(Q5) scan mode", true, "sampled above cubic cap");
  }
  return rep;
}

int parse_failed(const std::vector<ParseError>& errors) {
  for (const auto& e : errors) std::cerr << "error: " << e.str() << "\n";
  return 3;
}

std::optional<Frame> load_frame(const std::string& path, std::vector<ParseError>& errors) {
  std::ifstream in(path);
  if (!in) {
    errors.push_back({path, 0, "cannot open file"});
    return std::nullopt;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_frame_text(buf.str(), path, errors);
}

std::optional<NamedMaps> load_maps(const std::string& path, std::vector<ParseError>& errors) {
  std::ifstream in(path);
  if (!in) {
    errors.push_back({path, 0, "cannot open file"});
    return std::nullopt;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_maps_text(buf.str(), path, errors);
}

std::optional<StateSet> load_states(const std::string& path, const FiniteEffectAlgebra& a,
                                    std::vector<ParseError>& errors) {
  std::ifstream in(path);
  if (!in) {
    errors.push_back({path, 0, "cannot open file"});
    return std::nullopt;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  auto table = parse_states_text(buf.str(), path, errors);
  StateSet set;
  for (const auto& [name, row] : table) {
    std::string why;
    auto s = resolve_state(a, row, why);
    if (!s) {
      errors.push_back({path, 0, name + ": " + why});
      continue;
    }
    set.members.push_back(*s);
  }
  if (!errors.empty()) return std::nullopt;
  return set;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite q-effect algebra verification toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--cap", g.cap, "carrier / power size cap override");
  app.add_option("--grid", g.grid, "threshold verification grid exponent");
  app.add_option("--json", g.json_path, "write a machine-readable report to PATH");
  app.add_option("--seed", g.seed, "seed for sampled certification");

  // validate
  std::vector<std::string> validate_files;
  auto* c_validate = app.add_subcommand("validate", "check (E1)-(E4) and, when present, (Q1)-(Q5)");
  c_validate->add_option("files", validate_files)->required();

  // order
  std::string order_file;
  auto* c_order = app.add_subcommand("order", "print the induced order");
  c_order->add_option("file", order_file)->required();

  // classify
  std::string classify_file;
  auto* c_classify = app.add_subcommand("classify", "lattice / MV / linear classification");
  c_classify->add_option("file", classify_file)->required();

  // states
  std::string states_file, states_check;
  bool states_extreme = false, states_orderref = false;
  auto* c_states = app.add_subcommand("states", "q-state machinery");
  c_states->add_option("algebra", states_file)->required();
  c_states->add_flag("--extreme", states_extreme, "enumerate extreme q-states");
  c_states->add_option("--check", states_check, "classify the states in FILE");
  c_states->add_flag("--order-reflecting", states_orderref, "check order reflection of the set");

  // semistate-check
  std::string semi_alg, semi_states, semi_level = "strong";
  auto* c_semi = app.add_subcommand("semistate-check", "q-semi-state hierarchy checks");
  c_semi->add_option("--algebra", semi_alg)->required();
  c_semi->add_option("--states", semi_states)->required();
  c_semi->add_option("--level", semi_level, "q_semi | jauch_piron | strong");

  // galois-check
  std::string gal_src, gal_dst, gal_maps;
  bool gal_q = false;
  auto* c_gal = app.add_subcommand("galois-check", "three-way Galois connection check");
  c_gal->add_option("--source", gal_src)->required();
  c_gal->add_option("--target", gal_dst)->required();
  c_gal->add_option("--maps", gal_maps, "map file with f: and g:")->required();
  c_gal->add_flag("--q", gal_q, "also check (GQ1)/(GQ2)");

  // tense-check
  std::string tense_alg, tense_maps;
  auto* c_tense = app.add_subcommand("tense-check", "certify q-tense operators G, H");
  c_tense->add_option("--algebra", tense_alg)->required();
  c_tense->add_option("--maps", tense_maps, "map file with G: and H:")->required();

  // canonical
  std::string can_chain, can_frame;
  bool can_check_tense = false;
  auto* c_can = app.add_subcommand("canonical", "canonical connection / tense construction");
  c_can->add_option("--chain", can_chain, "linear algebra (bundled name or file)")->required();
  c_can->add_option("--frame", can_frame, "frame file")->required();
  c_can->add_flag("--check-tense", can_check_tense, "build and certify G*, H* on a time frame");

  // represent
  std::string rep_alg, rep_maps;
  auto* c_rep = app.add_subcommand("represent", "tense representation pipeline");
  c_rep->add_option("--algebra", rep_alg)->required();
  c_rep->add_option("--tense", rep_maps, "map file with G: and H:")->required();

  // examples
  std::string ex_write;
  auto* c_ex = app.add_subcommand("examples", "list or write the bundled corpus");
  c_ex->add_option("--write", ex_write, "write bundled algebras as .alg files into DIR");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;  // usage errors map to the stable exit contract
  }

  std::vector<ParseError> errors;
  auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
  };

  try {
    if (*c_validate) {
      for (const auto& f : validate_files) {
        if (f == "threshold") {
          // Self-verification of the threshold-term law on the dyadic grid
          // 2^-K selected by --grid.
          auto tr = verify_threshold(g.grid);
          VerificationReport rep;
          rep.subject = "threshold-term law at grid 2^-" + std::to_string(g.grid);
          rep.add("t_r(x)=1 iff r<=x on " + std::to_string(tr.checks) + " pairs", tr.pass,
                  tr.witness);
          rep.millis = elapsed();
          g.reports.push_back(rep);
          continue;
        }
        auto la = load_algebra(f, errors);
        if (!la) return parse_failed(errors);
        auto rep = validation_to_report(la->raw.name, la->effect_report,
                                        la->raw.has_q() ? &la->q_report : nullptr);
        rep.millis = elapsed();
        g.reports.push_back(rep);
      }
    } else if (*c_order) {
      auto la = load_algebra(order_file, errors);
      if (!la) return parse_failed(errors);
      VerificationReport rep;
      rep.subject = "order of " + la->raw.name;
      if (!la->base) {
        rep.inapplicable("algebra failed validation");
      } else {
        rep.add("derive_order", true);
        const auto& a = *la->base;
        std::vector<int> ord(a.n);
        std::iota(ord.begin(), ord.end(), 0);
        std::sort(ord.begin(), ord.end(),
                  [&](int x, int y) { return a.elements[x] < a.elements[y]; });
        for (int x : ord) {
          std::string row = a.elements[x] + " <=";
          for (int y : ord)
            if (a.le(x, y)) row += " " + a.elements[y];
          rep.witnesses.push_back(row);
        }
      }
      rep.millis = elapsed();
      g.reports.push_back(rep);
    } else if (*c_classify) {
      auto la = load_algebra(classify_file, errors);
      if (!la) return parse_failed(errors);
      VerificationReport rep;
      rep.subject = "classification of " + la->raw.name;
      if (!la->base) {
        rep.inapplicable("algebra failed validation");
      } else {
        auto c = classify(*la->base);
        rep.add("is_lattice", true, c.is_lattice ? "true" : "false");
        rep.add("is_mv", true, c.is_mv ? "true" : "false");
        rep.add("is_linear", true, c.is_linear ? "true" : "false");
        if (!c.is_lattice && c.no_join_witness.first >= 0)
          rep.witnesses.push_back("no join: (" + la->base->elements[c.no_join_witness.first] +
                                  ", " + la->base->elements[c.no_join_witness.second] + ")");
        g.extra["classify"] = {{"is_lattice", c.is_lattice},
                               {"is_mv", c.is_mv},
                               {"is_linear", c.is_linear}};
      }
      rep.millis = elapsed();
      g.reports.push_back(rep);
    } else if (*c_states) {
      auto la = load_algebra(states_file, errors);
      if (!la) return parse_failed(errors);
      if (!la->base || !la->q) {
        VerificationReport rep;
        rep.subject = "states on " + la->raw.name;
        rep.inapplicable(!la->base ? "algebra failed validation" : "algebra has no q/d maps");
        g.reports.push_back(rep);
        return g.finish();
      }
      StateSet set;
      VerificationReport rep;
      rep.subject = "states on " + la->raw.name;
      if (states_extreme) {
        ExtremeStateOptions opt;
        if (g.cap > 0) opt.carrier_cap = static_cast<int>(g.cap);
        auto ex = enumerate_extreme_q_states(*la->q, opt);
        if (ex.refused) {
          rep.inapplicable(ex.refusal);
          g.reports.push_back(rep);
          return g.finish();
        }
        set = ex.set;
        rep.add("extreme enumeration", true,
                std::to_string(set.members.size()) + " states, " +
                    std::to_string(ex.branches) + " branches");
        std::cout << serialize_states(la->base.value(), set);
      } else if (!states_check.empty()) {
        auto loaded = load_states(states_check, *la->base, errors);
        if (!loaded) return parse_failed(errors);
        set = *loaded;
        for (size_t i = 0; i < set.members.size(); ++i) {
          auto k = check_state(*la->q, set.members[i]);
          rep.add("s" + std::to_string(i) + " state", k.state == TriState::yes,
                  k.witnesses.empty() ? "" : k.witnesses.front());
          rep.add("s" + std::to_string(i) + " q-state", k.q_state == TriState::yes);
        }
      } else {
        rep.inapplicable("choose --extreme or --check FILE");
      }
      if (states_orderref && rep.verdict != Verdict::inapplicable) {
        auto orr = check_order_reflecting(*la->q, set);
        rep.add("order reflecting", orr.reflecting,
                orr.reflecting ? ""
                               : "witness (" + la->base->elements[orr.witness.first] + ", " +
                                     la->base->elements[orr.witness.second] + ")");
      }
      g.extra["states"] = states_to_json(*la->base, set);
      rep.millis = elapsed();
      g.reports.push_back(rep);
    } else if (*c_semi) {
      auto la = load_algebra(semi_alg, errors);
      if (!la) return parse_failed(errors);
      if (!la->base || !la->q) return parse_failed({{semi_alg, 0, "needs a valid q-algebra"}});
      auto set = load_states(semi_states, *la->base, errors);
      if (!set) return parse_failed(errors);
      if (semi_level != "q_semi" && semi_level != "jauch_piron" && semi_level != "strong")
        return parse_failed({{semi_level, 0, "unknown level (use q_semi, jauch_piron, strong)"}});
      SemiLevel lvl = semi_level == "q_semi"        ? SemiLevel::q_semi
                      : semi_level == "jauch_piron" ? SemiLevel::jauch_piron
                                                    : SemiLevel::strong;
      VerificationReport rep;
      rep.subject = "q-semi-state checks on " + la->raw.name;
      for (size_t i = 0; i < set->members.size(); ++i) {
        auto k = check_semi_state(*la->q, set->members[i], lvl);
        bool ok = k.q_semi == TriState::yes &&
                  (lvl != SemiLevel::jauch_piron || k.jauch_piron == TriState::yes) &&
                  (lvl != SemiLevel::strong || k.strong == TriState::yes);
        rep.add("s" + std::to_string(i) + " " + semi_level, ok,
                k.witnesses.empty() ? "" : k.witnesses.front());
      }
      rep.millis = elapsed();
      g.reports.push_back(rep);
    } else if (*c_gal) {
      auto lsrc = load_algebra(gal_src, errors), ldst = load_algebra(gal_dst, errors);
      if (!lsrc || !ldst) return parse_failed(errors);
      auto maps = load_maps(gal_maps, errors);
      if (!maps || !lsrc->base || !ldst->base) return parse_failed(errors);
      if (!maps->count("f") || !maps->count("g"))
        return parse_failed({{gal_maps, 0, "need maps named f and g"}});
      std::string why;
      auto f = resolve_map(*lsrc->base, *ldst->base, maps->at("f"), why);
      if (!f) return parse_failed({{gal_maps, 0, "f: " + why}});
      auto gg = resolve_map(*ldst->base, *lsrc->base, maps->at("g"), why);
      if (!gg) return parse_failed({{gal_maps, 0, "g: " + why}});
      GaloisPair p{lsrc->base->poset(), ldst->base->poset(), *f, *gg,
                   TriState::unchecked, TriState::unchecked};
      auto con = check_galois_connection(p);
      VerificationReport rep;
      rep.subject = "Galois check " + lsrc->raw.name + " -> " + ldst->raw.name;
      rep.add("(1) adjunction", con.adjunction, con.witness);
      rep.add("(2) monotone unit/counit", con.unit_counit);
      rep.add("(3) sup/inf description", con.sup_inf);
      rep.add("three verdicts agree", con.agree);
      if (gal_q) {
        if (lsrc->q && ldst->q) {
          auto qc = check_galois_q_connection(*lsrc->q, *ldst->q, p);
          rep.add("(GQ1)", qc.gq1, qc.witness);
          rep.add("(GQ2)", qc.gq2, qc.witness);
        } else {
          rep.inapplicable("both algebras need q/d maps for --q");
        }
      }
      if (!con.pass() && rep.verdict == Verdict::certified) rep.verdict = Verdict::violated;
      rep.millis = elapsed();
      g.reports.push_back(rep);
    } else if (*c_tense) {
      auto la = load_algebra(tense_alg, errors);
      if (!la) return parse_failed(errors);
      auto maps = load_maps(tense_maps, errors);
      if (!maps || !la->base || !la->q) return parse_failed(errors);
      if (!maps->count("G") || !maps->count("H"))
        return parse_failed({{tense_maps, 0, "need maps named G and H"}});
      std::string why;
      auto G = resolve_map(*la->base, *la->base, maps->at("G"), why);
      auto H = resolve_map(*la->base, *la->base, maps->at("H"), why);
      if (!G || !H) return parse_failed({{tense_maps, 0, why}});
      auto ts = check_tense_operators(*la->q, *G, *H);
      ts.report.millis = elapsed();
      g.reports.push_back(ts.report);
    } else if (*c_can) {
      auto la = load_algebra(can_chain, errors);
      if (!la) return parse_failed(errors);
      auto fr = load_frame(can_frame, errors);
      if (!fr || !la->q) return parse_failed(errors);
      CanonicalOptions opt;
      opt.seed = g.seed;
      if (g.cap > 0) {
        opt.exhaustive_cap = g.cap;
        opt.power.element_cap = g.cap;
      }
      if (can_check_tense) {
        auto ct = canonical_tense(*la->q, *fr, opt);
        ct.report.millis = elapsed();
        g.extra["frame"] = frame_to_json(*fr);
        g.reports.push_back(ct.report);
      } else {
        auto cc = canonical_connection(*la->q, *fr, opt);
        cc.report.millis = elapsed();
        g.extra["frame"] = frame_to_json(*fr);
        g.reports.push_back(cc.report);
      }
    } else if (*c_rep) {
      auto la = load_algebra(rep_alg, errors);
      if (!la) return parse_failed(errors);
      auto maps = load_maps(rep_maps, errors);
      if (!maps || !la->base || !la->q) return parse_failed(errors);
      if (!maps->count("G") || !maps->count("H"))
        return parse_failed({{rep_maps, 0, "need maps named G and H"}});
      std::string why;
      auto G = resolve_map(*la->base, *la->base, maps->at("G"), why);
      auto H = resolve_map(*la->base, *la->base, maps->at("H"), why);
      if (!G || !H) return parse_failed({{rep_maps, 0, why}});
      ExtremeStateOptions opt;
      if (g.cap > 0) opt.carrier_cap = static_cast<int>(g.cap);
      auto rr = verify_tense_representation(*la->q, *G, *H, opt);
      rr.report.millis = elapsed();
      g.extra["relation"] = frame_to_json(rr.relation);
      g.extra["states"] = states_to_json(la->base.value(), rr.states);
      nlohmann::json res = nlohmann::json::array();
      for (const auto& r : rr.residuals) res.push_back(r);
      g.extra["residuals"] = res;
      g.reports.push_back(rr.report);
    } else if (*c_ex) {
      VerificationReport rep;
      rep.subject = "bundled examples";
      for (const auto& ex : bundled_examples()) {
        rep.add(ex.name, true, ex.description);
        if (!ex_write.empty()) {
          std::filesystem::create_directories(ex_write);
          std::ofstream f(ex_write + "/" + ex.name + ".alg");
          f << serialize_algebra(ex.raw);
        }
      }
      rep.millis = elapsed();
      g.reports.push_back(rep);
    }
  } catch (const PowerCapExceeded& e) {
    VerificationReport rep;
    rep.subject = "refused";
    rep.inapplicable(e.what());
    g.reports.push_back(rep);
  } catch (const InvalidAlgebra& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    VerificationReport rep;
    rep.subject = "inapplicable";
    rep.inapplicable(e.what());
    g.reports.push_back(rep);
  }
  return g.finish();
}
