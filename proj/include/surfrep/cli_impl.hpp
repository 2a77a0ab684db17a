#pragma once

// Subcommand front-end.  Every run emits a RunReport: the command echo,
// input digests, a three-valued verdict where searches have caps, and
// machine-checkable certificates for every "yes".
// Exit codes: 0 yes/success, 1 no, 2 inconclusive, 3 input error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "surfrep/json_io.hpp"

namespace surfrep::cli {

namespace detail {

using nlohmann::json;

struct Run {
  json report;
  std::vector<std::pair<std::string, std::string>> inputs;  // path, digest
  std::string out_path;

  void record_input(const std::string& path, const std::string& content) {
    inputs.emplace_back(path, io::fnv1a64(content));
  }

  json load(const std::string& path) {
    const std::string text = io::read_file(path);
    record_input(path, text);
    return io::parse_json(text, path);
  }

  int finish(std::ostream& out, const std::string& command, const std::string& verdict) {
    report["command"] = command;
    json in = json::array();
    for (const auto& [path, digest] : inputs) in.push_back(json{{"path", path}, {"digest", digest}});
    report["inputs"] = in;
    report["verdict"] = verdict;
    const std::string text = report.dump(2) + "\n";
    if (!out_path.empty()) {
      std::ofstream f(out_path, std::ios::binary);
      if (!f) throw input_error("cannot write '" + out_path + "'");
      f << text;
    } else {
      out << text;
    }
    if (verdict == "yes" || verdict == "ok") return 0;
    if (verdict == "no") return 1;
    return 2;
  }
};

// a shipped set name or a path to a generator-set file
inline GeneratorSet resolve_genset(Run& run, const std::string& arg) {
  for (auto [g, n] : shipped_genset_keys()) {
    if (arg == "g" + std::to_string(g) + "n" + std::to_string(n)) {
      GeneratorSet S = shipped_genset(g, n);
      S.validate();
      return S;
    }
  }
  return io::genset_from_json(run.load(arg));
}

inline MappingClass load_class_for(Run& run, const std::string& path, const Presentation& pres) {
  return io::mapping_class_from_json(run.load(path), pres);
}

inline int cmd_validate_genset(std::ostream& out, const std::string& cmd, const std::string& genset,
                               const std::string& out_path) {
  Run run;
  run.out_path = out_path;
  std::string verdict = "yes";
  try {
    const GeneratorSet S = resolve_genset(run, genset);
    json classes = json::array();
    for (const MappingClass& f : S.classes) {
      classes.push_back(json{{"label", f.label()},
                             {"pure", f.pure()},
                             {"twist", f.twist().has_value()},
                             {"status", "ok"}});
    }
    run.report["outcome"] = json{{"name", S.name},
                                 {"presentation", io::presentation_to_json(S.pres)},
                                 {"class_count", S.classes.size()},
                                 {"classes", classes},
                                 {"provenance", S.provenance}};
    run.report["certificates"] =
        json{{"checks", "inverse identities in pi, relator conjugacy, purity, symplectic "
                        "homology action, transvection form, inverse closure"}};
  } catch (const input_error& e) {
    // distinguish unreadable inputs from readable-but-invalid sets
    const std::string what = e.what();
    if (what.find("validation") == std::string::npos) throw;
    run.report["outcome"] = json{{"error", what}};
    verdict = "no";
  }
  return run.finish(out, cmd, verdict);
}

inline int cmd_act(std::ostream& out, const std::string& cmd, const std::string& class_path,
                   const std::string& rep_path, const std::string& out_path) {
  Run run;
  run.out_path = out_path;
  const Representation phi = io::representation_from_json(run.load(rep_path));
  const MappingClass f = load_class_for(run, class_path, phi.presentation());
  const Representation moved = act(f, phi);
  run.report["outcome"] = json{{"representation", io::representation_to_json(moved)},
                               {"class", f.label()}};
  return run.finish(out, cmd, "yes");
}

inline int cmd_conjugate(std::ostream& out, const std::string& cmd, const std::string& rep_path,
                         const std::string& rep2_path, unsigned long long cap,
                         const std::string& out_path) {
  Run run;
  run.out_path = out_path;
  const Representation phi = io::representation_from_json(run.load(rep_path));
  const Representation psi = io::representation_from_json(run.load(rep2_path));
  SolveOptions opts;
  opts.span_cap = cap;
  const WitnessResult w = conjugate_witness(phi, psi, opts);
  if (w.found()) {
    run.report["outcome"] = json{{"conjugate", true}};
    run.report["certificates"] = json{{"conjugator", io::matrix_to_json(*w.witness)}};
    return run.finish(out, cmd, "yes");
  }
  if (w.status == WitnessResult::Status::none) {
    run.report["outcome"] = json{{"conjugate", false}};
    return run.finish(out, cmd, "no");
  }
  run.report["outcome"] = json{{"conjugate", "unknown"}};
  run.report["caps"] = json{{"invertible_in_span", w.cap_fired}};
  return run.finish(out, cmd, "inconclusive");
}

inline int cmd_fixed_point(std::ostream& out, const std::string& cmd, const std::string& rep_path,
                           const std::string& genset, unsigned long long cap,
                           const std::string& out_path) {
  Run run;
  run.out_path = out_path;
  const Representation phi = io::representation_from_json(run.load(rep_path));
  const GeneratorSet S = resolve_genset(run, genset);
  SolveOptions opts;
  opts.span_cap = cap;
  const FixedPointResult res = is_global_fixed_point(phi, S, opts);
  run.report["outcome"] = json{{"genset", S.name}, {"detail", res.detail}};
  switch (res.verdict) {
    case FixedPointResult::Verdict::yes: {
      json w = json::object();
      for (const auto& [label, m] : res.witnesses) w[label] = io::matrix_to_json(m);
      run.report["certificates"] = json{{"stabilizer_witnesses", w}};
      return run.finish(out, cmd, "yes");
    }
    case FixedPointResult::Verdict::no:
      return run.finish(out, cmd, "no");
    case FixedPointResult::Verdict::inconclusive:
      run.report["caps"] = json{{"note", res.detail}};
      return run.finish(out, cmd, "inconclusive");
  }
  return 3;
}

inline int cmd_build_rho(std::ostream& out, const std::string& cmd, const std::string& rep_path,
                         const std::string& class_path, const std::string& push_word, int gamma_depth,
                         unsigned long long cap, const std::string& out_path) {
  Run run;
  run.out_path = out_path;
  const Representation phi = io::representation_from_json(run.load(rep_path));
  if (class_path.empty() == push_word.empty()) {
    throw input_error("build-rho needs exactly one of --class or --push");
  }
  const MappingClass f = class_path.empty()
                             ? point_push(phi.presentation(), Word::parse(phi.presentation().alphabet, push_word))
                             : load_class_for(run, class_path, phi.presentation());
  SolveOptions opts;
  opts.span_cap = cap;
  const AlgebraBasis basis = span_w_phi(phi);
  const BuildRho built = build_rho(phi, basis, f, opts);
  if (built.status == BuildRho::Status::not_in_stabilizer) {
    run.report["outcome"] = json{{"in_stabilizer", false}, {"class", f.label()}};
    return run.finish(out, cmd, "no");
  }
  if (built.status == BuildRho::Status::inconclusive) {
    run.report["outcome"] = json{{"in_stabilizer", "unknown"}, {"class", f.label()}};
    run.report["caps"] = json{{"invertible_in_span", built.cap_fired}};
    return run.finish(out, cmd, "inconclusive");
  }
  const RhoMatrix& rho = *built.rho;

  // exhaustive C-1 sweep over words up to the configured depth
  unsigned long long samples = 0;
  bool c1_ok = true;
  for (const Word& gamma : surfrep::detail::words_up_to(phi.presentation().alphabet, gamma_depth)) {
    ++samples;
    if (!rho_c1_holds(phi, basis, rho, f, gamma)) {
      c1_ok = false;
      break;
    }
  }
  const auto iv = reducibility_witness(basis);
  const bool reducible_ok = surfrep::detail::matvec(rho.matrix, iv) == iv;
  const bool kernel_value = kernel_test(phi, f, opts);

  run.report["outcome"] = json{{"class", f.label()},
                               {"basis_dim", rho.dim},
                               {"matrix", io::matrix_to_json(rho.matrix)},
                               {"conjugator", io::matrix_to_json(rho.conjugator)},
                               {"checks", json{{"c1_samples", samples},
                                               {"c1_ok", c1_ok},
                                               {"c1_depth", gamma_depth},
                                               {"reducible", reducible_ok},
                                               {"kernel_rho_trivial", kernel_value}}}};
  run.report["certificates"] = json{{"conjugator", io::matrix_to_json(rho.conjugator)}};
  return run.finish(out, cmd, c1_ok && reducible_ok ? "yes" : "no");
}

inline int cmd_coinvariants(std::ostream& out, const std::string& cmd, const std::string& genset,
                            const std::vector<long long>& character_fields, const std::string& out_path) {
  Run run;
  run.out_path = out_path;
  const GeneratorSet S = resolve_genset(run, genset);
  const CoinvariantReport rep = coinvariants(S);
  json outcome{{"genset", S.name}, {"coinvariants", io::coinvariants_to_json(rep)}};
  if (!character_fields.empty()) {
    json chars = json::array();
    for (long long q : character_fields) chars.push_back(io::characters_to_json(character_fixed_points(S, q)));
    outcome["characters"] = chars;
  }
  outcome["summary"] = rep.is_zero ? "coinvariants = 0" : "coinvariants != 0";
  run.report["outcome"] = outcome;
  run.report["certificates"] = json{{"smith_diagonal", io::coinvariants_to_json(rep)["smith_diagonal"]}};
  return run.finish(out, cmd, rep.is_zero ? "yes" : "no");
}

inline int cmd_enumerate(std::ostream& out, const std::string& cmd, const SearchSpec& spec,
                         const std::string& genset, const std::string& out_path) {
  Run run;
  run.out_path = out_path;
  const GeneratorSet S = resolve_genset(run, genset);
  try {
    const Atlas atlas = fixed_point_atlas(spec, S);
    run.report["outcome"] = json{{"atlas", io::atlas_to_json(atlas)}};
    return run.finish(out, cmd, "yes");
  } catch (const unsupported_error& e) {
    run.report["outcome"] = json{{"error", e.what()}};
    run.report["caps"] = json{{"max_tuples", spec.max_tuples}};
    return run.finish(out, cmd, "inconclusive");
  }
}

inline int cmd_seed_data(std::ostream& out, const std::string& cmd, const std::string& dump_dir,
                         const std::string& out_path) {
  Run run;
  run.out_path = out_path;
  json sets = json::array();
  for (auto [g, n] : shipped_genset_keys()) {
    const GeneratorSet S = shipped_genset(g, n);
    sets.push_back(json{{"name", S.name},
                        {"g", g},
                        {"n", n},
                        {"class_count", S.classes.size()},
                        {"provenance", S.provenance}});
    if (!dump_dir.empty()) {
      std::filesystem::create_directories(dump_dir);
      const std::string path = dump_dir + "/" + S.name + ".json";
      std::ofstream f(path, std::ios::binary);
      if (!f) throw input_error("cannot write '" + path + "'");
      f << io::genset_to_json(S).dump(2) << "\n";
    }
  }
  run.report["outcome"] = json{{"shipped_gensets", sets}};
  if (!dump_dir.empty()) run.report["outcome"]["dumped_to"] = dump_dir;
  return run.finish(out, cmd, "yes");
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact-arithmetic engine for surface group representations and mapping class actions"};
  app.require_subcommand(0, 1);

  bool list_seed_data = false;
  app.add_flag("--seed-data", list_seed_data, "list the shipped generator sets and exit");

  std::string genset, rep_path, rep2_path, class_path, push_word, out_path, dump_dir;
  unsigned long long cap = kDefaultSpanCap;
  int gamma_depth = 6;

  auto* validate = app.add_subcommand("validate-genset", "run all validation checks on a generator set");
  validate->add_option("--genset", genset, "shipped set name (e.g. g2n0) or path to a JSON file")->required();
  validate->add_option("--out", out_path, "write the report to this path");

  auto* act_cmd = app.add_subcommand("act", "apply a mapping class to a representation");
  act_cmd->add_option("--class", class_path, "mapping class JSON file")->required();
  act_cmd->add_option("--rep", rep_path, "representation JSON file")->required();
  act_cmd->add_option("--out", out_path, "write the report to this path");

  auto* conj = app.add_subcommand("conjugate", "decide simultaneous conjugacy of two representations");
  conj->add_option("--rep", rep_path, "first representation")->required();
  conj->add_option("--rep2", rep2_path, "second representation")->required();
  conj->add_option("--cap", cap, "invertible-combination search cap");
  conj->add_option("--out", out_path, "write the report to this path");

  auto* fixed = app.add_subcommand("fixed-point", "is [rep] a global fixed point of the set action?");
  fixed->add_option("--rep", rep_path, "representation JSON file")->required();
  fixed->add_option("--genset", genset, "shipped set name or JSON file")->required();
  fixed->add_option("--cap", cap, "conjugator search cap");
  fixed->add_option("--out", out_path, "write the report to this path");

  auto* rho = app.add_subcommand("build-rho", "build the stabilizer action on the image span");
  rho->add_option("--rep", rep_path, "representation JSON file")->required();
  rho->add_option("--class", class_path, "mapping class JSON file");
  rho->add_option("--push", push_word, "use the point-push of this word instead of --class");
  rho->add_option("--gamma-depth", gamma_depth, "exhaustive C-1 sample depth (default 6)");
  rho->add_option("--cap", cap, "conjugator search cap");
  rho->add_option("--out", out_path, "write the report to this path");

  auto* coin = app.add_subcommand("coinvariants", "H_1 coinvariants of a generator set");
  coin->add_option("--genset", genset, "shipped set name or JSON file")->required();
  std::vector<long long> character_fields;
  coin->add_option("--characters", character_fields, "also list fixed characters over GF(q) for these primes");
  coin->add_option("--out", out_path, "write the report to this path");

  SearchSpec spec;
  std::string mode = "class";
  auto* enumerate_cmd = app.add_subcommand("enumerate", "finite-field fixed-class atlas");
  enumerate_cmd->add_option("--g", spec.g, "genus")->required();
  enumerate_cmd->add_option("--n", spec.n, "punctures")->required();
  enumerate_cmd->add_option("--r", spec.r, "matrix dimension")->required();
  enumerate_cmd->add_option("--p", spec.p, "prime field size")->required();
  enumerate_cmd->add_option("--genset", genset, "shipped set name or JSON file")->required();
  enumerate_cmd->add_option("--mode", mode, "class (conjugacy classes) or hom (points)");
  enumerate_cmd->add_option("--max-tuples", spec.max_tuples, "launch cap on the tuple space");
  enumerate_cmd->add_option("--threads", spec.threads, "worker threads (output is thread-count independent)");
  enumerate_cmd->add_option("--out", out_path, "write the report to this path");

  auto* seed = app.add_subcommand("seed-data", "list (and optionally dump) the shipped generator sets");
  seed->add_option("--dump", dump_dir, "write each shipped set to this directory");
  seed->add_option("--out", out_path, "write the report to this path");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 3;
  }

  std::string cmd = "surfrep";
  for (const std::string& a : args) cmd += " " + a;

  try {
    if (list_seed_data && app.get_subcommands().empty()) {
      return detail::cmd_seed_data(out, cmd, "", out_path);
    }
    if (validate->parsed()) return detail::cmd_validate_genset(out, cmd, genset, out_path);
    if (act_cmd->parsed()) return detail::cmd_act(out, cmd, class_path, rep_path, out_path);
    if (conj->parsed()) return detail::cmd_conjugate(out, cmd, rep_path, rep2_path, cap, out_path);
    if (fixed->parsed()) return detail::cmd_fixed_point(out, cmd, rep_path, genset, cap, out_path);
    if (rho->parsed()) {
      return detail::cmd_build_rho(out, cmd, rep_path, class_path, push_word, gamma_depth, cap, out_path);
    }
    if (coin->parsed()) return detail::cmd_coinvariants(out, cmd, genset, character_fields, out_path);
    if (enumerate_cmd->parsed()) {
      if (mode == "class" || mode == "cls") {
        spec.mode = SearchSpec::Mode::cls;
      } else if (mode == "hom") {
        spec.mode = SearchSpec::Mode::hom;
      } else {
        throw input_error("unknown mode '" + mode + "' (expected class or hom)");
      }
      return detail::cmd_enumerate(out, cmd, spec, genset, out_path);
    }
    if (seed->parsed()) return detail::cmd_seed_data(out, cmd, dump_dir, out_path);
    err << app.help();
    return 3;
  } catch (const input_error& e) {
    err << "input error: " << e.what() << "\n";
    return 3;
  } catch (const unsupported_error& e) {
    err << "unsupported: " << e.what() << "\n";
    return 3;
  } catch (const validation_error& e) {
    err << "validation error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace surfrep::cli
