#pragma once

// latlab command-line front end. Exit codes: 0 success, 1 internal invariant
// failure (a bug), 2 invalid input.

#include "latlab/json_io.hpp"
#include "latlab/latlab.hpp"

#include "CLI11.hpp"

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace latlab::cli {

using io::json;

// "0,1,-2" -> {0, 1, -2}
inline IntVector parse_vector(const std::string& text, const std::string& flag) {
  IntVector v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t b = item.find_first_not_of(" \t");
    std::size_t e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw schema_error(flag + ": empty entry in '" + text + "'");
    item = item.substr(b, e - b + 1);
    std::size_t start = item[0] == '-' || item[0] == '+' ? 1 : 0;
    bool ok = item.size() > start;
    for (std::size_t i = start; i < item.size(); ++i) ok = ok && std::isdigit(static_cast<unsigned char>(item[i]));
    if (!ok) throw schema_error(flag + ": '" + item + "' is not an integer");
    v.emplace_back(item[0] == '+' ? item.substr(1) : item);
  }
  if (v.empty()) throw schema_error(flag + ": empty vector");
  return v;
}

inline json read_json_file(const std::string& path) {
  std::string text;
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream in(path);
    if (!in) throw schema_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  return io::parse_text(text, path);
}

inline void emit(std::ostream& out, const json& report, const std::string& format) {
  if (format == "md")
    out << io::to_markdown(report);
  else
    out << report.dump() << '\n';
}

inline k3::K3Config k3_config(const std::string& genus, const std::string& ns_file) {
  if (!genus.empty() && !ns_file.empty()) throw schema_error("--genus and --ns are mutually exclusive");
  if (!ns_file.empty()) return k3::K3Config::general(io::lattice_from_json(read_json_file(ns_file)).gram());
  if (genus.empty()) throw schema_error("one of --genus or --ns is required");
  return k3::K3Config::picard_rank_one(parse_vector(genus, "--genus").at(0));
}

inline k3::MukaiVector mukai(const k3::K3Config& cfg, const std::string& text, const std::string& flag) {
  const IntVector x = parse_vector(text, flag);
  if (x.size() != cfg.ns_rank() + 2)
    throw shape_error(flag + ": expected " + std::to_string(cfg.ns_rank() + 2) + " coordinates (r, c, s), got " +
                      std::to_string(x.size()));
  return k3::MukaiVector::from_coords(x);
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"latlab: exact lattice, gluing and K3 moduli invariants", "latlab"};
  app.require_subcommand(1, 1);

  std::string format = "json";
  std::string in_file, vector_text, genus, ns_file, mukai_text, v_text, u_text, family = "general";
  std::int64_t g_min = 2, g_max = 2;
  std::uint64_t seed = 1;
  std::size_t trials = 500, max_rank = 4;
  int max_entry = 6;
  bool no_effective = false;

  const auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "md"}));
  };

  auto* disc = app.add_subcommand("lattice-disc", "Discriminant group of a lattice");
  disc->add_option("--in", in_file, "Lattice JSON file ('-' for stdin)")->required();
  add_format(disc);

  auto* div = app.add_subcommand("lattice-div", "Divisibility of a vector");
  div->add_option("--in", in_file, "Lattice JSON file")->required();
  div->add_option("--vector", vector_text, "Comma-separated coordinates")->required();
  add_format(div);

  auto* ortho = app.add_subcommand("lattice-ortho", "Orthogonal complement of a sublattice");
  ortho->add_option("--in", in_file, "Sublattice JSON file")->required();
  add_format(ortho);

  auto* glue = app.add_subcommand("glue", "Gluing group of a primitive sublattice and its complement");
  glue->add_option("--in", in_file, "Sublattice JSON file")->required();
  add_format(glue);

  auto* moduli = app.add_subcommand("k3-moduli", "Invariants of a moduli space M(v) of sheaves on a K3");
  moduli->add_option("--genus", genus, "Genus g of a Picard-rank-one K3 (H^2 = 2g-2)");
  moduli->add_option("--ns", ns_file, "Neron-Severi lattice JSON file");
  moduli->add_option("--mukai", mukai_text, "Mukai vector r,c...,s")->required();
  moduli->add_flag("--no-effective-check", no_effective, "Skip the effectiveness predicate");
  add_format(moduli);

  auto* compare = app.add_subcommand("k3-compare", "L-equivalence obstruction for M(v) and M(u)");
  compare->add_option("--genus", genus, "Genus g of a Picard-rank-one K3");
  compare->add_option("--ns", ns_file, "Neron-Severi lattice JSON file");
  compare->add_option("--v", v_text, "Mukai vector v")->required();
  compare->add_option("--u", u_text, "Mukai vector u")->required();
  compare->add_flag("--no-effective-check", no_effective, "Skip the effectiveness predicate");
  add_format(compare);

  auto* counter = app.add_subcommand("k3-counterexample", "Pic^0 vs Pic^{g-1} table over a genus range");
  counter->add_option("--g-min", g_min, "Smallest genus")->required();
  counter->add_option("--g-max", g_max, "Largest genus")->required();
  add_format(counter);

  auto* verify = app.add_subcommand("oracle-verify", "Seeded fuzz campaign: gluing path against brute force");
  verify->add_option("--seed", seed, "Seed (overridden by LATLAB_SEED)");
  verify->add_option("--trials", trials, "Number of instances");
  verify->add_option("--max-rank", max_rank, "Maximal ambient rank (<= 5)");
  verify->add_option("--max-entry", max_entry, "Maximal |Gram entry| (<= 8)");
  verify->add_option("--family", family, "Instance family")->check(CLI::IsMember({"general", "unimodular"}));
  add_format(verify);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (disc->parsed()) {
      emit(out, io::discriminant_report(io::lattice_from_json(read_json_file(in_file))), format);
    } else if (div->parsed()) {
      const Lattice l = io::lattice_from_json(read_json_file(in_file));
      json j = json::object();
      j["div"] = io::to_json(divisibility(l, parse_vector(vector_text, "--vector")));
      emit(out, j, format);
    } else if (ortho->parsed()) {
      emit(out, io::complement_report(io::sublattice_from_json(read_json_file(in_file))), format);
    } else if (glue->parsed()) {
      const Sublattice n = io::sublattice_from_json(read_json_file(in_file));
      emit(out, io::gluing_report(gluing_group(n.ambient(), n)), format);
    } else if (moduli->parsed()) {
      const auto cfg = k3_config(genus, ns_file);
      const auto v = mukai(cfg, mukai_text, "--mukai");
      emit(out, io::moduli_report(k3::moduli_invariants(cfg, v, {!no_effective})), format);
    } else if (compare->parsed()) {
      const auto cfg = k3_config(genus, ns_file);
      const auto v = mukai(cfg, v_text, "--v");
      const auto u = mukai(cfg, u_text, "--u");
      emit(out, io::comparison_report(v, u, k3::l_equivalence_obstruction(cfg, v, u, {!no_effective})), format);
    } else if (counter->parsed()) {
      json rows = json::array();
      for (const auto& r : k3::counterexample_report(g_min, g_max)) rows.push_back(io::counterexample_row_json(r));
      emit(out, rows, format);
    } else if (verify->parsed()) {
      oracle::FuzzConfig cfg{seed, trials, max_rank, max_entry};
      if (const char* env = std::getenv("LATLAB_SEED")) {
        const IntVector s = parse_vector(env, "LATLAB_SEED");
        if (s.size() != 1 || s[0] < 0) throw schema_error("LATLAB_SEED must be a nonnegative integer");
        cfg.seed = static_cast<std::uint64_t>(s[0]);
      }
      const auto report =
          oracle::run_fuzz(cfg, family == "unimodular" ? oracle::Family::unimodular : oracle::Family::general);
      emit(out, io::fuzz_report(cfg, report), format);
      if (!report.passed()) {
        err << "oracle-verify: " << report.failures.size() << " failing checks\n";
        return 1;
      }
    }
  } catch (const invariant_violation& e) {
    err << "internal error (invariant violated): " << e.what() << '\n';
    return 1;
  } catch (const error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace latlab::cli
