/* Copyright 2026 The cbnorm Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <optional>

#include <CLI11.hpp>

#include "cbnorm/bounds.hpp"
#include "cbnorm/constructions.hpp"
#include "cbnorm/error.hpp"
#include "cbnorm/norms.hpp"
#include "cbnorm/search.hpp"
#include "cbnorm/serialization.hpp"
#include "verify.hpp"

namespace cbnorm::cli {

namespace {

struct EngineFlags {
  int restarts = 32;
  int max_iter = 500;
  double tol = 1e-12;
  std::uint64_t seed = 0;
  int threads = 0;

  EngineOptions options() const {
    EngineOptions o;
    o.restarts = restarts;
    o.max_iter = max_iter;
    o.tol = tol;
    o.seed = seed;
    o.threads = threads;
    return o;
  }
};

void add_engine_flags(CLI::App* app, EngineFlags& f, bool with_restarts = true) {
  if (with_restarts) {
    app->add_option("--restarts", f.restarts, "Random restarts per norm")
        ->check(CLI::NonNegativeNumber);
  }
  app->add_option("--max-iter", f.max_iter, "Ascent steps per start")
      ->check(CLI::PositiveNumber);
  app->add_option("--engine-tol", f.tol, "Relative gain that stops an ascent")
      ->check(CLI::PositiveNumber);
  app->add_option("--seed", f.seed, "RNG seed");
  app->add_option("--threads", f.threads, "Worker threads (default CBNORM_THREADS or 1)")
      ->check(CLI::NonNegativeNumber);
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

Extent parse_extent(const std::string& s, const char* flag) {
  if (s == "inf") return Extent::infinite();
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || v < 1) {
    throw DomainError(std::string(flag) + " must be a positive integer or inf");
  }
  return v;
}

// --- verify ---------------------------------------------------------------

struct VerifyArgs {
  std::string selector = "all";
  int seeds = 100;
  double tol = 1e-6;
  std::string map_path;
  int refine_restarts = 256;
  EngineFlags engine;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  VerifyOptions o;
  o.tol = a.tol;
  o.seeds = a.seeds;
  o.engine = a.engine.options();
  o.refine_restarts = a.refine_restarts;
  if (!a.map_path.empty()) o.map_override = load_map(a.map_path);
  const auto cases = run_verify(a.selector, o);
  print_cases(cases, out);
  const bool ok = std::all_of(cases.begin(), cases.end(),
                              [](const VerifyCase& c) { return c.passed(); });
  return ok ? kExitOk : kExitVerifyFailed;
}

// --- norm -----------------------------------------------------------------

struct NormArgs {
  std::string map_path;
  std::string output;
  std::string check_path;
  EngineFlags engine;
};

int check_witness_file(const RightModuleMap& t, const std::string& path,
                       std::ostream& out) {
  const Json j = read_json_file(path);
  bool ok = true;
  for (const char* which : {"op", "cb"}) {
    const std::string wkey = std::string(which) + "_witness";
    const std::string lkey = std::string(which) + "_lower";
    if (!j.contains(wkey) || !j.contains(lkey) || !j.at(lkey).is_number()) {
      throw SchemaError(path + ": missing " + wkey + " or " + lkey);
    }
    const Witness w = witness_from_json(j.at(wkey));
    if (w.x.cols() != t.cols() ||
        w.x.rows() != static_cast<Eigen::Index>(w.k) * t.rows()) {
      throw SchemaError(path + ": " + wkey + " does not fit the map");
    }
    const double claimed = j.at(lkey).get<double>();
    const double norm = op_norm_matrix(w.x);
    const double value = evaluate_witness(t, w);
    const bool pass = norm <= 1.0 + 1e-12 &&
                      std::abs(value - claimed) <= 1e-9 * std::max(1.0, claimed);
    out << which << " witness: claimed " << format_double(claimed)
        << " recomputed " << format_double(value) << " norm "
        << format_double(norm) << (pass ? " OK" : " MISMATCH") << '\n';
    ok = ok && pass;
  }
  return ok ? kExitOk : kExitVerifyFailed;
}

int cmd_norm(const NormArgs& a, std::ostream& out) {
  const RightModuleMap t = load_map(a.map_path);
  if (!a.check_path.empty()) return check_witness_file(t, a.check_path, out);
  const NormReport r = norm_report(t, a.engine.options());
  emit(dump_json(report_to_json(r), 2) + "\n", a.output, out);
  return kExitOk;
}

// --- bounds ---------------------------------------------------------------

struct BoundsArgs {
  std::string m;
  std::string n;
  std::vector<int> table;
  std::string format = "csv";
};

int cmd_bounds(const BoundsArgs& a, std::ostream& out) {
  std::vector<CBounds> rows;
  if (!a.table.empty()) {
    if (!a.m.empty() || !a.n.empty()) {
      throw DomainError("use either --m/--n or --table");
    }
    if (a.table[0] < 1 || a.table[1] < 1) {
      throw DomainError("--table dimensions must be >= 1");
    }
    rows = c_bounds_table(a.table[0], a.table[1]);
  } else {
    if (a.m.empty() || a.n.empty()) throw DomainError("--m and --n are required");
    rows.push_back(c_bounds(parse_extent(a.m, "--m"), parse_extent(a.n, "--n")));
  }
  if (a.format == "csv") {
    out << bounds_csv(rows);
  } else {
    Json j = Json::array();
    for (const CBounds& b : rows) j.push_back(bounds_to_json(b));
    out << dump_json(a.table.empty() ? j[0] : j, 2) << '\n';
  }
  return kExitOk;
}

// --- search ---------------------------------------------------------------

struct SearchArgs {
  std::string map_class;
  int m = 0;
  int n = 0;
  int iters = 1000;
  std::optional<int> restarts;
  std::string resume;
  std::string output;
  std::uint64_t cap = kDefaultEnumerationCap;
  EngineFlags engine;
};

int cmd_search(const SearchArgs& a, std::ostream& out) {
  const MapClass cls = parse_class(a.map_class);
  SearchOptions so;
  so.cap = a.cap;
  so.engine = a.engine.options();
  if (cls == MapClass::kPerm && a.restarts) so.engine.restarts = *a.restarts;
  if (!a.resume.empty()) {
    so.previous = read_records(a.resume);
    for (const SearchRecord& r : so.previous) {
      if (r.map_class != cls || r.m != a.m || r.n != a.n) {
        throw DomainError(a.resume + ": records belong to a different search");
      }
    }
  }
  const std::string sink = !a.output.empty() ? a.output : a.resume;
  if (!sink.empty()) {
    so.on_record = [&](const SearchRecord& r) { append_record(sink, r); };
  }
  const SearchResult res =
      cls == MapClass::kPerm
          ? search_perm(a.m, a.n, so)
          : search_unitary(a.m, a.n, a.iters, a.restarts.value_or(8),
                           a.engine.seed, so);
  out << "shards " << res.records.size() << " (computed " << res.computed
      << ", resumed " << res.records.size() - res.computed << ")\n";
  if (!res.best) {
    out << "no records\n";
    return kExitOk;
  }
  const SearchRecord& best = *res.best;
  out << "best ratio " << fixed6(best.ratio_lower) << " (shard " << best.shard
      << ", estimate " << fixed6(best.ratio_estimate)
      << (best.heuristic_denominator ? ", heuristic denominator" : "") << ")\n";
  std::string why;
  const bool ok = verify_record(best, 1e-9, &why);
  out << "certificate: cb witness value " << format_double(best.report.cb_lower)
      << " over certified op bound " << format_double(best.report.op_upper_best())
      << (ok ? " verified" : " FAILED: " + why) << '\n';
  return ok ? kExitOk : kExitVerifyFailed;
}

// --- tensor / export ------------------------------------------------------

int cmd_tensor(const std::vector<std::string>& maps, const std::string& output,
               std::ostream& out) {
  if (maps.size() != 2) throw DomainError("tensor needs exactly two --map files");
  const RightModuleMap t = tensor(load_map(maps[0]), load_map(maps[1]));
  save_map(t, output);
  out << "wrote " << t.rows() << "x" << t.cols() << " map to " << output << '\n';
  return kExitOk;
}

int cmd_export(const std::string& name, const std::string& output,
               const std::string& witness_path, std::ostream& out) {
  const NamedConstruction c = construction_by_name(name);
  save_map(c.map, output);
  if (!witness_path.empty()) save_witness(c.witnesses.back(), witness_path);
  out << "wrote " << c.name << " to " << output << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Norms of right module maps on rectangular matrix spaces", "cbnorm"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "cbnorm 0.1.0");

  VerifyArgs va;
  CLI::App* verify = app.add_subcommand("verify", "Check known constructions against their targets");
  verify->add_option("--case", va.selector,
                     "all, 2x3, 2x4, msq:<m>, trunc:<m>:<n>, p34, twocol, bounds-sweep");
  verify->add_option("--seeds", va.seeds, "Random maps in the twocol case")
      ->check(CLI::PositiveNumber);
  verify->add_option("--tol", va.tol, "Absolute tolerance on norm values")
      ->check(CLI::PositiveNumber);
  verify->add_option("--map", va.map_path, "Replace the map in cases of matching shape");
  verify->add_option("--refine-restarts", va.refine_restarts, "Restarts for witness refinement")
      ->check(CLI::NonNegativeNumber);
  add_engine_flags(verify, va.engine);

  NormArgs na;
  CLI::App* norm = app.add_subcommand("norm", "Norm report for a map file");
  norm->add_option("--map", na.map_path, "Map JSON file")->required();
  norm->add_option("-o,--output", na.output, "Write the report here instead of stdout");
  norm->add_option("--check-witness", na.check_path, "Re-check the witnesses in a saved report");
  add_engine_flags(norm, na.engine);

  BoundsArgs ba;
  CLI::App* bounds = app.add_subcommand("bounds", "Bounds for C(m,n)");
  bounds->add_option("--m", ba.m, "Rows (integer or inf)");
  bounds->add_option("--n", ba.n, "Columns (integer or inf)");
  bounds->add_option("--table", ba.table, "Full table up to M N")->expected(2);
  bounds->add_option("--format", ba.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  SearchArgs sa;
  CLI::App* search = app.add_subcommand("search", "Search a structured class for large cb/op ratios");
  search->add_option("--class", sa.map_class, "perm or unitary")
      ->required()
      ->check(CLI::IsMember({"perm", "unitary"}));
  search->add_option("--m", sa.m, "Rows")->required()->check(CLI::PositiveNumber);
  search->add_option("--n", sa.n, "Columns")->required()->check(CLI::PositiveNumber);
  search->add_option("--iters", sa.iters, "Unitary search steps in total")
      ->check(CLI::PositiveNumber);
  search->add_option("--restarts", sa.restarts,
                     "Engine restarts (perm, default 32) or chains (unitary, default 8)")
      ->check(CLI::PositiveNumber);
  search->add_option("--resume", sa.resume, "JSON-lines file of finished shards");
  search->add_option("--out", sa.output, "Append records to this JSON-lines file");
  search->add_option("--cap", sa.cap, "Enumeration cap");
  add_engine_flags(search, sa.engine, false);

  std::vector<std::string> tensor_maps;
  std::string tensor_out;
  CLI::App* tensor_cmd = app.add_subcommand("tensor", "Tensor product of two map files");
  tensor_cmd->add_option("--map", tensor_maps, "Factor map files (give two)")->required();
  tensor_cmd->add_option("-o,--output", tensor_out, "Output map file")->required();

  std::string export_case;
  std::string export_out;
  std::string export_witness;
  CLI::App* exp = app.add_subcommand("export", "Write a construction to a map file");
  exp->add_option("--case", export_case, "2x3, 2x4, msq:<m>, trunc:<m>:<n>, p34")->required();
  exp->add_option("-o,--output", export_out, "Output map file")->required();
  exp->add_option("--witness", export_witness, "Also write its cb witness here");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (verify->parsed()) return cmd_verify(va, out);
    if (norm->parsed()) return cmd_norm(na, out);
    if (bounds->parsed()) return cmd_bounds(ba, out);
    if (search->parsed()) return cmd_search(sa, out);
    if (tensor_cmd->parsed()) return cmd_tensor(tensor_maps, tensor_out, out);
    if (exp->parsed()) return cmd_export(export_case, export_out, export_witness, out);
  } catch (const CapExceeded& e) {
    err << "cbnorm: " << e.what() << '\n';
    return kExitCap;
  } catch (const std::exception& e) {
    err << "cbnorm: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace cbnorm::cli
