#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <memory>
#include <string>
#include <vector>

#include "spinclone/capi.h"
#include "verify_checks.hpp"

namespace {

using nlohmann::json;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct RunConfig {
  int dim = 3;
  int dim_min = 2;
  int dim_max = 16;
  int threads = 0;       // 0: SPINCLONE_THREADS or hardware count
  int samples = 10;
  unsigned long long seed = 1234567;
  double tolerance = 1e-8;
  std::string format = "text";  // text | json | csv
  std::string out_path;
  std::string tensor_path;  // fidelity: optional JSON dump of the tensor
  bool with_basis = false;
};

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Writes to --out when given, stdout otherwise.
int emit(const RunConfig& cfg, const std::string& body) {
  if (cfg.out_path.empty()) {
    std::cout << body;
    return 0;
  }
  std::ofstream out(cfg.out_path);
  if (!out) {
    std::cerr << "error: cannot open " << cfg.out_path << " for writing\n";
    return kExitFailure;
  }
  out << body;
  return 0;
}

int report_failure(const std::string& context) {
  std::cerr << "error: " << context << ": " << sc_last_error() << "\n";
  return kExitFailure;
}

using SolutionPtr = std::unique_ptr<sc_solution, void (*)(sc_solution*)>;
using IsometryPtr = std::unique_ptr<sc_isometry, void (*)(sc_isometry*)>;
using ChoiPtr = std::unique_ptr<sc_choi, void (*)(sc_choi*)>;
using DecompositionPtr =
    std::unique_ptr<sc_decomposition, void (*)(sc_decomposition*)>;

int cmd_fidelity(const RunConfig& cfg) {
  sc_solution* raw = nullptr;
  if (sc_solve(cfg.dim, &raw) != SC_OK) return report_failure("solve");
  SolutionPtr sol(raw, sc_solution_destroy);
  double f_uni = 0.0;
  if (sc_universal_fidelity(cfg.dim, &f_uni) != SC_OK)
    return report_failure("universal fidelity");

  const double f_coh = sc_solution_fidelity(sol.get());
  const double lambda = sc_solution_lambda_max(sol.get());
  const int mult = sc_solution_multiplicity(sol.get());

  if (!cfg.tensor_path.empty()) {
    const int sym = cfg.dim * (cfg.dim + 1) / 2;
    const int side = cfg.dim * sym;
    std::vector<double> a(static_cast<size_t>(side) * side);
    if (sc_fidelity_tensor(cfg.dim, a.data(), a.size()) != SC_OK)
      return report_failure("fidelity tensor");
    json j{{"d", cfg.dim}, {"S", sym}, {"matrix", a}};
    std::ofstream out(cfg.tensor_path);
    if (!out) {
      std::cerr << "error: cannot open " << cfg.tensor_path
                << " for writing\n";
      return kExitFailure;
    }
    out << j.dump() << "\n";
  }

  if (cfg.format == "json") {
    json j{{"d", cfg.dim},
           {"f_coherent", f_coh},
           {"f_universal", f_uni},
           {"lambda_max", lambda},
           {"multiplicity", mult}};
    return emit(cfg, j.dump(2) + "\n");
  }
  std::string body;
  body += "d = " + std::to_string(cfg.dim) + "\n";
  body += "f_coherent = " + num(f_coh) + "\n";
  body += "f_universal = " + num(f_uni) + "\n";
  body += "lambda_max = " + num(lambda) + "\n";
  body += "multiplicity = " + std::to_string(mult) + "\n";
  return emit(cfg, body);
}

int cmd_sweep(const RunConfig& cfg) {
  const int rows = cfg.dim_max - cfg.dim_min + 1;
  std::vector<double> buf(static_cast<size_t>(3 * rows));
  if (sc_sweep(cfg.dim_min, cfg.dim_max, cfg.threads, buf.data(),
               buf.size()) != SC_OK)
    return report_failure("sweep");

  if (cfg.format == "json") {
    json arr = json::array();
    for (int i = 0; i < rows; ++i)
      arr.push_back({{"d", static_cast<int>(buf[static_cast<size_t>(3 * i)])},
                     {"f_coherent", buf[static_cast<size_t>(3 * i + 1)]},
                     {"f_universal", buf[static_cast<size_t>(3 * i + 2)]}});
    return emit(cfg, arr.dump(2) + "\n");
  }
  std::string body = "d,f_coherent,f_universal\n";
  for (int i = 0; i < rows; ++i) {
    body += std::to_string(static_cast<int>(buf[static_cast<size_t>(3 * i)]));
    body += "," + num(buf[static_cast<size_t>(3 * i + 1)]);
    body += "," + num(buf[static_cast<size_t>(3 * i + 2)]) + "\n";
  }
  return emit(cfg, body);
}

int cmd_transform(const RunConfig& cfg) {
  sc_solution* sraw = nullptr;
  if (sc_solve(cfg.dim, &sraw) != SC_OK) return report_failure("solve");
  SolutionPtr sol(sraw, sc_solution_destroy);
  sc_isometry* iraw = nullptr;
  if (sc_isometry_build(sol.get(), &iraw) != SC_OK)
    return report_failure("isometry");
  IsometryPtr iso(iraw, sc_isometry_destroy);

  const int d = sc_isometry_dim(iso.get());
  const int anc = sc_isometry_ancilla_dim(iso.get());
  const int s_dim = sc_isometry_sym_dim(iso.get());
  std::vector<double> coeffs(static_cast<size_t>(anc) * d * s_dim);
  if (sc_isometry_coefficients(iso.get(), coeffs.data(), coeffs.size()) !=
      SC_OK)
    return report_failure("coefficients");

  if (cfg.format == "json") {
    json blocks = json::array();
    for (int a = 0; a < anc; ++a) {
      json block = json::array();
      for (int n = 0; n < d; ++n) {
        json row = json::array();
        for (int s = 0; s < s_dim; ++s)
          row.push_back(
              coeffs[(static_cast<size_t>(a) * d + n) * s_dim + s]);
        block.push_back(row);
      }
      blocks.push_back(block);
    }
    json j{{"d", d},
           {"ancilla_dim", anc},
           {"sym_dim", s_dim},
           {"gram_residual", sc_isometry_gram_residual(iso.get())},
           {"fidelity", sc_isometry_fidelity(iso.get())},
           {"blocks", blocks}};
    return emit(cfg, j.dump(2) + "\n");
  }

  std::string body;
  body += "d = " + std::to_string(d) + "\n";
  body += "ancilla_dim = " + std::to_string(anc) + "\n";
  body += "sym_dim = " + std::to_string(s_dim) + "\n";
  body += "gram_residual = " + num(sc_isometry_gram_residual(iso.get())) + "\n";
  body += "fidelity = " + num(sc_isometry_fidelity(iso.get())) + "\n";
  for (int a = 0; a < anc; ++a) {
    body += "block a=" + std::to_string(a) + "\n";
    for (int n = 0; n < d; ++n) {
      body += " ";
      for (int s = 0; s < s_dim; ++s) {
        double v = coeffs[(static_cast<size_t>(a) * d + n) * s_dim + s];
        if (std::abs(v) < cfg.tolerance) v = 0.0;
        body += " " + num(v);
      }
      body += "\n";
    }
  }
  return emit(cfg, body);
}

int cmd_choi(const RunConfig& cfg) {
  sc_solution* sraw = nullptr;
  if (sc_solve(cfg.dim, &sraw) != SC_OK) return report_failure("solve");
  SolutionPtr sol(sraw, sc_solution_destroy);
  sc_isometry* iraw = nullptr;
  if (sc_isometry_build(sol.get(), &iraw) != SC_OK)
    return report_failure("isometry");
  IsometryPtr iso(iraw, sc_isometry_destroy);
  sc_choi* craw = nullptr;
  if (sc_choi_build(iso.get(), &craw) != SC_OK)
    return report_failure("process matrix");
  ChoiPtr choi(craw, sc_choi_destroy);

  const int d = cfg.dim;
  std::vector<double> spectrum(static_cast<size_t>(d) * d * d);
  if (sc_choi_spectrum(choi.get(), spectrum.data(), spectrum.size()) != SC_OK)
    return report_failure("spectrum");
  double trace_res = 0.0, cov_res = 0.0, perm_res = 0.0;
  if (sc_choi_trace_residual(choi.get(), &trace_res) != SC_OK)
    return report_failure("trace residual");
  if (sc_choi_covariance_residual(choi.get(), cfg.samples, cfg.seed,
                                  &cov_res) != SC_OK)
    return report_failure("covariance residual");
  if (sc_choi_permutation_residual(choi.get(), &perm_res) != SC_OK)
    return report_failure("permutation residual");

  double unit_dev = 0.0, rest_dev = 0.0;
  for (size_t i = 0; i < spectrum.size(); ++i) {
    if (i < static_cast<size_t>(d))
      unit_dev = std::max(unit_dev, std::abs(spectrum[i] - 1.0));
    else
      rest_dev = std::max(rest_dev, std::abs(spectrum[i]));
  }
  const bool holds = unit_dev <= cfg.tolerance && rest_dev <= cfg.tolerance;

  if (cfg.format == "json") {
    json j{{"d", d},
           {"trace_residual", trace_res},
           {"covariance_residual", cov_res},
           {"permutation_residual", perm_res},
           {"samples", cfg.samples},
           {"seed", cfg.seed},
           {"spectrum", spectrum},
           {"unit_eigenvalue_conjecture",
            {{"tolerance", cfg.tolerance},
             {"holds", holds},
             {"unit_deviation", unit_dev},
             {"tail_deviation", rest_dev}}}};
    return emit(cfg, j.dump(2) + "\n");
  }
  std::string body;
  body += "d = " + std::to_string(d) + "\n";
  body += "trace_residual = " + num(trace_res) + "\n";
  body += "covariance_residual = " + num(cov_res) + "\n";
  body += "permutation_residual = " + num(perm_res) + "\n";
  body += "spectrum_head =";
  for (int i = 0; i < std::min<int>(d + 2, static_cast<int>(spectrum.size()));
       ++i)
    body += " " + num(spectrum[static_cast<size_t>(i)]);
  body += "\n";
  body += std::string("unit_eigenvalue_conjecture = ") +
          (holds ? "holds" : "fails") + " (unit deviation " + num(unit_dev) +
          ", tail " + num(rest_dev) + ")\n";
  return emit(cfg, body);
}

int cmd_decompose(const RunConfig& cfg) {
  sc_decomposition* draw = nullptr;
  if (sc_decompose(cfg.dim, &draw) != SC_OK)
    return report_failure("decomposition");
  DecompositionPtr dec(draw, sc_decomposition_destroy);
  const int count = sc_decomposition_count(dec.get());
  double completeness = 0.0;
  if (sc_decomposition_completeness(dec.get(), &completeness) != SC_OK)
    return report_failure("completeness");

  const int d = cfg.dim;
  const size_t n3 = static_cast<size_t>(d) * d * d;

  struct Labels {
    int tj, tj12, dim;
    char sym;
  };
  std::vector<Labels> labels(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) {
    auto& l = labels[static_cast<size_t>(i)];
    if (sc_decomposition_subspace(dec.get(), i, &l.tj, &l.tj12, &l.dim,
                                  &l.sym) != SC_OK)
      return report_failure("subspace labels");
  }

  auto read_basis = [&](int i, std::vector<double>& basis) {
    basis.assign(n3 * static_cast<size_t>(labels[static_cast<size_t>(i)].dim),
                 0.0);
    return sc_decomposition_basis(dec.get(), i, basis.data(), basis.size());
  };

  if (cfg.format == "json") {
    json subs = json::array();
    for (int i = 0; i < count; ++i) {
      const auto& l = labels[static_cast<size_t>(i)];
      json entry{{"index", i},
                 {"dimension", l.dim},
                 {"twice_spin", l.tj},
                 {"twice_intermediate", l.tj12},
                 {"symmetry", std::string(1, l.sym)}};
      if (cfg.with_basis) {
        std::vector<double> basis;
        if (read_basis(i, basis) != SC_OK) return report_failure("basis");
        json cols = json::array();
        for (int c = 0; c < l.dim; ++c) {
          json col = json::array();
          for (size_t rowi = 0; rowi < n3; ++rowi)
            col.push_back(basis[rowi * static_cast<size_t>(l.dim) +
                                static_cast<size_t>(c)]);
          cols.push_back(col);
        }
        entry["basis_columns"] = cols;
      }
      subs.push_back(entry);
    }
    json j{{"d", d},
           {"completeness_residual", completeness},
           {"subspaces", subs}};
    return emit(cfg, j.dump(2) + "\n");
  }

  std::string body;
  body += "d = " + std::to_string(d) + " (" + std::to_string(n3) +
          " product states)\n";
  body += "index  dim  2J  2J12  sym\n";
  char line[80];
  for (int i = 0; i < count; ++i) {
    const auto& l = labels[static_cast<size_t>(i)];
    std::snprintf(line, sizeof line, "%5d %4d %3d %5d    %c\n", i, l.dim, l.tj,
                  l.tj12, l.sym);
    body += line;
  }
  body += "completeness_residual = " + num(completeness) + "\n";
  if (cfg.with_basis) {
    for (int i = 0; i < count; ++i) {
      std::vector<double> basis;
      if (read_basis(i, basis) != SC_OK) return report_failure("basis");
      const int dim_i = labels[static_cast<size_t>(i)].dim;
      body += "subspace " + std::to_string(i) + " basis:\n";
      for (int c = 0; c < dim_i; ++c) {
        body += "  column " + std::to_string(c) + ":";
        for (size_t rowi = 0; rowi < n3; ++rowi) {
          const double v =
              basis[rowi * static_cast<size_t>(dim_i) + static_cast<size_t>(c)];
          if (std::abs(v) < 1e-12) continue;
          const int n1 = static_cast<int>(rowi) / (d * d);
          const int n2 = (static_cast<int>(rowi) / d) % d;
          const int n3i = static_cast<int>(rowi) % d;
          body += " " + num(v) + "|" + std::to_string(n1) + "," +
                  std::to_string(n2) + "," + std::to_string(n3i) + ">";
        }
        body += "\n";
      }
    }
  }
  return emit(cfg, body);
}

int cmd_verify(const RunConfig& cfg) {
  const std::vector<CheckResult> results =
      run_verification(cfg.seed, cfg.threads);
  bool all = true;
  int n_pass = 0;
  for (const auto& r : results) {
    all = all && r.passed;
    n_pass += r.passed ? 1 : 0;
  }

  if (cfg.format == "json") {
    json arr = json::array();
    for (const auto& r : results)
      arr.push_back({{"id", r.id},
                     {"name", r.name},
                     {"passed", r.passed},
                     {"seconds", r.seconds},
                     {"details", r.details}});
    json j{{"seed", cfg.seed}, {"all_passed", all}, {"results", arr}};
    const int rc = emit(cfg, j.dump(2) + "\n");
    if (rc != 0) return rc;
  } else {
    std::string body;
    for (const auto& r : results) {
      body += r.passed ? "[PASS] " : "[FAIL] ";
      body += std::to_string(r.id) + " " + r.name + ": " + r.details + "\n";
    }
    body += std::to_string(n_pass) + " passed, " +
            std::to_string(static_cast<int>(results.size()) - n_pass) +
            " failed\n";
    const int rc = emit(cfg, body);
    if (rc != 0) return rc;
  }
  return all ? 0 : kExitFailure;
}

// Round-trip self-check for the emitters: parse(format(x)) must return x.
int cmd_selfcheck_io() {
  const double values[] = {5.0 / 6.0, 0.77912878474779193, 2.0 / 3.0,
                           0.69860058460724828, 1e-17, -0.125};
  for (double v : values) {
    const std::string s = num(v);
    if (std::strtod(s.c_str(), nullptr) != v) {
      std::cerr << "csv round-trip failed for " << s << "\n";
      return kExitFailure;
    }
    json j{{"x", v}};
    const json back = json::parse(j.dump());
    if (back["x"].get<double>() != v) {
      std::cerr << "json round-trip failed for " << s << "\n";
      return kExitFailure;
    }
  }
  std::cout << "round-trip ok\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"optimal symmetric cloning of spin coherent states"};
  app.require_subcommand(1);

  RunConfig cfg;

  auto add_format = [&cfg](CLI::App* cmd) {
    cmd->add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    cmd->add_flag_callback("--json", [&cfg] { cfg.format = "json"; },
                           "shorthand for --format json");
    cmd->add_option("--out", cfg.out_path, "write output to a file");
  };

  CLI::App* fid = app.add_subcommand("fidelity", "optimal cloning fidelity");
  fid->add_option("--dim", cfg.dim, "Hilbert-space dimension")
      ->required()
      ->check(CLI::Range(2, 64));
  fid->add_option("--dump-tensor", cfg.tensor_path,
                  "write the fidelity tensor as JSON to this file");
  add_format(fid);

  CLI::App* sweep = app.add_subcommand("sweep", "fidelity across dimensions");
  sweep->add_option("--min", cfg.dim_min, "lowest dimension")
      ->check(CLI::Range(2, 64));
  sweep->add_option("--max", cfg.dim_max, "highest dimension")
      ->required()
      ->check(CLI::Range(2, 64));
  sweep->add_option("--threads", cfg.threads,
                    "worker threads (0 = SPINCLONE_THREADS or hardware)");
  add_format(sweep);

  CLI::App* transform =
      app.add_subcommand("transform", "explicit cloning isometry");
  transform->add_option("--dim", cfg.dim, "Hilbert-space dimension")
      ->required()
      ->check(CLI::Range(2, 64));
  transform->add_option("--tolerance", cfg.tolerance,
                        "display cutoff for near-zero coefficients");
  add_format(transform);

  CLI::App* choi =
      app.add_subcommand("choi", "process matrix spectrum and residuals");
  choi->add_option("--dim", cfg.dim, "Hilbert-space dimension")
      ->required()
      ->check(CLI::Range(2, 64));
  choi->add_option("--samples", cfg.samples, "rotation samples")
      ->check(CLI::PositiveNumber);
  choi->add_option("--seed", cfg.seed, "sampling seed");
  choi->add_option("--tolerance", cfg.tolerance,
                   "tolerance for the unit-eigenvalue verdict");
  add_format(choi);

  CLI::App* dec =
      app.add_subcommand("decompose", "rotation irrep decomposition");
  dec->add_option("--dim", cfg.dim, "Hilbert-space dimension")
      ->required()
      ->check(CLI::Range(2, 64));
  dec->add_flag("--basis", cfg.with_basis, "include basis amplitudes");
  add_format(dec);

  CLI::App* verify = app.add_subcommand("verify", "run the acceptance suite");
  verify->add_option("--seed", cfg.seed, "sampling seed");
  verify->add_option("--threads", cfg.threads,
                     "worker threads (0 = SPINCLONE_THREADS or hardware)");
  add_format(verify);

  CLI::App* selfcheck =
      app.add_subcommand("selfcheck-io", "emitter round-trip check");
  selfcheck->group("");  // hidden

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (app.got_subcommand(fid)) return cmd_fidelity(cfg);
    if (app.got_subcommand(sweep)) return cmd_sweep(cfg);
    if (app.got_subcommand(transform)) return cmd_transform(cfg);
    if (app.got_subcommand(choi)) return cmd_choi(cfg);
    if (app.got_subcommand(dec)) return cmd_decompose(cfg);
    if (app.got_subcommand(verify)) return cmd_verify(cfg);
    if (app.got_subcommand(selfcheck)) return cmd_selfcheck_io();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
