#include "scatpoly/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <random>
#include <regex>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "scatpoly/io.hpp"
#include "scatpoly/scattering.hpp"

namespace scatpoly::cli {

namespace {

using nlohmann::json;

// Raised for bad user input; mapped to kUsageError.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommandConfig {
  int p = 0;
  int q = 0;
  int max_sum = 0;
  int m = 0;
  int n = 0;
  int truncation = 8;
  std::string input;
  std::string grid = "16x32";
  bool grid_requested = false;
  std::string grid_out;
  std::string out;
  std::string format = "csv";
  std::string eps_ladder;
  double route_tol = 1e-12;
  double gram_tol = 1e-11;
  double diag_tol = 1e-12;
};

// Writes to --out when given, otherwise to the command's stdout.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
    if (path.empty()) return;
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
    if (!*file_) throw UsageError("cannot open output file '" + path + "'");
  }
  std::ostream& stream() { return file_ ? *file_ : fallback_; }
  bool to_file() const { return file_ != nullptr; }
  void close(const std::string& path) {
    if (!file_) return;
    file_->close();
    if (!*file_) throw UsageError("failed writing output file '" + path + "'");
  }

 private:
  std::ostream& fallback_;
  std::unique_ptr<std::ofstream> file_;
};

DiskFunction resolve_input(const std::string& input) {
  DiskFunction f;
  if (input.rfind("builtin:", 0) == 0) {
    if (!builtin_function(input, f)) throw UsageError("unknown built-in function '" + input + "'");
    return f;
  }
  std::ifstream in(input);
  if (!in) throw UsageError("cannot open input grid '" + input + "'");
  try {
    return interpolate(read_grid_csv(in));
  } catch (const InputError& e) {
    throw UsageError(input + ": " + e.what());
  }
}

bool vanishes_on_boundary(const DiskFunction& f) {
  constexpr int kProbe = 64;
  for (int j = 0; j < kProbe; ++j) {
    if (std::abs(f(1.0, 2.0 * std::numbers::pi * j / kProbe)) > 1e-12) return false;
  }
  return true;
}

int cmd_eval(const CommandConfig& cfg, std::ostream& out) {
  const PQIndex idx(cfg.p, cfg.q);
  const GridSpec spec = parse_grid_spec(cfg.grid);
  if (spec.radial < 2 || spec.angular < 2) throw UsageError("grid size must be at least 2x2");
  const RadialForm form = jacobi_form(idx);
  const GridSample grid = sample([&](double r, double theta) { return form(r, theta); }, spec);

  Sink sink(cfg.out, out);
  if (cfg.format == "json") {
    auto& os = sink.stream();
    os << "[";
    bool first = true;
    for (Eigen::Index i = 0; i < grid.values.rows(); ++i) {
      for (Eigen::Index j = 0; j < grid.values.cols(); ++j) {
        os << (first ? "\n" : ",\n") << "  {\"r\": " << format_double(grid.radial_nodes[i])
           << ", \"theta\": " << format_double(grid.angular_nodes[j])
           << ", \"re\": " << format_double(grid.values(i, j).real())
           << ", \"im\": " << format_double(grid.values(i, j).imag()) << "}";
        first = false;
      }
    }
    os << "\n]\n";
  } else {
    write_grid_csv(sink.stream(), grid);
  }
  sink.close(cfg.out);
  return kSuccess;
}

json check_record(const std::string& name, bool passed, double worst, const std::string& metric) {
  return json{{"name", name}, {"passed", passed}, {metric, worst}};
}

int cmd_verify(const CommandConfig& cfg, std::ostream& out) {
  const auto indices = basis_indices(cfg.max_sum);
  json checks = json::array();
  bool all_pass = true;
  auto record = [&](json rec) {
    all_pass = all_pass && rec["passed"].get<bool>();
    checks.push_back(std::move(rec));
  };

  std::vector<std::string> route_failures;
  std::vector<std::string> eigen_failures;
  std::vector<std::string> boundary_failures;
  std::vector<std::string> purity_failures;
  std::vector<std::string> degree_failures;
  double worst_jacobi = 0.0;
  json sign_table = json::array();
  struct SignClass {
    int total = 0;
    int contradicted = 0;
  };
  std::map<std::string, SignClass> classes;
  for (const auto& idx : indices) {
    const BivariatePoly rod = rodrigues(idx);
    if (!(rod == radial_sum(idx))) route_failures.push_back(idx.to_string());
    if (!is_eigenfunction(rod, Rational(idx.eigenvalue()))) eigen_failures.push_back(idx.to_string());
    if (!divide_by_boundary_factor(rod)) boundary_failures.push_back(idx.to_string());
    for (const auto& [mono, c] : rod.terms()) {
      if (mono.z - mono.zbar != idx.angular_frequency()) {
        purity_failures.push_back(idx.to_string());
        break;
      }
    }
    if (rod.total_degree() != idx.sum()) degree_failures.push_back(idx.to_string());

    try {
      const RadialForm form = jacobi_form(idx);
      const auto points = sample_disk_points(50, 0xC0FFEEUL + 7919UL * idx.p() + idx.q());
      worst_jacobi = std::max(worst_jacobi, relative_discrepancy(form, rod, points));
      sign_table.push_back(json{{"p", idx.p()},
                                {"q", idx.q()},
                                {"m", form.m},
                                {"nu", form.nu},
                                {"resolved_sign", form.resolved_sign()},
                                {"printed_sign", form.printed_sign},
                                {"printed_sign_agrees", form.printed_sign_agrees()}});
      const std::string cls = (idx.max() % 2 == 1) ? "max(p,q) odd" : "max(p,q) even";
      classes[cls].total += 1;
      if (!form.printed_sign_agrees()) classes[cls].contradicted += 1;
    } catch (const ValidationFailure&) {
      worst_jacobi = std::numeric_limits<double>::infinity();
    }
  }
  auto list_check = [&](const std::string& name, const std::vector<std::string>& failures) {
    record(json{{"name", name}, {"passed", failures.empty()}, {"indices_checked", indices.size()},
                {"failures", failures}});
  };
  list_check("route_equivalence_exact", route_failures);
  list_check("eigenrelation_exact", eigen_failures);
  list_check("boundary_divisibility_exact", boundary_failures);
  list_check("angular_purity", purity_failures);
  list_check("total_degree", degree_failures);
  record(check_record("jacobi_form_match", worst_jacobi <= cfg.route_tol, worst_jacobi, "worst_relative_residual"));

  const GramMatrix g = gram(indices);
  const double off = g.max_off_diagonal();
  const double diag = g.max_diagonal_relative_error();
  record(json{{"name", "gram_diagonality"},
              {"passed", off < cfg.gram_tol && diag <= cfg.diag_tol},
              {"max_off_diagonal", off},
              {"max_diagonal_relative_error", diag}});

  // Random tables vanish on the circle.
  std::mt19937_64 rng(20140101);
  std::normal_distribution<double> normal;
  double worst_boundary = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    ExpansionTable table(cfg.max_sum);
    for (const auto& idx : indices) table.set(idx, {normal(rng), normal(rng)});
    worst_boundary = std::max(worst_boundary, boundary_value_check(table, 256));
  }
  record(check_record("boundary_vanishing_numeric", worst_boundary < 1e-12, worst_boundary, "max_boundary_value"));

  json class_summary = json::array();
  for (const auto& [cls, counts] : classes) {
    class_summary.push_back(json{{"class", cls},
                                 {"indices", counts.total},
                                 {"printed_sign_contradicted", counts.contradicted}});
  }

  json report{{"max_sum", cfg.max_sum},
              {"passed", all_pass},
              {"checks", checks},
              {"jacobi_sign_table", sign_table},
              {"jacobi_sign_classes", class_summary},
              {"printed_prefactor", "(-1)^(q+max(p,q)) * max(p,q)/q"},
              {"resolved_prefactor", "validated against the Rodrigues polynomial at construction"}};

  Sink sink(cfg.out, out);
  sink.stream() << report.dump(2) << '\n';
  sink.close(cfg.out);
  if (sink.to_file()) {
    for (const auto& c : checks) {
      out << (c["passed"].get<bool>() ? "PASS " : "FAIL ") << c["name"].get<std::string>() << '\n';
    }
  }
  return all_pass ? kSuccess : kVerificationFailed;
}

int cmd_gram(const CommandConfig& cfg, std::ostream& out, std::ostream& err) {
  const GramMatrix g = gram(basis_indices(cfg.max_sum));
  Sink sink(cfg.out, out);
  if (cfg.format == "json") {
    json doc{{"indices", json::array()}, {"re", json::array()}, {"im", json::array()}};
    for (const auto& idx : g.indices) doc["indices"].push_back({idx.p(), idx.q()});
    for (Eigen::Index i = 0; i < g.entries.rows(); ++i) {
      json re = json::array();
      json im = json::array();
      for (Eigen::Index j = 0; j < g.entries.cols(); ++j) {
        re.push_back(g.entries(i, j).real());
        im.push_back(g.entries(i, j).imag());
      }
      doc["re"].push_back(re);
      doc["im"].push_back(im);
    }
    sink.stream() << doc.dump(2) << '\n';
  } else {
    write_gram_csv(sink.stream(), g);
  }
  sink.close(cfg.out);
  (sink.to_file() ? out : err) << "size=" << g.indices.size()
                               << " max_off_diagonal=" << format_double(g.max_off_diagonal())
                               << " max_diagonal_relative_error=" << format_double(g.max_diagonal_relative_error())
                               << '\n';
  return kSuccess;
}

int cmd_moments(const CommandConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.m < 0 || cfg.n < 0) throw UsageError("m and n must be nonnegative");
  const auto ladder = cfg.eps_ladder.empty() ? default_eps_ladder() : parse_eps_ladder(cfg.eps_ladder);
  if (ladder.size() < 2) throw UsageError("eps ladder needs at least two values");
  const MomentEstimate est = moment_ladder(cfg.m, cfg.n, ladder);
  const double slope = est.log_slope();

  Sink sink(cfg.out, out);
  if (cfg.format == "json") {
    auto& os = sink.stream();
    os << "{\n  \"m\": " << est.m << ",\n  \"n\": " << est.n << ",\n  \"slope\": " << format_double(slope)
       << ",\n  \"monotone\": " << (est.is_monotone() ? "true" : "false") << ",\n  \"rows\": [";
    for (std::size_t i = 0; i < est.cutoffs.size(); ++i) {
      os << (i == 0 ? "\n" : ",\n") << "    {\"eps\": " << format_double(est.cutoffs[i])
         << ", \"value\": " << format_double(est.values[i]) << "}";
    }
    os << "\n  ]\n}\n";
  } else {
    write_moments_csv(sink.stream(), est);
  }
  sink.close(cfg.out);
  (sink.to_file() ? out : err) << "slope=" << format_double(slope)
                               << " monotone=" << (est.is_monotone() ? "true" : "false") << '\n';
  return kSuccess;
}

int cmd_expand_or_solve(const CommandConfig& cfg, bool solve, std::ostream& out, std::ostream& err) {
  if (cfg.truncation < 2) throw UsageError("--trunc must be >= 2");
  const DiskFunction f = resolve_input(cfg.input);
  const ExpansionTable f_table = expand(f, cfg.truncation);
  const ExpansionTable table = solve ? divide_by_eigenvalues(f_table) : f_table;

  Sink sink(cfg.out, out);
  write_expansion_json(sink.stream(), table);
  sink.close(cfg.out);

  if (cfg.grid_requested) {
    const std::string grid_path = cfg.grid_out.empty() ? (cfg.out.empty() ? std::string() : cfg.out + ".grid.csv")
                                                       : cfg.grid_out;
    if (grid_path.empty()) throw UsageError("--grid needs --grid-out or --out");
    Sink grid_sink(grid_path, out);
    write_grid_csv(grid_sink.stream(), reconstruct(table, parse_grid_spec(cfg.grid)));
    grid_sink.close(grid_path);
  }

  auto& summary = sink.to_file() ? out : err;
  summary << "terms=" << table.coefficients().size() << " truncation=" << cfg.truncation;
  if (vanishes_on_boundary(f)) {
    summary << " l2_residual=" << format_double(weighted_l2_residual(f, f_table));
  } else {
    summary << " l2_residual=n/a";
  }
  summary << '\n';
  return kSuccess;
}

}  // namespace

bool builtin_function(const std::string& name, DiskFunction& f) {
  static const std::regex kPhi(R"(builtin:phi_(\d+)_(\d+))");
  std::smatch match;
  if (std::regex_match(name, match, kPhi)) {
    const PQIndex idx(std::stoi(match[1].str()), std::stoi(match[2].str()));
    const RadialForm form = jacobi_form(idx);
    f = [form](double r, double theta) { return form(r, theta); };
    return true;
  }
  if (name == "builtin:radial_bump") {
    f = [](double r, double) {
      const double s = 1.0 - r * r;
      return std::complex<double>(s * s, 0.0);
    };
    return true;
  }
  if (name == "builtin:unit") {
    f = [](double, double) { return std::complex<double>(1.0, 0.0); };
    return true;
  }
  return false;
}

GridSpec parse_grid_spec(const std::string& text) {
  static const std::regex kGrid(R"((\d+)[xX](\d+))");
  std::smatch match;
  if (!std::regex_match(text, match, kGrid)) throw std::invalid_argument("grid must look like NRxNT, got '" + text + "'");
  GridSpec spec{std::stoi(match[1].str()), std::stoi(match[2].str())};
  if (spec.radial < 1 || spec.angular < 1) throw std::invalid_argument("grid dimensions must be positive");
  return spec;
}

std::vector<double> parse_eps_ladder(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(cell, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad eps value '" + cell + "'");
    }
    if (used != cell.size() || !(v > 0.0 && v < 1.0)) throw std::invalid_argument("bad eps value '" + cell + "'");
    out.push_back(v);
  }
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Scattering polynomials on the unit disk: construction, verification and spectral tools"};
  app.require_subcommand(1);
  CommandConfig cfg;

  auto add_out = [&](CLI::App* sub) { sub->add_option("--out", cfg.out, "Output path (default: stdout)"); };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  };

  auto* eval = app.add_subcommand("eval", "Sample phi^(p,q) on a polar grid");
  eval->add_option("p", cfg.p)->required();
  eval->add_option("q", cfg.q)->required();
  eval->add_option("--grid", cfg.grid, "Grid NRxNT (r_i = i/NR, theta_j = 2 pi j/NT)");
  add_out(eval);
  add_format(eval);

  auto* verify = app.add_subcommand("verify", "Run all consistency checks up to p+q <= MAX_SUM");
  verify->add_option("max_sum", cfg.max_sum)->required();
  verify->add_option("--route-tol", cfg.route_tol, "Relative tolerance for the Jacobi form");
  verify->add_option("--gram-tol", cfg.gram_tol, "Bound on off-diagonal Gram entries");
  verify->add_option("--diag-tol", cfg.diag_tol, "Relative tolerance for the Gram diagonal");
  add_out(verify);

  auto* gram_cmd = app.add_subcommand("gram", "Gram matrix over basis_indices(MAX_SUM)");
  gram_cmd->add_option("max_sum", cfg.max_sum)->required();
  add_out(gram_cmd);
  add_format(gram_cmd);

  auto* moments = app.add_subcommand("moments", "Truncated moments of x^2m y^2n / (1 - r^2)");
  moments->add_option("m", cfg.m)->required();
  moments->add_option("n", cfg.n)->required();
  moments->add_option("--eps-ladder", cfg.eps_ladder, "Comma-separated cutoffs (default 1e-2,...,1e-7)");
  add_out(moments);
  add_format(moments);

  auto add_transform = [&](CLI::App* sub) {
    sub->add_option("input", cfg.input, "builtin:<name> or a CSV grid r,theta,re,im")->required();
    sub->add_option("--trunc", cfg.truncation, "Truncation: max p+q");
    sub->add_option("--grid", cfg.grid, "Write a reconstruction on an NRxNT grid");
    sub->add_option("--grid-out", cfg.grid_out, "Reconstruction path (default: <out>.grid.csv)");
    add_out(sub);
  };
  auto* expand_cmd = app.add_subcommand("expand", "Expand a function in the scattering basis");
  add_transform(expand_cmd);
  auto* solve_cmd = app.add_subcommand("solve", "Solve -modified_laplacian(u) = f with zero boundary values");
  add_transform(solve_cmd);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kSuccess;
    }
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    if (*eval) return cmd_eval(cfg, out);
    if (*verify) {
      if (cfg.max_sum < 2) throw UsageError("max_sum must be >= 2");
      return cmd_verify(cfg, out);
    }
    if (*gram_cmd) {
      if (cfg.max_sum < 2) throw UsageError("max_sum must be >= 2");
      return cmd_gram(cfg, out, err);
    }
    if (*moments) return cmd_moments(cfg, out, err);
    cfg.grid_requested = expand_cmd->count("--grid") > 0 || solve_cmd->count("--grid") > 0;
    if (*expand_cmd) return cmd_expand_or_solve(cfg, false, out, err);
    if (*solve_cmd) return cmd_expand_or_solve(cfg, true, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace scatpoly::cli
