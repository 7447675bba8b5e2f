#include "scatpoly/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>
#include <vector>

#include "json.hpp"

namespace scatpoly {

InputError::InputError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  if (ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, ptr);
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& text, std::size_t line) {
  const std::string cell = trim(text);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (cell.empty() || ec != std::errc{} || ptr != cell.data() + cell.size()) {
    throw InputError(line, "not a number: '" + cell + "'");
  }
  return v;
}

std::size_t bracket(const Eigen::VectorXd& nodes, double x) {
  // Largest i with nodes[i] <= x, limited so that i + 1 is valid.
  const auto* begin = nodes.data();
  const auto* end = begin + nodes.size();
  const auto* it = std::upper_bound(begin, end, x);
  std::size_t i = it == begin ? 0 : static_cast<std::size_t>(it - begin - 1);
  return std::min(i, static_cast<std::size_t>(nodes.size() - 2));
}

}  // namespace

void write_grid_csv(std::ostream& os, const GridSample& grid) {
  os << "r,theta,re,im\n";
  for (Eigen::Index i = 0; i < grid.values.rows(); ++i) {
    for (Eigen::Index j = 0; j < grid.values.cols(); ++j) {
      const auto v = grid.values(i, j);
      os << format_double(grid.radial_nodes[i]) << ',' << format_double(grid.angular_nodes[j]) << ','
         << format_double(v.real()) << ',' << format_double(v.imag()) << '\n';
    }
  }
}

GridSample read_grid_csv(std::istream& is) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(is, line)) {
    ++line_no;
    if (!trim(line).empty()) {
      header = split(trim(line), ',');
      break;
    }
  }
  for (auto& h : header) h = trim(h);
  if (header != std::vector<std::string>{"r", "theta", "re", "im"}) {
    throw InputError(line_no == 0 ? 1 : line_no, "expected header 'r,theta,re,im'");
  }

  struct Row {
    double r, theta;
    std::complex<double> value;
    std::size_t line;
  };
  std::vector<Row> rows;
  while (std::getline(is, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split(trim(line), ',');
    if (cells.size() != 4) throw InputError(line_no, "expected 4 columns, found " + std::to_string(cells.size()));
    Row row{parse_double(cells[0], line_no), parse_double(cells[1], line_no),
            {parse_double(cells[2], line_no), parse_double(cells[3], line_no)}, line_no};
    if (row.r < 0.0 || row.r > 1.0) throw InputError(line_no, "radius outside [0, 1]");
    rows.push_back(row);
  }
  if (rows.empty()) throw InputError(line_no + 1, "grid has no data rows");

  std::set<double> radii;
  std::set<double> angles;
  for (const auto& row : rows) {
    radii.insert(row.r);
    angles.insert(row.theta);
  }
  if (radii.size() < 2 || angles.size() < 2) {
    throw InputError(line_no, "grid needs at least two distinct radii and two distinct angles");
  }
  if (rows.size() != radii.size() * angles.size()) {
    throw InputError(line_no, "grid is not a complete tensor product of its radii and angles");
  }

  GridSample g;
  g.radial_nodes = Eigen::Map<const Eigen::VectorXd>(std::vector<double>(radii.begin(), radii.end()).data(),
                                                     static_cast<Eigen::Index>(radii.size()));
  g.angular_nodes = Eigen::Map<const Eigen::VectorXd>(std::vector<double>(angles.begin(), angles.end()).data(),
                                                      static_cast<Eigen::Index>(angles.size()));
  g.values.resize(g.radial_nodes.size(), g.angular_nodes.size());
  std::vector<bool> seen(rows.size(), false);
  for (const auto& row : rows) {
    const auto i = std::distance(radii.begin(), radii.find(row.r));
    const auto j = std::distance(angles.begin(), angles.find(row.theta));
    const auto slot = static_cast<std::size_t>(i) * angles.size() + static_cast<std::size_t>(j);
    if (seen[slot]) throw InputError(row.line, "duplicate grid point");
    seen[slot] = true;
    g.values(i, j) = row.value;
  }
  return g;
}

DiskFunction interpolate(const GridSample& grid) {
  if (grid.radial_nodes.size() < 2 || grid.angular_nodes.size() < 2) {
    throw std::invalid_argument("interpolate: grid needs at least 2x2 nodes");
  }
  return [grid](double r, double theta) {
    const double two_pi = 2.0 * std::numbers::pi;
    const auto& rn = grid.radial_nodes;
    const auto& tn = grid.angular_nodes;
    const double rc = std::clamp(r, rn[0], rn[rn.size() - 1]);
    const std::size_t i = bracket(rn, rc);
    const double wr = (rc - rn[i]) / (rn[i + 1] - rn[i]);

    // Periodic in theta: wrap into [tn0, tn0 + 2pi) and close the last cell with tn0 + 2pi.
    double t = std::fmod(theta - tn[0], two_pi);
    if (t < 0) t += two_pi;
    t += tn[0];
    const auto nt = static_cast<std::size_t>(tn.size());
    std::size_t j0;
    std::size_t j1;
    double wt;
    if (t >= tn[tn.size() - 1]) {
      j0 = nt - 1;
      j1 = 0;
      wt = (t - tn[tn.size() - 1]) / (tn[0] + two_pi - tn[tn.size() - 1]);
    } else {
      j0 = bracket(tn, t);
      j1 = j0 + 1;
      wt = (t - tn[j0]) / (tn[j1] - tn[j0]);
    }
    const auto& v = grid.values;
    const auto ii = static_cast<Eigen::Index>(i);
    const auto a = static_cast<Eigen::Index>(j0);
    const auto b = static_cast<Eigen::Index>(j1);
    return (1 - wr) * ((1 - wt) * v(ii, a) + wt * v(ii, b)) + wr * ((1 - wt) * v(ii + 1, a) + wt * v(ii + 1, b));
  };
}

void write_expansion_json(std::ostream& os, const ExpansionTable& table) {
  os << "[";
  bool first = true;
  for (const auto& [idx, c] : table.coefficients()) {
    os << (first ? "\n" : ",\n");
    first = false;
    os << "  {\"p\": " << idx.p() << ", \"q\": " << idx.q() << ", \"re\": " << format_double(c.real())
       << ", \"im\": " << format_double(c.imag()) << "}";
  }
  os << (first ? "]\n" : "\n]\n");
}

ExpansionTable read_expansion_json(std::istream& is) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(is);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(1, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw InputError(1, "expansion table must be a JSON array");
  int truncation = 2;
  std::vector<std::pair<PQIndex, std::complex<double>>> entries;
  std::size_t record = 0;
  for (const auto& rec : doc) {
    ++record;
    try {
      const PQIndex idx(rec.at("p").get<int>(), rec.at("q").get<int>());
      entries.emplace_back(idx, std::complex<double>(rec.at("re").get<double>(), rec.at("im").get<double>()));
      truncation = std::max(truncation, idx.sum());
    } catch (const std::exception& e) {
      throw InputError(record, std::string("bad expansion record: ") + e.what());
    }
  }
  ExpansionTable table(truncation);
  for (const auto& [idx, c] : entries) table.set(idx, c);
  return table;
}

void write_gram_csv(std::ostream& os, const GramMatrix& g) {
  os << "p,q";
  for (const auto& idx : g.indices) os << ',' << idx.p() << ':' << idx.q();
  os << '\n';
  for (std::size_t i = 0; i < g.indices.size(); ++i) {
    os << g.indices[i].p() << ',' << g.indices[i].q();
    for (std::size_t j = 0; j < g.indices.size(); ++j) {
      os << ',' << format_double(g.entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)).real());
    }
    os << '\n';
  }
}

void write_moments_csv(std::ostream& os, const MomentEstimate& est) {
  os << "eps,log_inv_eps,value\n";
  for (std::size_t i = 0; i < est.cutoffs.size(); ++i) {
    os << format_double(est.cutoffs[i]) << ',' << format_double(std::log(1.0 / est.cutoffs[i])) << ','
       << format_double(est.values[i]) << '\n';
  }
}

}  // namespace scatpoly
