#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "scatpoly/disk_quadrature.hpp"
#include "scatpoly/transform.hpp"

namespace scatpoly {

// Malformed input file; message carries the 1-based line number (record number for JSON).
class InputError : public std::runtime_error {
 public:
  InputError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Locale-independent rendering with 17 significant digits.
std::string format_double(double v);

// CSV "r,theta,re,im", radial-major.
void write_grid_csv(std::ostream& os, const GridSample& grid);
GridSample read_grid_csv(std::istream& is);

// Bilinear interpolation in (r, theta); theta is periodic, r is clamped to the node range.
DiskFunction interpolate(const GridSample& grid);

// JSON array of {"p","q","re","im"} records ordered by (p, q).
void write_expansion_json(std::ostream& os, const ExpansionTable& table);
ExpansionTable read_expansion_json(std::istream& is);

// Header row "p,q,<p>:<q>,..." then one row per index; cells hold the real
// part (basis Gram entries are real).
void write_gram_csv(std::ostream& os, const GramMatrix& g);

// CSV "eps,log_inv_eps,value".
void write_moments_csv(std::ostream& os, const MomentEstimate& est);

}  // namespace scatpoly
