#pragma once

// Columnar CSV for experiment output and for persisting grids.
//
// Coefficient grids:  j0,...,j{d-1},re,im   one row per stored frequency
// Sampled fields:     k0,...,k{d-1},re,im   one row per grid point
// Rows follow the flat (row-major) order. Reals are written with 17
// significant digits so they read back bit-exactly.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "logmeans/spectral.hpp"

namespace logmeans {

std::string format_real(double x);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  class Row {
   public:
    Row& add(double x);
    Row& add(std::int64_t x);
    Row& add(int x) { return add(static_cast<std::int64_t>(x)); }
    Row& add(const std::string& s);

   private:
    friend class CsvTable;
    std::vector<std::string> cells_;
  };

  Row& row();
  std::size_t rows() const { return rows_.size(); }
  const std::vector<std::string>& header() const { return header_; }

  /// Throws if some row has the wrong number of cells.
  void write(std::ostream& os) const;
  void write_file(const std::string& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<Row> rows_;
};

void write_coefficients_csv(std::ostream& os, const CoefficientGrid& grid);
/// Degrees are inferred from the largest |j| per axis; every frequency in
/// the box must appear exactly once.
CoefficientGrid read_coefficients_csv(std::istream& is, bool real = false);

void write_field_csv(std::ostream& os, const SampledField& field);
/// Resolution is inferred from the largest k per axis. The field is marked
/// real when every imaginary part is zero.
SampledField read_field_csv(std::istream& is);

}  // namespace logmeans
