#include "logmeans/csv_io.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace logmeans {

std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {
  if (header_.empty()) throw std::invalid_argument("CsvTable: empty header");
}

CsvTable::Row& CsvTable::Row::add(double x) {
  cells_.push_back(format_real(x));
  return *this;
}

CsvTable::Row& CsvTable::Row::add(std::int64_t x) {
  cells_.push_back(std::to_string(x));
  return *this;
}

CsvTable::Row& CsvTable::Row::add(const std::string& s) {
  if (s.find_first_of(",\n\"") != std::string::npos) {
    throw std::invalid_argument("CsvTable: cell text may not contain commas, quotes or newlines");
  }
  cells_.push_back(s);
  return *this;
}

CsvTable::Row& CsvTable::row() { return rows_.emplace_back(); }

void CsvTable::write(std::ostream& os) const {
  auto line = [&os](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) os << ',';
      os << cells[i];
    }
    os << '\n';
  };
  line(header_);
  for (const auto& r : rows_) {
    if (r.cells_.size() != header_.size()) {
      throw std::logic_error("CsvTable: row has " + std::to_string(r.cells_.size()) + " cells, header has " +
                             std::to_string(header_.size()));
    }
    line(r.cells_);
  }
}

void CsvTable::write_file(const std::string& path) const {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
  write(os);
  if (!os) throw std::runtime_error("write failed for '" + path + "'");
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

// Parses rows of "i0,...,i{d-1},re,im" after a header with the given index prefix.
struct ParsedRows {
  std::size_t dims = 0;
  std::vector<Index> index;
  std::vector<Complex> value;
};

ParsedRows parse_indexed(std::istream& is, char prefix) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("CSV: missing header");
  const auto header = split(line);
  if (header.size() < 3 || header[header.size() - 2] != "re" || header.back() != "im") {
    throw std::runtime_error("CSV: header must end with re,im");
  }
  ParsedRows rows;
  rows.dims = header.size() - 2;
  for (std::size_t a = 0; a < rows.dims; ++a) {
    if (header[a] != std::string(1, prefix) + std::to_string(a)) {
      throw std::runtime_error("CSV: unexpected index column '" + header[a] + "'");
    }
  }
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != header.size()) {
      throw std::runtime_error("CSV: wrong cell count on line " + std::to_string(lineno));
    }
    Index idx(rows.dims);
    try {
      for (std::size_t a = 0; a < rows.dims; ++a) idx[a] = std::stoll(cells[a]);
      rows.value.emplace_back(std::stod(cells[rows.dims]), std::stod(cells[rows.dims + 1]));
    } catch (const std::exception&) {
      throw std::runtime_error("CSV: unparsable number on line " + std::to_string(lineno));
    }
    rows.index.push_back(std::move(idx));
  }
  if (rows.index.empty()) throw std::runtime_error("CSV: no data rows");
  return rows;
}

}  // namespace

void write_coefficients_csv(std::ostream& os, const CoefficientGrid& grid) {
  std::vector<std::string> header;
  for (std::size_t a = 0; a < grid.dims(); ++a) header.push_back("j" + std::to_string(a));
  header.push_back("re");
  header.push_back("im");
  CsvTable table(header);
  auto data = grid.data();
  Index j(grid.dims());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid.frequency(i, j);
    auto& row = table.row();
    for (auto v : j) row.add(v);
    row.add(data[i].real()).add(data[i].imag());
  }
  table.write(os);
}

CoefficientGrid read_coefficients_csv(std::istream& is, bool real) {
  const auto rows = parse_indexed(is, 'j');
  Index degrees(rows.dims, 0);
  for (const auto& j : rows.index) {
    for (std::size_t a = 0; a < rows.dims; ++a) degrees[a] = std::max(degrees[a], std::abs(j[a]));
  }
  CoefficientGrid grid(degrees);
  if (rows.index.size() != grid.size()) throw std::runtime_error("CSV: coefficient box is incomplete");
  std::vector<bool> seen(grid.size(), false);
  for (std::size_t r = 0; r < rows.index.size(); ++r) {
    const auto flat = grid.flat_index(rows.index[r]);
    if (seen[flat]) throw std::runtime_error("CSV: duplicate frequency");
    seen[flat] = true;
    grid.data()[flat] = rows.value[r];
  }
  grid.set_real(real);
  return grid;
}

void write_field_csv(std::ostream& os, const SampledField& field) {
  std::vector<std::string> header;
  for (std::size_t a = 0; a < field.dims(); ++a) header.push_back("k" + std::to_string(a));
  header.push_back("re");
  header.push_back("im");
  CsvTable table(header);
  auto s = field.samples();
  Index k(field.dims());
  for (std::size_t i = 0; i < field.size(); ++i) {
    field.grid_index(i, k);
    auto& row = table.row();
    for (auto v : k) row.add(v);
    row.add(s[i].real()).add(s[i].imag());
  }
  table.write(os);
}

SampledField read_field_csv(std::istream& is) {
  const auto rows = parse_indexed(is, 'k');
  Index resolution(rows.dims, 0);
  for (const auto& k : rows.index) {
    for (std::size_t a = 0; a < rows.dims; ++a) {
      if (k[a] < 0) throw std::runtime_error("CSV: negative grid index");
      resolution[a] = std::max(resolution[a], k[a] + 1);
    }
  }
  SampledField field(resolution, false);
  if (rows.index.size() != field.size()) throw std::runtime_error("CSV: sample grid is incomplete");
  bool real = true;
  std::vector<Complex> samples(field.size());
  std::vector<bool> seen(field.size(), false);
  for (std::size_t r = 0; r < rows.index.size(); ++r) {
    std::size_t flat = 0;
    for (std::size_t a = 0; a < rows.dims; ++a) {
      flat = flat * static_cast<std::size_t>(resolution[a]) + static_cast<std::size_t>(rows.index[r][a]);
    }
    if (seen[flat]) throw std::runtime_error("CSV: duplicate grid point");
    seen[flat] = true;
    samples[flat] = rows.value[r];
    if (rows.value[r].imag() != 0.0) real = false;
  }
  return SampledField(resolution, std::move(samples), real);
}

}  // namespace logmeans
