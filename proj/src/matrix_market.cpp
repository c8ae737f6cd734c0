// Copyright contributors to the gmg project
// SPDX-License-Identifier: Apache-2.0

#include "gmg/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace gmg {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

// Reads the next line, stripping a trailing '\r'. Returns false at EOF.
bool next_line(std::istream& in, std::string& line, std::int64_t& lineno) {
  if (!std::getline(in, line)) return false;
  ++lineno;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

bool is_blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isspace(c); });
}

MatrixMarketHeader parse_banner(const std::string& line, std::int64_t lineno) {
  std::istringstream iss(line);
  std::string banner, object, format, field, symmetry;
  iss >> banner >> object >> format >> field >> symmetry;
  if (lower(banner) != "%%matrixmarket") {
    throw ParseError("malformed banner, expected '%%MatrixMarket ...'", lineno);
  }
  if (lower(object) != "matrix") {
    throw ParseError("unsupported object '" + object + "'", lineno);
  }
  MatrixMarketHeader header;
  const std::string fmt = lower(format);
  if (fmt == "coordinate") {
    header.format = MatrixMarketHeader::Format::coordinate;
  } else if (fmt == "array") {
    throw ParseError("unsupported format 'array'", lineno);
  } else {
    throw ParseError("unknown format '" + format + "'", lineno);
  }
  const std::string fld = lower(field);
  if (fld == "real") {
    header.field = MatrixMarketHeader::Field::real;
  } else if (fld == "integer") {
    header.field = MatrixMarketHeader::Field::integer;
  } else if (fld == "pattern") {
    header.field = MatrixMarketHeader::Field::pattern;
  } else {
    throw ParseError("unsupported field '" + field + "'", lineno);
  }
  const std::string sym = lower(symmetry);
  if (sym == "general") {
    header.symmetry = MatrixMarketHeader::Symmetry::general;
  } else if (sym == "symmetric") {
    header.symmetry = MatrixMarketHeader::Symmetry::symmetric;
  } else {
    throw ParseError("unsupported symmetry '" + symmetry + "'", lineno);
  }
  return header;
}

}  // namespace

SparseMatrix read_matrix_market(std::istream& stream) {
  std::string line;
  std::int64_t lineno = 0;
  if (!next_line(stream, line, lineno)) {
    throw ParseError("empty stream, missing banner", 1);
  }
  const MatrixMarketHeader header = parse_banner(line, lineno);

  // Skip comments and blank lines up to the size line.
  for (;;) {
    if (!next_line(stream, line, lineno)) {
      throw ParseError("missing size line", lineno + 1);
    }
    if (!line.empty() && line[0] == '%') continue;
    if (is_blank(line)) continue;
    break;
  }
  index_t nrows = 0, ncols = 0, nnz = 0;
  {
    std::istringstream iss(line);
    if (!(iss >> nrows >> ncols >> nnz) || nrows < 0 || ncols < 0 || nnz < 0) {
      throw ParseError("malformed size line '" + line + "'", lineno);
    }
  }

  std::vector<Triplet> triplets;
  triplets.reserve(header.symmetry == MatrixMarketHeader::Symmetry::symmetric
                       ? 2 * nnz
                       : nnz);
  index_t seen = 0;
  while (seen < nnz) {
    if (!next_line(stream, line, lineno)) {
      throw ParseError("unexpected end of file, expected " +
                           std::to_string(nnz) + " entries but found " +
                           std::to_string(seen),
                       lineno + 1);
    }
    if (is_blank(line) || line[0] == '%') continue;
    std::istringstream iss(line);
    index_t i = 0, j = 0;
    double v = 1.0;
    if (!(iss >> i >> j)) {
      throw ParseError("malformed entry '" + line + "'", lineno);
    }
    if (header.field != MatrixMarketHeader::Field::pattern && !(iss >> v)) {
      throw ParseError("entry is missing its value", lineno);
    }
    if (i < 1 || i > nrows || j < 1 || j > ncols) {
      throw ParseError("index out of range in entry '" + line + "'", lineno);
    }
    triplets.push_back({i - 1, j - 1, v});
    if (header.symmetry == MatrixMarketHeader::Symmetry::symmetric && i != j) {
      triplets.push_back({j - 1, i - 1, v});
    }
    ++seen;
  }
  while (next_line(stream, line, lineno)) {
    if (!is_blank(line) && line[0] != '%') {
      throw ParseError("trailing data after " + std::to_string(nnz) +
                           " declared entries",
                       lineno);
    }
  }
  return SparseMatrix::from_triplets(nrows, ncols, std::move(triplets));
}

SparseMatrix read_matrix_market_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  return read_matrix_market(in);
}

void write_matrix_market(const SparseMatrix& a, bool symmetric_hint,
                         std::ostream& stream) {
  if (symmetric_hint) {
    if (!a.is_square() || transpose(a) != a) {
      throw ContractError(
          "write_matrix_market: symmetric hint on an asymmetric matrix");
    }
  }
  stream << "%%MatrixMarket matrix coordinate real "
         << (symmetric_hint ? "symmetric" : "general") << "\n";

  index_t count = 0;
  for (index_t i = 0; i < a.rows(); ++i) {
    for (index_t j : a.row_cols(i)) {
      if (!symmetric_hint || j <= i) ++count;
    }
  }
  stream << a.rows() << " " << a.cols() << " " << count << "\n";
  stream << std::setprecision(17);
  for (index_t i = 0; i < a.rows(); ++i) {
    const auto cols = a.row_cols(i);
    const auto vals = a.row_values(i);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      if (symmetric_hint && cols[k] > i) continue;
      stream << (i + 1) << " " << (cols[k] + 1) << " " << vals[k] << "\n";
    }
  }
  if (!stream) throw Error("write_matrix_market: stream failure");
}

void write_matrix_market_file(const SparseMatrix& a, bool symmetric_hint,
                              const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  write_matrix_market(a, symmetric_hint, out);
}

}  // namespace gmg
