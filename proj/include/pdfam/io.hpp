#pragma once

// Text formats: point-cloud files and the CSV tables written by the tool.
//
// A cloud file holds one point per line as whitespace-separated decimal
// coordinates; blank lines and lines starting with '#' are ignored, and the
// dimension is taken from the first data line. Floats are written in the
// shortest form that reads back to the same double.

#include <charconv>
#include <cmath>
#include <cstddef>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "pdfam/classify.hpp"
#include "pdfam/error.hpp"
#include "pdfam/experiments.hpp"
#include "pdfam/geometry.hpp"
#include "pdfam/persistence.hpp"

namespace pdfam {

/// Malformed cloud file; the message starts with "line N:".
class FormatError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

inline PointCloud read_cloud(std::istream& in) {
  std::vector<double> coords;
  std::size_t dim = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::vector<double> row;
    std::size_t pos = first;
    while (pos < line.size()) {
      const auto end = line.find_first_of(" \t\r", pos);
      const std::string tok = line.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
      double v = 0.0;
      const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
        throw FormatError("line " + std::to_string(lineno) + ": cannot parse coordinate '" + tok + "'");
      if (!std::isfinite(v)) throw FormatError("line " + std::to_string(lineno) + ": non-finite coordinate");
      row.push_back(v);
      if (end == std::string::npos) break;
      pos = line.find_first_not_of(" \t\r", end);
      if (pos == std::string::npos) break;
    }
    if (dim == 0) dim = row.size();
    if (row.size() != dim)
      throw FormatError("line " + std::to_string(lineno) + ": expected " + std::to_string(dim) +
                        " coordinates, found " + std::to_string(row.size()));
    coords.insert(coords.end(), row.begin(), row.end());
  }
  if (coords.empty()) throw FormatError("line " + std::to_string(lineno) + ": no points in input");
  return PointCloud(dim, std::move(coords));
}

inline PointCloud parse_cloud(const std::string& text) {
  std::istringstream in(text);
  return read_cloud(in);
}

inline void write_cloud(std::ostream& out, const PointCloud& cloud) {
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto p = cloud[i];
    for (std::size_t k = 0; k < p.size(); ++k) out << (k ? " " : "") << format_double(p[k]);
    out << '\n';
  }
}

/// `dim,birth,death`, rows sorted by birth then death; infinite deaths as `inf`.
inline void write_diagram_csv(std::ostream& out, const PersistenceDiagram& d) {
  auto pairs = d.pairs;
  std::sort(pairs.begin(), pairs.end());
  out << "dim,birth,death\n";
  for (const auto& p : pairs) out << d.dim << ',' << format_double(p.birth) << ',' << format_double(p.death) << '\n';
}

inline PersistenceDiagram read_diagram_csv(std::istream& in) {
  PersistenceDiagram d;
  std::string line;
  std::getline(in, line);
  if (line.rfind("dim,birth,death", 0) != 0) throw FormatError("line 1: expected header dim,birth,death");
  std::size_t lineno = 1;
  bool first = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string a, b, c;
    if (!std::getline(row, a, ',') || !std::getline(row, b, ',') || !std::getline(row, c))
      throw FormatError("line " + std::to_string(lineno) + ": expected three fields");
    auto number = [&](const std::string& tok) {
      if (tok == "inf") return kInfinity;
      double v = 0.0;
      const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
        throw FormatError("line " + std::to_string(lineno) + ": cannot parse number '" + tok + "'");
      return v;
    };
    const double dim = number(a);
    if (dim != 0.0 && dim != 1.0) throw FormatError("line " + std::to_string(lineno) + ": dimension must be 0 or 1");
    if (!first && static_cast<int>(dim) != d.dim)
      throw FormatError("line " + std::to_string(lineno) + ": mixed dimensions");
    d.dim = static_cast<int>(dim);
    first = false;
    const double birth = number(b), death = number(c);
    if (!std::isfinite(birth) || !(death >= birth))
      throw FormatError("line " + std::to_string(lineno) + ": need finite birth <= death");
    d.pairs.push_back({birth, death});
  }
  d.normalize();
  return d;
}

/// `p,q,length,class` in filtration order (value, then vertices).
inline void write_classes_csv(std::ostream& out, const PointCloud& cloud, const std::vector<ClassifiedEdge>& classes) {
  out << "p,q,length,class\n";
  for (const auto& c : classes)
    out << c.p << ',' << c.q << ',' << format_double(distance(cloud[c.p], cloud[c.q])) << ',' << to_string(c.cls)
        << '\n';
}

inline void write_histogram_csv(std::ostream& out, const Histogram& h) {
  out << "bin_lo,bin_hi,percent\n";
  for (std::size_t b = 0; b < h.percent.size(); ++b)
    out << format_double(h.edges[b]) << ',' << format_double(h.edges[b + 1]) << ',' << format_double(h.percent[b])
        << '\n';
}

inline void write_raw_csv(std::ostream& out, std::size_t n, std::size_t dim, const Histogram& h) {
  out << "n,N,trial,birth,death\n";
  for (const auto& r : h.raw)
    out << n << ',' << dim << ',' << r.trial << ',' << format_double(r.birth) << ',' << format_double(r.death) << '\n';
}

inline void write_sweep_csv(std::ostream& out, const SweepResult& s) {
  out << "n,N,median_gap_ratio,used,skipped\n";
  for (const auto& r : s.rows)
    out << r.n << ',' << r.dim << ',' << format_double(r.median_gap_ratio) << ',' << r.used << ',' << r.skipped << '\n';
}

}  // namespace pdfam
