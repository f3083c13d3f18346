#include "duhamel/field_io.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <iomanip>

#include "duhamel/error.hpp"

namespace duhamel {
namespace {

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

template <class T>
void put(std::ostream& os, T v) {
  unsigned char b[sizeof(T)];
  std::memcpy(b, &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
  os.write(reinterpret_cast<const char*>(b), sizeof(T));
}

template <class T>
T get(std::istream& is) {
  unsigned char b[sizeof(T)];
  is.read(reinterpret_cast<char*>(b), sizeof(T));
  if (!is) throw ConfigError("csf1: truncated record");
  if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
  T v;
  std::memcpy(&v, b, sizeof(T));
  return v;
}

bool read_header(std::istream& is, Csf1Header& h) {
  char magic[4];
  is.read(magic, 4);
  if (is.gcount() == 0 && is.eof()) return false;
  if (is.gcount() != 4 || std::memcmp(magic, "CSF1", 4) != 0) throw ConfigError("csf1: bad magic");
  const auto nd = get<std::uint32_t>(is);
  if (nd < 1 || nd > 3) throw ConfigError("csf1: ndim out of range");
  h.dims.resize(nd);
  h.spacing.resize(nd);
  h.origin.resize(nd);
  for (auto& d : h.dims) d = get<std::uint32_t>(is);
  for (auto& s : h.spacing) s = get<double>(is);
  for (auto& o : h.origin) o = get<double>(is);
  const auto flag = get<std::uint8_t>(is);
  if (flag > 1) throw ConfigError("csf1: bad boundary flag");
  h.boundary = static_cast<Boundary>(flag);
  return true;
}

Grid grid_of(const Csf1Header& h) {
  std::vector<std::size_t> pts(h.dims.begin(), h.dims.end());
  return {pts, h.spacing, h.origin, h.boundary, 1.0};
}

}  // namespace

std::uint64_t Csf1Header::value_count() const {
  std::uint64_t n = 1;
  for (auto d : dims) n *= d;
  return n;
}

void write_csf1(std::ostream& os, const ScalarField& f) {
  const Grid& g = f.grid();
  os.write("CSF1", 4);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(g.ndim()));
  for (std::size_t d = 0; d < g.ndim(); ++d) put<std::uint32_t>(os, static_cast<std::uint32_t>(g.points(d)));
  for (std::size_t d = 0; d < g.ndim(); ++d) put<double>(os, g.spacing(d));
  for (std::size_t d = 0; d < g.ndim(); ++d) put<double>(os, g.origin()[d]);
  put<std::uint8_t>(os, static_cast<std::uint8_t>(g.boundary()));
  for (double v : f.values()) put<double>(os, v);
}

bool read_csf1(std::istream& is, Csf1Header& header, std::vector<double>& values) {
  if (!read_header(is, header)) return false;
  values.resize(header.value_count());
  for (auto& v : values) v = get<double>(is);
  return true;
}

ScalarField read_csf1_field(std::istream& is) {
  Csf1Header h;
  std::vector<double> v;
  if (!read_csf1(is, h, v)) throw ConfigError("csf1: empty stream");
  return {grid_of(h), std::move(v)};
}

void write_csf1_file(const std::string& path, const std::vector<ScalarField>& records) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw ConfigError("csf1: cannot open " + path + " for writing");
  for (const auto& r : records) write_csf1(os, r);
  if (!os) throw ConfigError("csf1: write failed for " + path);
}

std::vector<ScalarField> read_csf1_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError("csf1: cannot open " + path);
  std::vector<ScalarField> out;
  Csf1Header h;
  std::vector<double> v;
  while (read_csf1(is, h, v)) out.emplace_back(grid_of(h), v);
  return out;
}

std::vector<Csf1Header> read_csf1_headers(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError("csf1: cannot open " + path);
  std::vector<Csf1Header> out;
  Csf1Header h;
  while (read_header(is, h)) {
    is.seekg(static_cast<std::streamoff>(h.value_count() * sizeof(double)), std::ios::cur);
    if (!is) throw ConfigError("csf1: truncated record");
    out.push_back(h);
  }
  return out;
}

namespace {

void write_coords(std::ostream& os, const Grid& g, std::size_t i) {
  const Point p = g.point(i);
  for (std::size_t d = 0; d < g.ndim(); ++d) os << (d ? "," : "") << p[d];
}

const char* axis_name(std::size_t d) { return d == 0 ? "x" : d == 1 ? "y" : "z"; }

}  // namespace

void write_csv(std::ostream& os, const ScalarField& f, const std::string& value_name) {
  const Grid& g = f.grid();
  os << std::setprecision(17);
  for (std::size_t d = 0; d < g.ndim(); ++d) os << axis_name(d) << ",";
  os << value_name << "\n";
  for (std::size_t i = 0; i < g.size(); ++i) {
    write_coords(os, g, i);
    os << "," << f[i] << "\n";
  }
}

void write_csv(std::ostream& os, const VectorField& u, const std::string& prefix) {
  const Grid& g = u.grid();
  os << std::setprecision(17);
  for (std::size_t d = 0; d < g.ndim(); ++d) os << axis_name(d) << ",";
  for (std::size_t d = 0; d < g.ndim(); ++d) os << (d ? "," : "") << prefix << "_" << axis_name(d);
  os << "\n";
  for (std::size_t i = 0; i < g.size(); ++i) {
    write_coords(os, g, i);
    for (std::size_t d = 0; d < g.ndim(); ++d) os << "," << u.component(d)[i];
    os << "\n";
  }
}

}  // namespace duhamel
