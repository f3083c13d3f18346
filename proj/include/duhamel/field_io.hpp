#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "duhamel/field.hpp"

namespace duhamel {

// CSF1 binary record: "CSF1", u32 ndim, u32 dims[ndim], f64 spacing[ndim],
// f64 origin[ndim], u8 boundary (0 periodic, 1 free-space), f64 values[N].
// All little-endian, values row-major. A trajectory file is a sequence of
// records, one per snapshot.

struct Csf1Header {
  std::vector<std::uint32_t> dims;
  std::vector<double> spacing;
  std::vector<double> origin;
  Boundary boundary = Boundary::Periodic;
  std::uint64_t value_count() const;
};

void write_csf1(std::ostream& os, const ScalarField& f);
/// Returns false at clean end of stream; throws on a malformed record.
bool read_csf1(std::istream& is, Csf1Header& header, std::vector<double>& values);
ScalarField read_csf1_field(std::istream& is);

void write_csf1_file(const std::string& path, const std::vector<ScalarField>& records);
std::vector<ScalarField> read_csf1_file(const std::string& path);
/// Headers of every record (values skipped).
std::vector<Csf1Header> read_csf1_headers(const std::string& path);

/// One row per node: coordinates then values, 17 significant digits.
void write_csv(std::ostream& os, const ScalarField& f, const std::string& value_name = "value");
void write_csv(std::ostream& os, const VectorField& u, const std::string& prefix = "u");

}  // namespace duhamel
