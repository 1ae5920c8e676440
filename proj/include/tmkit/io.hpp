#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tmkit/grid.hpp"
#include "tmkit/quasi_integral.hpp"
#include "tmkit/report.hpp"
#include "tmkit/sampled_function.hpp"

namespace tmkit::io {

using json = nlohmann::json;
namespace fs = std::filesystem;

/// {"bounds": [x_min, x_max, y_min, y_max], "nx", "ny", "model"}.
json grid_to_json(const GridSpec& s);
/// Accepts the form above or flat keys x_min ... y_max. Throws
/// Error("bad-config").
GridSpec grid_from_json(const json& j);

/// Shortest decimal that reads back to the same double.
std::string format_double(double v);

/// Sidecar of a region or function file: `path` with ".json" appended.
fs::path sidecar_path(const fs::path& path);

/// PGM (P5), one byte per cell, 0 = out, 255 = in, top row = largest y;
/// sidecar {"kind": "open"|"compact", grid...}. Throws Error("io-error").
void write_region(const Region& r, const fs::path& pgm);
/// Throws Error("bad-region-file") for malformed files or a sidecar that
/// disagrees with the image size.
Region read_region(const fs::path& pgm);

/// x,y,value rows over domain cells (cell centres), row-major from iy = 0.
void write_function_csv(const SampledFunction& f, const fs::path& csv);
/// Rows matched to cells of `g` by their centre. Throws Error("bad-function")
/// for rows outside the domain.
SampledFunction read_function_csv(const fs::path& csv, const GridPtr& g);

/// Raw little-endian float64, nx * ny values row-major from iy = 0, with a
/// sidecar {"kind": "function", grid...}.
void write_function_binary(const SampledFunction& f, const fs::path& bin);
SampledFunction read_function_binary(const fs::path& bin);

/// "axiom_id,witness_files,lhs,rhs,tolerance"; witness regions are written
/// as PGM files `<stem>_<row>_<k>.pgm` beside the CSV and listed with ';'.
void write_report_csv(const AxiomReport& rep, const fs::path& csv, bool write_witnesses = true);

struct IntegralRow {
  std::string measure;
  std::string function;
  QuasiIntegralValue value;
};
/// "measure,function,value,a,b".
std::string integral_csv_header();
std::string integral_csv_row(const IntegralRow& row);
void write_integral_csv(const std::vector<IntegralRow>& rows, const fs::path& csv);

/// Writes `text` in one go. Throws Error("io-error").
void write_text(const fs::path& path, const std::string& text);

}  // namespace tmkit::io
