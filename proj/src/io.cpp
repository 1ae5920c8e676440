#include "tmkit/io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

#include "tmkit/error.hpp"

namespace tmkit::io {

namespace {

json region_sidecar(const Region& r) {
  json j = grid_to_json(r.grid()->spec());
  j["kind"] = to_string(r.kind());
  return j;
}

json read_json(const fs::path& p, const char* code) {
  std::ifstream in(p);
  if (!in) throw Error(code, "cannot open " + p.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(code, p.string() + ": " + e.what());
  }
}

std::ofstream open_out(const fs::path& p, bool binary = false) {
  if (p.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(p.parent_path(), ec);
  }
  std::ofstream out(p, binary ? std::ios::binary : std::ios::out);
  if (!out) throw Error("io-error", "cannot write " + p.string());
  return out;
}

// Next whitespace-separated PGM header token, skipping comments.
std::string pgm_token(std::istream& in) {
  std::string tok;
  char c;
  while (in.get(c)) {
    if (c == '#') {
      std::string rest;
      std::getline(in, rest);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!tok.empty()) return tok;
      continue;
    }
    tok.push_back(c);
  }
  return tok;
}

int to_int(const std::string& s, const char* code) {
  int v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw Error(code, "bad integer '" + s + "'");
  return v;
}

double to_double(const std::string& s) {
  double v = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw Error("bad-function", "bad number '" + s + "'");
  return v;
}

}  // namespace

json grid_to_json(const GridSpec& s) {
  return json{{"bounds", {s.x_min, s.x_max, s.y_min, s.y_max}}, {"nx", s.nx}, {"ny", s.ny}, {"model", to_string(s.model)}};
}

GridSpec grid_from_json(const json& j) {
  GridSpec s;
  try {
    if (j.contains("bounds")) {
      const auto& b = j.at("bounds");
      if (!b.is_array() || b.size() != 4) throw Error("bad-config", "bounds must be [x_min, x_max, y_min, y_max]");
      s.x_min = b[0].get<double>();
      s.x_max = b[1].get<double>();
      s.y_min = b[2].get<double>();
      s.y_max = b[3].get<double>();
    } else {
      s.x_min = j.value("x_min", s.x_min);
      s.x_max = j.value("x_max", s.x_max);
      s.y_min = j.value("y_min", s.y_min);
      s.y_max = j.value("y_max", s.y_max);
    }
    s.nx = j.value("nx", s.nx);
    s.ny = j.value("ny", s.ny);
    if (j.contains("model")) s.model = space_model_from_string(j.at("model").get<std::string>());
    s.validate();
  } catch (const json::exception& e) {
    throw Error("bad-config", std::string("grid: ") + e.what());
  } catch (const Error& e) {
    throw Error("bad-config", e.what());
  }
  return s;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

fs::path sidecar_path(const fs::path& path) { return fs::path(path.string() + ".json"); }

void write_region(const Region& r, const fs::path& pgm) {
  const Grid& g = *r.grid();
  std::ofstream out = open_out(pgm, true);
  out << "P5\n" << g.nx() << ' ' << g.ny() << "\n255\n";
  std::vector<unsigned char> row(static_cast<std::size_t>(g.nx()));
  for (int iy = g.ny() - 1; iy >= 0; --iy) {
    for (int ix = 0; ix < g.nx(); ++ix) row[static_cast<std::size_t>(ix)] = r.contains(g.index(ix, iy)) ? 255 : 0;
    out.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size()));
  }
  if (!out) throw Error("io-error", "failed writing " + pgm.string());
  write_text(sidecar_path(pgm), region_sidecar(r).dump(2) + "\n");
}

Region read_region(const fs::path& pgm) {
  const json side = read_json(sidecar_path(pgm), "bad-region-file");
  GridSpec spec;
  Kind kind = Kind::Compact;
  try {
    spec = grid_from_json(side);
    kind = kind_from_string(side.at("kind").get<std::string>());
  } catch (const std::exception& e) {
    throw Error("bad-region-file", pgm.string() + ": " + e.what());
  }
  std::ifstream in(pgm, std::ios::binary);
  if (!in) throw Error("bad-region-file", "cannot open " + pgm.string());
  if (pgm_token(in) != "P5") throw Error("bad-region-file", pgm.string() + " is not a binary PGM");
  const int w = to_int(pgm_token(in), "bad-region-file");
  const int h = to_int(pgm_token(in), "bad-region-file");
  const int maxval = to_int(pgm_token(in), "bad-region-file");
  if (w != spec.nx || h != spec.ny || maxval <= 0 || maxval > 255)
    throw Error("bad-region-file", pgm.string() + " disagrees with its sidecar");
  const GridPtr g = Grid::make(spec);
  std::vector<unsigned char> px(static_cast<std::size_t>(w) * static_cast<std::size_t>(h));
  in.read(reinterpret_cast<char*>(px.data()), static_cast<std::streamsize>(px.size()));
  if (in.gcount() != static_cast<std::streamsize>(px.size())) throw Error("bad-region-file", pgm.string() + " is truncated");
  CellSet cells(g->cell_count());
  for (int row = 0; row < h; ++row) {
    const int iy = h - 1 - row;
    for (int ix = 0; ix < w; ++ix) {
      const int c = g->index(ix, iy);
      if (px[static_cast<std::size_t>(row) * static_cast<std::size_t>(w) + static_cast<std::size_t>(ix)] == 0) continue;
      if (!g->domain().test(static_cast<std::size_t>(c)))
        throw Error("bad-region-file", pgm.string() + " marks a cell outside the domain");
      cells.set(static_cast<std::size_t>(c));
    }
  }
  return Region(g, std::move(cells), kind);
}

void write_function_csv(const SampledFunction& f, const fs::path& csv) {
  const Grid& g = *f.grid();
  std::ostringstream os;
  os << "x,y,value\n";
  g.domain().for_each([&](int c) {
    const Point p = g.center(c);
    os << format_double(p.x) << ',' << format_double(p.y) << ',' << format_double(f[c]) << '\n';
  });
  write_text(csv, os.str());
}

SampledFunction read_function_csv(const fs::path& csv, const GridPtr& g) {
  std::ifstream in(csv);
  if (!in) throw Error("io-error", "cannot open " + csv.string());
  SampledFunction f(g, 0.0);
  std::string line;
  std::getline(in, line);
  if (line.rfind("x,y,value", 0) != 0) throw Error("bad-function", csv.string() + ": expected header x,y,value");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    for (std::string tok; std::getline(ss, tok, ',');) cols.push_back(tok);
    if (cols.size() != 3) throw Error("bad-function", csv.string() + ": expected 3 columns in '" + line + "'");
    const int c = g->cell_at(to_double(cols[0]), to_double(cols[1]));
    if (c < 0) throw Error("bad-function", csv.string() + ": row outside the domain: " + line);
    f[c] = to_double(cols[2]);
  }
  f.validate();
  return f;
}

void write_function_binary(const SampledFunction& f, const fs::path& bin) {
  static_assert(std::endian::native == std::endian::little, "binary function files are little-endian");
  std::ofstream out = open_out(bin, true);
  const auto v = f.values();
  out.write(reinterpret_cast<const char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(double)));
  if (!out) throw Error("io-error", "failed writing " + bin.string());
  json side = grid_to_json(f.grid()->spec());
  side["kind"] = "function";
  write_text(sidecar_path(bin), side.dump(2) + "\n");
}

SampledFunction read_function_binary(const fs::path& bin) {
  const json side = read_json(sidecar_path(bin), "bad-function");
  if (side.value("kind", "") != "function") throw Error("bad-function", bin.string() + ": sidecar kind is not function");
  const GridPtr g = Grid::make(grid_from_json(side));
  std::ifstream in(bin, std::ios::binary);
  if (!in) throw Error("io-error", "cannot open " + bin.string());
  std::vector<double> v(g->cell_count());
  in.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(double)));
  if (in.gcount() != static_cast<std::streamsize>(v.size() * sizeof(double)))
    throw Error("bad-function", bin.string() + " is truncated");
  SampledFunction f(g, std::move(v));
  f.validate();
  return f;
}

void write_report_csv(const AxiomReport& rep, const fs::path& csv, bool write_witnesses) {
  std::ostringstream os;
  os << "axiom_id,witness_files,lhs,rhs,tolerance\n";
  const std::string stem = csv.stem().string();
  for (std::size_t i = 0; i < rep.violations.size(); ++i) {
    const Violation& v = rep.violations[i];
    std::string files;
    if (write_witnesses) {
      for (std::size_t k = 0; k < v.regions.size(); ++k) {
        const fs::path p = csv.parent_path() / (stem + "_" + std::to_string(i) + "_" + std::to_string(k) + ".pgm");
        write_region(v.regions[k], p);
        if (!files.empty()) files += ';';
        files += p.filename().string();
      }
    }
    os << v.axiom << ',' << files << ',' << format_double(v.lhs) << ',' << format_double(v.rhs) << ','
       << format_double(v.tolerance) << '\n';
  }
  write_text(csv, os.str());
}

std::string integral_csv_header() { return "measure,function,value,a,b"; }

std::string integral_csv_row(const IntegralRow& row) {
  return row.measure + ',' + row.function + ',' + format_double(row.value.value) + ',' + format_double(row.value.a) +
         ',' + format_double(row.value.b);
}

void write_integral_csv(const std::vector<IntegralRow>& rows, const fs::path& csv) {
  std::string s = integral_csv_header() + "\n";
  for (const IntegralRow& r : rows) s += integral_csv_row(r) + "\n";
  write_text(csv, s);
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out = open_out(path);
  out << text;
  if (!out) throw Error("io-error", "failed writing " + path.string());
}

}  // namespace tmkit::io
